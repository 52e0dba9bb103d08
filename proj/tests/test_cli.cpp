#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <adok/cli.hpp>
#include <adok/model/io.hpp>

#include <nlohmann/json.hpp>

#include "models_fixture.hpp"

#include <filesystem>
#include <fstream>
#include <regex>

using namespace adok;
using namespace adok::fixtures;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("adok_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string strip_timestamp(std::string text) {
  return std::regex_replace(text, std::regex("\"generated_at\": \"[^\"]*\""),
                            "\"generated_at\": \"\"");
}

}  // namespace

TEST_CASE("model validate accepts the flagship file and reports its digest") {
  TempDir tmp;
  save_model(flagship_p1(), tmp.file("m.json"));
  CHECK(run_cli({"model", "validate", tmp.file("m.json")}) == 0);
}

TEST_CASE("model validate rejects malformed files with exit code 2") {
  TempDir tmp;
  {
    std::ofstream out(tmp.file("bad.json"));
    out << "{\"dim\": 1, \"degree\": 1, \"places\": [{\"place\": \"inf\", "
           "\"affine_pieces\": []}]}";
  }
  CHECK(run_cli({"model", "validate", tmp.file("bad.json")}) == 2);
  {
    std::ofstream out(tmp.file("syntax.json"));
    out << "{not json";
  }
  CHECK(run_cli({"model", "validate", tmp.file("syntax.json")}) == 2);
  CHECK(run_cli({"model", "validate", tmp.file("missing.json")}) == 2);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli({"verify"}) == 2);
  CHECK(run_cli({"nonsense"}) == 2);
}

TEST_CASE("count and avol produce deterministic artifacts") {
  TempDir tmp;
  save_model(flagship_p1(), tmp.file("m.json"));
  std::string csv = tmp.file("counts.csv");
  CHECK(run_cli({"count", "--model", tmp.file("m.json"), "--m", "2..6", "--out", csv}) == 0);
  std::string first = slurp(csv);
  CHECK(first.find("m,count_lo,count_hi,exact") == 0);
  CHECK(first.find("63") != std::string::npos);  // exact count at level 2
  CHECK(run_cli({"count", "--model", tmp.file("m.json"), "--m", "2..6", "--out", csv}) == 0);
  CHECK(slurp(csv) == first);

  std::string prefix = tmp.file("avol");
  CHECK(run_cli({"avol", "--model", tmp.file("m.json"), "--m", "8,16", "--extrapolate",
                 "--out", prefix}) == 0);
  std::string a1 = strip_timestamp(slurp(prefix + ".json"));
  CHECK(run_cli({"avol", "--model", tmp.file("m.json"), "--m", "8,16", "--extrapolate",
                 "--out", prefix}) == 0);
  CHECK(strip_timestamp(slurp(prefix + ".json")) == a1);
  CHECK(a1.find("avol_extrapolated") != std::string::npos);
}

TEST_CASE("verify yuan runs end to end and writes certificates") {
  TempDir tmp;
  save_model(flagship_p1(), tmp.file("m.json"));
  std::string out = tmp.file("certs.json");
  CHECK(run_cli({"verify", "yuan", "--model", tmp.file("m.json"), "--p", "11,13", "--m",
                 "2..4", "--out", out}) == 0);
  Json j = Json::parse(slurp(out));
  CHECK(j["all_pass"].get<bool>());
  CHECK(j["certificates"].size() == 6);
}

TEST_CASE("verify fujita on the tent reports the collapsed bound") {
  TempDir tmp;
  save_model(tent_p1(), tmp.file("tent.json"));
  std::string out = tmp.file("fujita.json");
  CHECK(run_cli({"verify", "fujita", "--model", tmp.file("tent.json"), "--m", "8,16",
                 "--grid", "33", "--out", out}) == 0);
  Json j = Json::parse(slurp(out));
  CHECK(j["certificates"][0]["details"]["feasible"].get<bool>() == false);
}

TEST_CASE("flag find emits the serialized flag") {
  TempDir tmp;
  save_model(flagship_p1(), tmp.file("m.json"));
  CHECK(run_cli({"flag", "find", "--model", tmp.file("m.json"), "--p", "11"}) == 0);
}

TEST_CASE("semigroup build writes levels") {
  TempDir tmp;
  save_model(flagship_p1(), tmp.file("m.json"));
  std::string out = tmp.file("semi.json");
  CHECK(run_cli({"semigroup", "build", "--model", tmp.file("m.json"), "--p", "11", "--m-max",
                 "5", "--out", out}) == 0);
  Json j = Json::parse(slurp(out));
  CHECK(j["generates"].get<bool>());
  CHECK(j["levels"].contains("3"));
}

TEST_CASE("count cache is honored when configured") {
  TempDir tmp;
  save_model(flagship_p1(), tmp.file("m.json"));
  std::string cache = tmp.file("cache");
  setenv("ADELIC_OKOUNKOV_CACHE", cache.c_str(), 1);
  std::string csv = tmp.file("c.csv");
  CHECK(run_cli({"count", "--model", tmp.file("m.json"), "--m", "3..5", "--out", csv}) == 0);
  std::string first = slurp(csv);
  size_t files = std::distance(fs::directory_iterator(cache), fs::directory_iterator{});
  CHECK(files == 3);
  CHECK(run_cli({"count", "--model", tmp.file("m.json"), "--m", "3..5", "--out", csv}) == 0);
  CHECK(slurp(csv) == first);
  unsetenv("ADELIC_OKOUNKOV_CACHE");
}

TEST_CASE("report bundle aggregates certificates and estimates") {
  TempDir tmp;
  save_model(flagship_p1(), tmp.file("m.json"));
  std::string dir = tmp.file("bundle");
  CHECK(run_cli({"report", "bundle", "--model", tmp.file("m.json"), "--out", dir}) == 0);
  CHECK(fs::exists(dir + "/certificates.json"));
  CHECK(fs::exists(dir + "/avol.json"));
  Json certs = Json::parse(slurp(dir + "/certificates.json"));
  CHECK(certs["all_pass"].get<bool>());
}
