#include <adok/cli.hpp>
#include <adok/core/parallel.hpp>
#include <adok/model/io.hpp>
#include <adok/okounkov/estimators.hpp>
#include <adok/verify/checks.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>

namespace adok {

namespace {

namespace fs = std::filesystem;

std::string iso_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

Face parse_face(const std::string& spec, int dim) {
  if (spec.empty() || spec == "all")
    throw std::invalid_argument("face: expected a comma list of coordinates");
  Face f;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int c = std::stoi(tok);
    if (c < 0 || c > dim) throw std::invalid_argument("face: coordinate out of range: " + tok);
    f.push_back(c);
  }
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

std::vector<Face> faces_for(const std::string& spec, int dim) {
  if (spec == "all") return all_faces(dim);
  if (spec.empty()) return {full_face(dim)};
  return {parse_face(spec, dim)};
}

std::vector<long> parse_primes(const std::string& spec) {
  std::vector<long> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stol(tok));
  if (out.empty()) throw std::invalid_argument("empty prime list");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// Optional per-(model, face, m) count cache under ADELIC_OKOUNKOV_CACHE.
struct CountCache {
  fs::path dir;
  bool enabled = false;

  CountCache() {
    const char* env = std::getenv("ADELIC_OKOUNKOV_CACHE");
    if (env && *env) {
      dir = env;
      std::error_code ec;
      fs::create_directories(dir, ec);
      enabled = !ec || fs::exists(dir);
    }
  }

  std::optional<Json> get(const std::string& key) const {
    if (!enabled) return std::nullopt;
    fs::path f = dir / (key + ".json");
    if (!fs::exists(f)) return std::nullopt;
    std::ifstream in(f);
    try {
      return Json::parse(in);
    } catch (...) {
      return std::nullopt;
    }
  }

  void put(const std::string& key, const Json& j) const {
    if (!enabled) return;
    std::ofstream out(dir / (key + ".json"));
    out << j.dump();
  }
};

struct CommonOpts {
  std::string model_path;
  bool deterministic = false;
  unsigned jobs = default_jobs();
};

Json run_config_json(const CommonOpts& opts, const std::string& command, const Json& extra) {
  Json j;
  j["command"] = command;
  j["model"] = opts.model_path;
  j["deterministic"] = opts.deterministic;
  j["jobs"] = opts.deterministic ? 1u : opts.jobs;
  j["params"] = extra;
  return j;
}

int emit_certificates(const std::vector<Certificate>& certs, const std::string& out_path,
                      const Json& config) {
  Json bundle;
  bundle["schema_version"] = 1;
  bundle["config"] = config;
  bundle["generated_at"] = iso_now();
  Json arr = Json::array();
  bool all_pass = true;
  bool any_fail = false;
  for (const auto& c : certs) {
    arr.push_back(c.to_json());
    if (!c.pass) all_pass = false;
    if (c.verdict == "fail") any_fail = true;
  }
  bundle["certificates"] = arr;
  bundle["all_pass"] = all_pass;
  std::string text = bundle.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);
  for (const auto& c : certs)
    std::cerr << "[" << (c.pass ? "PASS" : (c.verdict == "inconclusive" ? "INCONCLUSIVE" : "FAIL"))
              << "] " << c.check << "\n";
  return any_fail ? 1 : 0;
}

int cmd_model_validate(const std::string& path) {
  DiagonalModel m = load_model(path);
  DiagonalModel reread = model_from_json(model_to_json(m));
  if (canonical_model_text(m) != canonical_model_text(reread))
    throw std::runtime_error("model round-trip is not a fixed point");
  std::cout << "ok " << model_digest(m) << "\n";
  return 0;
}

int cmd_sections_enum(const CommonOpts& opts, int m, const std::string& face_spec,
                      const std::string& out) {
  DiagonalModel model = load_model(opts.model_path);
  Face face = face_spec.empty() || face_spec == "all" ? full_face(model.dim)
                                                      : parse_face(face_spec, model.dim);
  GradedSections gs = graded_sections(model, m, face, true);
  Json j;
  j["model_digest"] = model_digest(model);
  j["m"] = m;
  j["face"] = face;
  Json monos = Json::array();
  auto small = gs.small_monomials();
  for (size_t i = 0; i < gs.mono.size(); ++i) {
    Json mj;
    mj["alpha"] = gs.mono[i].alpha;
    mj["weight"] = rat_to_string(gs.mono[i].weight);
    mj["unit"] = rat_to_string(gs.mono[i].unit);
    mj["vinf"] = gs.mono[i].vinf.str();
    mj["strictly_small"] = std::find(small.begin(), small.end(), i) != small.end();
    monos.push_back(mj);
  }
  j["monomials"] = monos;
  CountResult c = count_sections(model, m, face, true);
  if (c.exact) j["count"] = c.exact->str();
  j["log_count_lo"] = c.log_count.lo;
  j["log_count_hi"] = c.log_count.hi;
  std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_text(out, text);
  return 0;
}

int cmd_count(const CommonOpts& opts, const std::string& m_range, const std::string& face_spec,
              const std::string& out) {
  DiagonalModel model = load_model(opts.model_path);
  Face face = face_spec.empty() || face_spec == "all" ? full_face(model.dim)
                                                      : parse_face(face_spec, model.dim);
  std::vector<int> ms = parse_m_range(m_range);
  CountCache cache;
  std::vector<CountResult> results(ms.size());
  std::string base_key = model_digest(model) + "_" + face_str(face);
  parallel_for(ms.size(), opts.deterministic ? 1 : opts.jobs, [&](size_t i) {
    std::string key = digest_hex(base_key + "_m" + std::to_string(ms[i]));
    if (auto hit = cache.get(key)) {
      CountResult c;
      c.log_count = {(*hit)["lo"].get<double>(), (*hit)["hi"].get<double>()};
      if (hit->contains("exact")) c.exact = Int((*hit)["exact"].get<std::string>());
      c.active_rank = (*hit)["active"].get<size_t>();
      results[i] = c;
      return;
    }
    results[i] = count_sections(model, ms[i], face, true);
    Json j;
    j["lo"] = results[i].log_count.lo;
    j["hi"] = results[i].log_count.hi;
    j["active"] = results[i].active_rank;
    if (results[i].exact) j["exact"] = results[i].exact->str();
    cache.put(key, j);
  });
  std::ostringstream os;
  os << "m,count_lo,count_hi,exact\n";
  os.precision(12);
  for (size_t i = 0; i < ms.size(); ++i)
    os << ms[i] << "," << results[i].log_count.lo << "," << results[i].log_count.hi << ","
       << (results[i].exact ? results[i].exact->str() : "") << "\n";
  if (out.empty())
    std::cout << os.str();
  else
    write_text(out, os.str());
  return 0;
}

int cmd_avol(const CommonOpts& opts, const std::string& m_range, const std::string& face_spec,
             bool extrapolate, const std::string& out_prefix) {
  DiagonalModel model = load_model(opts.model_path);
  std::vector<int> ms = parse_m_range(m_range);
  auto faces = faces_for(face_spec, model.dim);
  std::vector<VolumeReport> reports(faces.size());
  parallel_for(faces.size(), opts.deterministic ? 1 : opts.jobs, [&](size_t i) {
    reports[i] = volume_estimate(model, faces[i], ms, extrapolate);
  });
  Json j;
  j["schema_version"] = 1;
  j["model_digest"] = model_digest(model);
  j["config"] = run_config_json(opts, "avol",
                                Json{{"m", m_range}, {"face", face_spec.empty() ? "full" : face_spec},
                                     {"extrapolate", extrapolate}});
  j["generated_at"] = iso_now();
  Json arr = Json::array();
  for (const auto& rep : reports) arr.push_back(volume_report_json(rep));
  j["reports"] = arr;
  if (out_prefix.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text(out_prefix + ".json", j.dump(2) + "\n");
    for (size_t i = 0; i < faces.size(); ++i)
      write_text(out_prefix + "_face" + face_str(faces[i]) + ".csv",
                 volume_report_csv(reports[i]));
  }
  return 0;
}

int cmd_flag_find(const CommonOpts& opts, const std::string& face_spec, long p) {
  DiagonalModel model = load_model(opts.model_path);
  Face face = face_spec.empty() || face_spec == "all" ? full_face(model.dim)
                                                      : parse_face(face_spec, model.dim);
  auto flag = default_flag(model, face, p);
  if (!flag) {
    std::cerr << "no good flag over p=" << p << "\n";
    return 1;
  }
  Json j;
  j["p"] = flag->p;
  j["chart"] = flag->chart;
  j["center"] = flag->center;
  j["order"] = flag->order;
  j["face"] = flag->face;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_semigroup(const CommonOpts& opts, const std::string& face_spec, long p, int m_max,
                  const std::string& out) {
  DiagonalModel model = load_model(opts.model_path);
  Face face = face_spec.empty() || face_spec == "all" ? full_face(model.dim)
                                                      : parse_face(face_spec, model.dim);
  auto flag = default_flag(model, face, p);
  if (!flag) {
    std::cerr << "no good flag over p=" << p << "\n";
    return 1;
  }
  SemigroupSample s = build_semigroup(model, face, *flag, m_max);
  Json j;
  j["model_digest"] = model_digest(model);
  j["flag"] = Json{{"p", flag->p}, {"chart", flag->chart}, {"center", flag->center},
                   {"order", flag->order}};
  j["face"] = face;
  j["m_max"] = m_max;
  j["nhat"] = s.nhat;
  j["image_exact"] = s.image_exact;
  j["generates"] = s.generates;
  j["fundamental_volume"] = rat_to_string(s.fundamental_volume);
  Json lv;
  for (const auto& [m, ws] : s.levels) {
    Json arr = Json::array();
    for (const auto& w : ws) {
      Json wj = Json::array();
      for (const auto& x : w) wj.push_back(x.str());
      arr.push_back(wj);
    }
    lv[std::to_string(m)] = arr;
  }
  j["levels"] = lv;
  std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_text(out, text);
  return 0;
}

struct VerifyOpts {
  std::string name;
  std::string m_range = "2..6";
  std::string primes = "11";
  std::string face_spec;
  std::string model2_path;
  std::string lambdas = "1/20,-1/20,1/10,-1/10";
  double tol = 0.2;
  int grid = 65;
  int m_max = 10;
  unsigned long long seed = 20240901;
  int instances = 500;
  std::string out;
};

int cmd_verify(const CommonOpts& opts, const VerifyOpts& v) {
  std::vector<Certificate> certs;
  auto need_model = [&]() { return load_model(opts.model_path); };
  if (v.name == "counting" || v.name == "all") {
    RandomSuiteConfig cfg;
    cfg.seed = v.seed;
    cfg.instances = v.instances;
    certs.push_back(check_counting_lemma_random(cfg));
  }
  if (v.name == "dilation" || v.name == "all") {
    RandomSuiteConfig cfg;
    cfg.seed = v.seed;
    cfg.instances = v.instances;
    certs.push_back(check_dilation_lemma_random(cfg));
  }
  if (v.name == "yuan") {
    DiagonalModel model = need_model();
    Face face = v.face_spec.empty() ? full_face(model.dim) : parse_face(v.face_spec, model.dim);
    for (long p : parse_primes(v.primes)) {
      auto flag = default_flag(model, face, p);
      if (!flag) throw std::runtime_error("no good flag over p=" + std::to_string(p));
      for (int m : parse_m_range(v.m_range))
        certs.push_back(check_yuan_theorem(model, face, *flag, m));
    }
  }
  if (v.name == "prop_yuan") {
    DiagonalModel model = need_model();
    Face face = v.face_spec.empty() ? full_face(model.dim) : parse_face(v.face_spec, model.dim);
    for (long p : parse_primes(v.primes)) {
      auto flag = default_flag(model, face, p);
      if (!flag) throw std::runtime_error("no good flag over p=" + std::to_string(p));
      certs.push_back(check_prop_yuan(model, face, *flag, parse_m_range(v.m_range)));
    }
  }
  if (v.name == "brunn_minkowski") {
    if (v.model2_path.empty())
      throw std::invalid_argument("brunn_minkowski requires --model2");
    DiagonalModel a = need_model();
    DiagonalModel b = load_model(v.model2_path);
    Face face = v.face_spec.empty() ? full_face(a.dim) : parse_face(v.face_spec, a.dim);
    certs.push_back(check_brunn_minkowski(a, b, face, parse_m_range(v.m_range)));
  }
  if (v.name == "continuity") {
    DiagonalModel model = need_model();
    Face face = v.face_spec.empty() ? full_face(model.dim) : parse_face(v.face_spec, model.dim);
    std::vector<Rat> ls;
    std::stringstream ss(v.lambdas);
    std::string tok;
    while (std::getline(ss, tok, ',')) ls.push_back(rat_from_string(tok));
    certs.push_back(check_continuity(model, face, ls, parse_m_range(v.m_range)));
  }
  if (v.name == "nef_equality") {
    DiagonalModel model = need_model();
    Face face = v.face_spec.empty() ? full_face(model.dim) : parse_face(v.face_spec, model.dim);
    certs.push_back(check_nef_equality(model, face, parse_m_range(v.m_range), v.tol, true));
  }
  if (v.name == "fujita") {
    DiagonalModel model = need_model();
    Face face = v.face_spec.empty() ? full_face(model.dim) : parse_face(v.face_spec, model.dim);
    certs.push_back(
        fujita_lower_bound(model, face, parse_m_range(v.m_range), v.grid).cert);
  }
  if (v.name == "baselocus") {
    certs.push_back(check_baselocus_duality(need_model(), v.m_max));
  }
  if (v.name == "wample_openness") {
    certs.push_back(check_wample_openness(need_model(), v.m_max));
  }
  if (certs.empty()) throw std::invalid_argument("unknown verify target: " + v.name);
  Json cfg = run_config_json(opts, "verify " + v.name,
                             Json{{"m", v.m_range}, {"p", v.primes}, {"tol", v.tol}});
  return emit_certificates(certs, v.out, cfg);
}

int cmd_report_bundle(const CommonOpts& opts, const std::string& out_dir) {
  DiagonalModel model = load_model(opts.model_path);
  fs::create_directories(out_dir);
  std::vector<Certificate> certs;
  certs.push_back(check_counting_lemma_random({20240901, 100, 4, 120}));
  certs.push_back(check_dilation_lemma_random({20240901, 100, 4, 120}));
  certs.push_back(check_baselocus_duality(model, 8));
  certs.push_back(check_wample_openness(model, 8));
  Json cfg = run_config_json(opts, "report bundle", Json::object());
  int rc = emit_certificates(certs, out_dir + "/certificates.json", cfg);
  std::vector<int> ms;
  for (int m = 4; m <= 24; m += 4) ms.push_back(m);
  auto faces = all_faces(model.dim);
  std::vector<VolumeReport> reports(faces.size());
  parallel_for(faces.size(), opts.deterministic ? 1 : opts.jobs,
               [&](size_t i) { reports[i] = volume_estimate(model, faces[i], ms); });
  Json j;
  j["schema_version"] = 1;
  j["model_digest"] = model_digest(model);
  j["generated_at"] = iso_now();
  Json arr = Json::array();
  for (size_t i = 0; i < faces.size(); ++i) {
    arr.push_back(volume_report_json(reports[i]));
    write_text(out_dir + "/avol_face" + face_str(faces[i]) + ".csv",
               volume_report_csv(reports[i]));
  }
  j["reports"] = arr;
  write_text(out_dir + "/avol.json", j.dump(2) + "\n");
  return rc;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"adelic monomial series toolkit"};
  app.require_subcommand(1);
  CommonOpts common;

  // model validate
  auto* model_cmd = app.add_subcommand("model", "model file operations");
  auto* validate = model_cmd->add_subcommand("validate", "parse and validate a model file");
  std::string validate_path;
  validate->add_option("file", validate_path, "model JSON file")->required();

  // sections enum
  auto* sections_cmd = app.add_subcommand("sections", "graded section sets");
  auto* senum = sections_cmd->add_subcommand("enum", "enumerate monomial data at one level");
  int senum_m = 1;
  std::string senum_face, senum_out;
  senum->add_option("--model", common.model_path)->required();
  senum->add_option("--m", senum_m)->required();
  senum->add_option("--face", senum_face);
  senum->add_option("--out", senum_out);

  // count
  auto* count_cmd = app.add_subcommand("count", "per-level counts (exact or certified)");
  std::string count_m = "2..8", count_face, count_out;
  count_cmd->add_option("--model", common.model_path)->required();
  count_cmd->add_option("--m", count_m);
  count_cmd->add_option("--face", count_face);
  count_cmd->add_option("--out", count_out);

  // avol
  auto* avol_cmd = app.add_subcommand("avol", "restricted volume estimates");
  std::string avol_m = "8..32", avol_face = "", avol_out;
  bool avol_extrapolate = false;
  avol_cmd->add_option("--model", common.model_path)->required();
  avol_cmd->add_option("--m", avol_m);
  avol_cmd->add_option("--face", avol_face, "coordinate list or 'all'");
  avol_cmd->add_flag("--extrapolate", avol_extrapolate);
  avol_cmd->add_option("--out", avol_out, "output path prefix");

  // flag find
  auto* flag_cmd = app.add_subcommand("flag", "good flags");
  auto* ffind = flag_cmd->add_subcommand("find", "search a good flag over p");
  std::string ffind_face;
  long ffind_p = 11;
  ffind->add_option("--model", common.model_path)->required();
  ffind->add_option("--face", ffind_face);
  ffind->add_option("--p", ffind_p)->required();

  // semigroup build
  auto* semi_cmd = app.add_subcommand("semigroup", "valuation semigroups");
  auto* sbuild = semi_cmd->add_subcommand("build", "sample the valuation semigroup");
  std::string sbuild_face, sbuild_out;
  long sbuild_p = 11;
  int sbuild_mmax = 12;
  sbuild->add_option("--model", common.model_path)->required();
  sbuild->add_option("--face", sbuild_face);
  sbuild->add_option("--p", sbuild_p);
  sbuild->add_option("--m-max", sbuild_mmax);
  sbuild->add_option("--out", sbuild_out);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "inequality and limit checks");
  VerifyOpts vopts;
  verify_cmd->add_option("name", vopts.name,
                         "counting|dilation|yuan|prop_yuan|brunn_minkowski|continuity|"
                         "nef_equality|fujita|baselocus|wample_openness|all")
      ->required();
  verify_cmd->add_option("--model", common.model_path);
  verify_cmd->add_option("--model2", vopts.model2_path);
  verify_cmd->add_option("--m", vopts.m_range);
  verify_cmd->add_option("--m-max", vopts.m_max);
  verify_cmd->add_option("--p", vopts.primes);
  verify_cmd->add_option("--face", vopts.face_spec);
  verify_cmd->add_option("--lambdas", vopts.lambdas);
  verify_cmd->add_option("--tol", vopts.tol);
  verify_cmd->add_option("--grid", vopts.grid);
  verify_cmd->add_option("--seed", vopts.seed);
  verify_cmd->add_option("--instances", vopts.instances);
  verify_cmd->add_option("--out", vopts.out);

  // report bundle
  auto* report_cmd = app.add_subcommand("report", "aggregate artifacts");
  auto* bundle = report_cmd->add_subcommand("bundle", "checks + estimates for one model");
  std::string bundle_out = "report";
  bundle->add_option("--model", common.model_path)->required();
  bundle->add_option("--out", bundle_out);

  app.add_flag("--deterministic", common.deterministic, "force sequential evaluation");
  app.add_option("--jobs", common.jobs, "parallelism degree");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_model_validate(validate_path);
    if (*senum) return cmd_sections_enum(common, senum_m, senum_face, senum_out);
    if (*count_cmd) return cmd_count(common, count_m, count_face, count_out);
    if (*avol_cmd) return cmd_avol(common, avol_m, avol_face, avol_extrapolate, avol_out);
    if (*ffind) return cmd_flag_find(common, ffind_face, ffind_p);
    if (*sbuild) return cmd_semigroup(common, sbuild_face, sbuild_p, sbuild_mmax, sbuild_out);
    if (*verify_cmd) return cmd_verify(common, vopts);
    if (*bundle) return cmd_report_bundle(common, bundle_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}

}  // namespace adok
