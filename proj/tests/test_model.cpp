#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <adok/model/io.hpp>

#include <nlohmann/json.hpp>
#include <adok/model/sections.hpp>

#include "models_fixture.hpp"

#include <random>

using namespace adok;
using namespace adok::fixtures;

namespace {

Expo expo(std::initializer_list<int> xs) { return Expo(xs); }

Section random_section(std::mt19937_64& rng, const GradedSections& gs, int max_terms) {
  std::uniform_int_distribution<size_t> pick(0, gs.mono.size() - 1);
  std::uniform_int_distribution<int> cd(-3, 3);
  Section s;
  s.degree = gs.m;
  for (int t = 0; t < max_terms; ++t) {
    size_t i = pick(rng);
    Rat c = gs.mono[i].unit * cd(rng);
    if (c != 0) s.coeff[gs.mono[i].alpha] += c;
  }
  for (auto it = s.coeff.begin(); it != s.coeff.end();)
    it = it->second == 0 ? s.coeff.erase(it) : std::next(it);
  return s;
}

}  // namespace

TEST_CASE("norm of a pure power under the zero weight") {
  DiagonalModel m;
  m.dim = 1;
  m.degree = 1;
  for (int deg = 1; deg <= 5; ++deg) {
    Section s = Section::monomial(deg, expo({deg, 0}), 1);
    CHECK(norm_infinity(m, s) == 1);
  }
}

TEST_CASE("max-family coordinate norms match the pointwise metric") {
  DiagonalModel m = max_family_p2();
  Section x1 = Section::monomial(1, expo({0, 1, 0}), 1);
  Section x0 = Section::monomial(1, expo({1, 0, 0}), 1);
  CHECK(norm_infinity(m, x1) == Rat(1) / 2);
  CHECK(norm_infinity(m, x0) == 2);
}

TEST_CASE("l1 norm adds coefficients with dyadic weights") {
  // Both exponents carry floor exponent 2 at level 1: weight function 2 log 2.
  DiagonalModel m;
  m.dim = 1;
  m.degree = 1;
  m.weights[Place::inf()] = WeightFunction::constant(LogReal::log_prime(2) * 2);
  Section s;
  s.degree = 1;
  s.coeff[expo({1, 0})] = 3;
  s.coeff[expo({0, 1})] = 1;
  CHECK(norm_infinity(m, s) == 1);  // (3 + 1) * 2^-2
}

TEST_CASE("finite norms follow the floor exponents") {
  DiagonalModel m = p1_log3_at3();
  // Weight log 3 everywhere: e_3 = m, so denominators up to 3^m survive.
  Section ok = Section::monomial(2, expo({1, 1}), Rat(1) / 9);
  Section bad = Section::monomial(2, expo({1, 1}), Rat(1) / 27);
  CHECK(norm_finite(m, ok, 3) == 1);
  CHECK(norm_finite(m, bad, 3) == 3);
  CHECK(finitely_admissible(m, ok));
  CHECK(!finitely_admissible(m, bad));
}

TEST_CASE("strictly small sets: trivial weight admits only zero") {
  DiagonalModel m;
  m.dim = 1;
  m.degree = 1;
  CountResult c = count_sections(m, 1, full_face(1), true);
  REQUIRE(c.exact.has_value());
  CHECK(*c.exact == 1);
}

TEST_CASE("strictly small sets: flagship level two is the 63-point ball") {
  DiagonalModel m = flagship_p1();
  GradedSections gs = graded_sections(m, 2, full_face(1), true);
  REQUIRE(gs.mono.size() == 3);
  for (const auto& mi : gs.mono) CHECK(mi.weight == Rat(1) / 4);
  CountResult c = count_weighted_l1(gs.ball());
  REQUIRE(c.exact.has_value());
  CHECK(*c.exact == 63);
}

TEST_CASE("strictly small monomials of the paper family") {
  DiagonalModel m = max_family_p2();
  GradedSections gs = graded_sections(m, 1, full_face(2), true);
  auto small = gs.small_monomials();
  std::set<Expo> found;
  for (size_t i : small) found.insert(gs.mono[i].alpha);
  CHECK(found == std::set<Expo>{expo({0, 1, 0}), expo({0, 0, 1})});
}

TEST_CASE("submultiplicativity of the declared norms") {
  std::mt19937_64 rng(61);
  std::vector<DiagonalModel> models = {flagship_p1(), max_family_p2(), p1_log3_at3(),
                                       quarter_p2(), tent_p1()};
  for (const auto& m : models) {
    for (int it = 0; it < 40; ++it) {
      int d1 = 1 + it % 3, d2 = 1 + (it / 3) % 3;
      GradedSections g1 = graded_sections(m, d1, full_face(m.dim), true);
      GradedSections g2 = graded_sections(m, d2, full_face(m.dim), true);
      Section s = random_section(rng, g1, 4);
      Section t = random_section(rng, g2, 4);
      if (s.zero() || t.zero()) continue;
      Section st = s * t;
      CHECK(norm_infinity(m, st) <= norm_infinity(m, s) * norm_infinity(m, t));
      for (long p : m.weighted_primes())
        CHECK(norm_finite(m, st, p) <= norm_finite(m, s, p) * norm_finite(m, t, p));
    }
  }
}

TEST_CASE("monomial decomposability of strict smallness") {
  std::mt19937_64 rng(67);
  DiagonalModel m = flagship_p1();
  for (int level = 1; level <= 6; ++level) {
    GradedSections gs = graded_sections(m, level, full_face(1), true);
    for (int it = 0; it < 30; ++it) {
      Section s = random_section(rng, gs, 3);
      if (s.zero()) continue;
      bool small = strictly_small(m, s);
      // Each single-coefficient restriction must itself be admissible when
      // the full section is; the converse needs the l1 sum below one.
      if (small) {
        for (const auto& [a, c] : s.coeff)
          CHECK(strictly_small(m, Section::monomial(level, a, c)));
      }
      Rat total = 0;
      for (const auto& [a, c] : s.coeff) {
        Int v = floor_exponent_inf(m, a, level);
        total += abs(c) * (v >= 0 ? Rat(1) / Rat(pow_int(Int(2), v.convert_to<unsigned long>()))
                                  : Rat(pow_int(Int(2), (-v).convert_to<unsigned long>())));
      }
      CHECK(small == (total < 1));
    }
  }
}

TEST_CASE("restriction to a face is coefficient projection") {
  DiagonalModel m = max_family_p2();
  // Identity on the full face.
  GradedSections full = graded_sections(m, 1, full_face(2), true);
  CHECK(full.mono.size() == 3);
  // The {x0, x1} edge keeps only the x1 column among the strictly small.
  GradedSections edge = graded_sections(m, 1, Face{0, 1}, true);
  auto small = edge.small_monomials();
  REQUIRE(small.size() == 1);
  CHECK(edge.mono[small[0]].alpha == expo({0, 1, 0}));
}

TEST_CASE("projection of an l1 ball is the l1 ball of surviving coordinates") {
  DiagonalModel m = flagship_p1();
  for (int level = 1; level <= 3; ++level) {
    GradedSections full = graded_sections(m, level, full_face(1), true);
    GradedSections pt = graded_sections(m, level, Face{1}, true);
    // Project enumerated sections onto the face-supported monomials.
    std::set<std::vector<long>> proj;
    auto pts = enumerate_ball(full.ball());
    for (const auto& k : pts) {
      std::vector<long> q;
      for (size_t i = 0; i < full.mono.size(); ++i)
        if (full.mono[i].alpha[0] == 0) q.push_back(k[i]);
      proj.insert(q);
    }
    std::set<std::vector<long>> direct;
    for (const auto& k : enumerate_ball(pt.ball())) direct.insert(k);
    CHECK(proj == direct);
  }
}

TEST_CASE("twists shift weights and compose to the identity") {
  DiagonalModel m = flagship_p1();
  DiagonalModel tw = twist_infinity(twist_infinity(m, Rat(1) / 3), Rat(-1) / 3);
  RatVec u{Rat(1) / 2};
  CHECK((tw.phi_total(u) - m.phi_total(u)).is_zero());
  DiagonalModel same = twist_infinity(m, 0);
  CHECK(canonical_model_text(same) == canonical_model_text(m));
  DiagonalModel tf = twist_finite(m, 5, 2);
  CHECK((tf.phi(Place::finite(5), u) - LogReal::log_prime(5) * 2).is_zero());
}

TEST_CASE("positive twists only enlarge the graded sets") {
  DiagonalModel m = flagship_p1();
  DiagonalModel up = twist_infinity(m, Rat(1) / 5);
  for (int level = 1; level <= 6; ++level) {
    GradedSections a = graded_sections(m, level, full_face(1), true);
    GradedSections b = graded_sections(up, level, full_face(1), true);
    for (size_t i = 0; i < a.mono.size(); ++i) CHECK(b.mono[i].weight <= a.mono[i].weight);
    CountResult ca = count_weighted_l1(a.ball());
    CountResult cb = count_weighted_l1(b.ball());
    REQUIRE(ca.exact.has_value());
    REQUIRE(cb.exact.has_value());
    CHECK(*ca.exact <= *cb.exact);
  }
}

TEST_CASE("degree zero keeps only the zero section strictly small") {
  DiagonalModel m = flagship_p1();
  GradedSections gs = graded_sections(m, 0, full_face(1), true);
  CountResult c = count_weighted_l1(gs.ball());
  REQUIRE(c.exact.has_value());
  CHECK(*c.exact == 1);
  GradedSections loose = graded_sections(m, 0, full_face(1), false);
  CountResult cl = count_weighted_l1(loose.ball());
  CHECK(*cl.exact == 3);  // 0 and the two units
}

TEST_CASE("model json round-trip is a fixed point") {
  std::vector<DiagonalModel> models = {flagship_p1(), p2_log2(),  p1_log3_at3(),
                                       max_family_p2(), mixed_p2(), quarter_p2(),
                                       tent_p1()};
  for (const auto& m : models) {
    Json j = model_to_json(m);
    DiagonalModel back = model_from_json(j);
    CHECK(canonical_model_text(back) == canonical_model_text(m));
    Json j2 = model_to_json(back);
    CHECK(j.dump() == j2.dump());
  }
}

TEST_CASE("malformed models are rejected with diagnostics") {
  Json j;
  j["dim"] = 1;
  j["degree"] = 1;
  j["places"] = Json::array({Json{{"place", 4}, {"affine_pieces", Json::array()}}});
  CHECK_THROWS_WITH_AS(model_from_json(j), doctest::Contains("not prime"),
                       std::invalid_argument);
  Json k;
  k["dim"] = 1;
  k["degree"] = 1;
  k["places"] =
      Json::array({Json{{"place", "inf"}, {"affine_pieces", Json::array()}}});
  CHECK_THROWS_WITH_AS(model_from_json(k), doctest::Contains("min-of-affines"),
                       std::invalid_argument);
  Json f;
  f["dim"] = 2;
  f["degree"] = 1;
  f["max_family"] = Json{{"inf", Json::array({"1", "2"})}};
  CHECK_THROWS_WITH_AS(model_from_json(f), doctest::Contains("dim+1"), std::invalid_argument);
}

TEST_CASE("explicit weights must agree with the family at the vertices") {
  DiagonalModel m = flagship_p1();
  m.weights[Place::inf()] = WeightFunction::constant(LogReal::log_prime(2));  // consistent
  CHECK_NOTHROW(m.validate());
  m.weights[Place::inf()] = WeightFunction::constant(LogReal::log_prime(3));  // inconsistent
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}
