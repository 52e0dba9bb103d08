#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <adok/model/degrees.hpp>
#include <adok/okounkov/estimators.hpp>
#include <adok/okounkov/hullvol.hpp>

#include "models_fixture.hpp"

using namespace adok;
using namespace adok::fixtures;

TEST_CASE("hull volumes in low dimension") {
  CHECK(hull_volume({{Rat(0)}, {Rat(3)}, {Rat(1)}}) == 3);
  CHECK(hull_volume({{Rat(0), Rat(0)}, {Rat(2), Rat(0)}, {Rat(0), Rat(2)}, {Rat(1), Rat(1)}}) ==
        2);
  std::vector<RatVec> cube;
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b)
      for (int c = 0; c <= 1; ++c) cube.push_back({Rat(a), Rat(b), Rat(c)});
  CHECK(hull_volume(cube) == 1);
  std::vector<RatVec> tetra = {{Rat(0), Rat(0), Rat(0)},
                               {Rat(1), Rat(0), Rat(0)},
                               {Rat(0), Rat(1), Rat(0)},
                               {Rat(0), Rat(0), Rat(1)}};
  CHECK(hull_volume(tetra) == Rat(1) / 6);
  // Degenerate configurations have zero measure in their span dimension.
  CHECK(hull_volume({{Rat(0), Rat(0)}, {Rat(1), Rat(1)}}) == 0);
}

TEST_CASE("semigroup of the flagship model") {
  DiagonalModel m = flagship_p1();
  auto flag = default_flag(m, full_face(1));
  REQUIRE(flag.has_value());
  CHECK(flag->p == 11);
  SemigroupSample s = build_semigroup(m, full_face(1), *flag, 6);
  CHECK(s.image_exact);
  CHECK(s.nhat == std::vector<int>{1, 2, 3, 4, 5, 6});
  // Level m valuations: contents up to log_11(2^m) and orders 0..m.
  CHECK(s.level_count(1) == 2);   // (0,0), (0,1)
  CHECK(s.level_count(4) == 10);  // contents {0,1} x orders 0..4
  CHECK(s.generates);
  CHECK(s.fundamental_volume == 1);
}

TEST_CASE("empty series has an empty sample") {
  DiagonalModel m;
  m.dim = 1;
  m.degree = 1;  // zero weight
  auto flag = default_flag(m, full_face(1));
  REQUIRE(flag.has_value());
  SemigroupSample s = build_semigroup(m, full_face(1), *flag, 6);
  CHECK(s.nhat.empty());
  CHECK(s.levels.empty());
}

TEST_CASE("semigroup closure on sampled levels") {
  DiagonalModel m = flagship_p1();
  auto flag = default_flag(m, full_face(1));
  REQUIRE(flag.has_value());
  SemigroupSample s = build_semigroup(m, full_face(1), *flag, 6);
  for (const auto& [m1, ws1] : s.levels)
    for (const auto& [m2, ws2] : s.levels) {
      if (m1 + m2 > s.m_max) continue;
      for (const auto& a : ws1)
        for (const auto& b : ws2) {
          WVec sum(a.size());
          for (size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + b[i];
          CHECK(s.levels.at(m1 + m2).count(sum));
        }
    }
}

TEST_CASE("kappa of faces in and out of the base locus") {
  KappaResult edge = kappa_hat(p2_log2(), Face{1, 2}, 8);
  CHECK(edge.defined);
  CHECK(edge.value == 1);
  REQUIRE(edge.rank_route.has_value());
  CHECK(*edge.rank_route == 1);
  CHECK(edge.agree);

  KappaResult whole = kappa_hat(p2_log2(), full_face(2), 8);
  CHECK(whole.defined);
  CHECK(whole.value == 2);
  CHECK(whole.agree);

  KappaResult dead = kappa_hat(max_family_p2(), Face{0}, 8);
  CHECK(!dead.defined);
}

TEST_CASE("volume estimates approach the closed form on the curve") {
  DiagonalModel m = flagship_p1();
  VolumeReport rep = volume_estimate(m, full_face(1), {16, 32});
  double oracle = 2 * 0.6931471805599453;
  CHECK(rep.kappa == 1);
  REQUIRE(rep.avol_extrapolated.has_value());
  CHECK(std::abs(*rep.avol_extrapolated - oracle) / oracle < 0.15);
  CHECK(rep.avol_raw.lo < oracle);
  CHECK(rep.avol_raw.hi > oracle * 0.8);
}

TEST_CASE("zero weight gives vanishing estimates") {
  DiagonalModel m;
  m.dim = 1;
  m.degree = 1;
  VolumeReport rep = volume_estimate(m, full_face(1), {4, 8});
  CHECK(!rep.l0.has_value());
  CHECK(rep.avol_raw.lo == 0);
  CHECK(rep.avol_raw.hi == 0);
}

TEST_CASE("scaling a model matches rescaling the level") {
  DiagonalModel m = flagship_p1();
  for (int a : {2, 3}) {
    DiagonalModel ma = model_multiple(m, a);
    for (int level = 1; level * a <= 8; ++level) {
      GradedSections direct = graded_sections(m, level * a, full_face(1), true);
      GradedSections scaled = graded_sections(ma, level, full_face(1), true);
      REQUIRE(direct.mono.size() == scaled.mono.size());
      for (size_t i = 0; i < direct.mono.size(); ++i) {
        CHECK(direct.mono[i].alpha == scaled.mono[i].alpha);
        CHECK(direct.mono[i].weight == scaled.mono[i].weight);
      }
    }
  }
}

TEST_CASE("kkok routes agree on the flagship model") {
  DiagonalModel m = flagship_p1();
  auto flag = default_flag(m, full_face(1));
  REQUIRE(flag.has_value());
  std::vector<int> ms;
  for (int i = 4; i <= 40; i += 4) ms.push_back(i);
  KKOkResult r = kkok_cross_check(m, full_face(1), *flag, ms);
  CHECK(r.kappa == 1);
  CHECK(r.image_exact);
  double count = r.count_route.mid();
  CHECK(std::abs(count - r.hull_route) / std::max(r.hull_route, 1e-9) < 0.15);
}

TEST_CASE("singleton levels give a trivial base") {
  // Only the pure power ever shows up: a one-dimensional picture.
  DiagonalModel m;
  m.dim = 1;
  m.degree = 1;
  // Weight positive at u = 0 only: gradient pushes everything else negative.
  AffinePiece pc{{LogReal(Rat(-10))}, LogReal::log_prime(2)};
  m.weights[Place::inf()] = WeightFunction({pc});
  auto flag = default_flag(m, full_face(1));
  REQUIRE(flag.has_value());
  SemigroupSample s = build_semigroup(m, full_face(1), *flag, 6);
  for (const auto& [lvl, ws] : s.levels)
    for (const auto& w : ws) CHECK(w[1] == 0);
}

TEST_CASE("geometric multiplicity of a full series is one") {
  DiagonalModel m = flagship_p1();
  std::vector<int> ms = {8, 12, 16};
  double e = geometric_mult_estimate(m, full_face(1), ms);
  CHECK(std::abs(e - 1.0) < 0.15);
  // Point faces with sections give multiplicity one.
  double ept = geometric_mult_estimate(m, Face{1}, ms);
  CHECK(ept == 1.0);
}

TEST_CASE("half-positive weight halves the growth") {
  // Positive only on the right half of the segment.
  DiagonalModel m;
  m.dim = 1;
  m.degree = 1;
  AffinePiece pc{{LogReal::log_prime(2) * 2}, LogReal::log_prime(2) * -1};
  m.weights[Place::inf()] = WeightFunction({pc});
  std::vector<int> ms = {16, 24, 32};
  double e = geometric_mult_estimate(m, full_face(1), ms);
  CHECK(std::abs(e - 0.5) < 0.12);
}

TEST_CASE("mixed-sign counting matches the clipped integral route") {
  DiagonalModel m = mixed_p1();
  IntegralResult oracle = integral_phi_plus(m, full_face(1));
  VolumeReport rep = volume_estimate(m, full_face(1), {32, 64});
  double target = 2 * oracle.value.mid();
  CHECK(std::abs(rep.avol_best() - target) / target < 0.15);
}

TEST_CASE("finite-place weights grow the same way as archimedean ones") {
  DiagonalModel m = p1_log3_at3();
  VolumeReport rep = volume_estimate(m, full_face(1), {24, 48});
  double target = 2 * std::log(3.0);
  CHECK(std::abs(rep.avol_best() - target) / target < 0.15);
}

TEST_CASE("normalized estimates settle with shrinking oscillation") {
  DiagonalModel m = flagship_p1();
  VolumeReport rep = volume_estimate(m, full_face(1), {16, 24, 32, 40});
  CHECK(rep.oscillation < 0.15);
  VolumeReport coarse = volume_estimate(m, full_face(1), {4, 6, 8});
  CHECK(rep.oscillation <= coarse.oscillation + 1e-9);
}

TEST_CASE("m range parsing") {
  CHECK(parse_m_range("2..5") == std::vector<int>{2, 3, 4, 5});
  CHECK(parse_m_range("8,16,32") == std::vector<int>{8, 16, 32});
  CHECK_THROWS_AS(parse_m_range("5..2"), std::invalid_argument);
}
