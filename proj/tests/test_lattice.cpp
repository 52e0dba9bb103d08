#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <adok/lattice/convex.hpp>
#include <adok/lattice/hnf.hpp>
#include <adok/lattice/lp.hpp>

#include <random>

using namespace adok;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.push_back(x);
  return v;
}

RatVec rv(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.push_back(x);
  return v;
}

}  // namespace

TEST_CASE("span of a diagonal pair") {
  Lattice L = lattice_span({iv({2, 0}), iv({0, 2})});
  REQUIRE(L.rank() == 2);
  CHECK(L.basis()[0] == iv({2, 0}));
  CHECK(L.basis()[1] == iv({0, 2}));
  CHECK(L.contains(iv({4, -2})));
  CHECK(!L.contains(iv({1, 1})));
}

TEST_CASE("hnf of skew generators") {
  Lattice L = lattice_span({iv({1, 1}), iv({1, -1})});
  REQUIRE(L.rank() == 2);
  CHECK(L.basis()[0] == iv({1, 1}));
  CHECK(L.basis()[1] == iv({0, 2}));
  CHECK(L.det_abs() == 2);
}

TEST_CASE("empty span has rank zero") {
  Lattice L = lattice_span({});
  CHECK(L.rank() == 0);
  CHECK(L.ambient_rank() == 0);
}

TEST_CASE("span is canonical and contains its generators") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int it = 0; it < 100; ++it) {
    int dim = 1 + it % 3;
    std::vector<IntVec> gens;
    for (int i = 0; i < 4; ++i) {
      IntVec v(dim);
      for (int j = 0; j < dim; ++j) v[j] = d(rng);
      gens.push_back(v);
    }
    Lattice L = lattice_span(gens);
    for (const auto& g : gens) CHECK(L.contains(g));
    CHECK(L == lattice_span(L.basis()));
    CHECK(L.rank() <= static_cast<size_t>(dim));
  }
}

TEST_CASE("convex body facets agree with the lp membership oracle") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int it = 0; it < 60; ++it) {
    int dim = 1 + it % 3;
    std::vector<RatVec> pts;
    int n = 3 + it % 5;
    for (int i = 0; i < n; ++i) {
      RatVec v(dim);
      for (int j = 0; j < dim; ++j) v[j] = d(rng);
      pts.push_back(v);
    }
    ConvexBody body = ConvexBody::from_points(pts);
    for (int probe = 0; probe < 25; ++probe) {
      RatVec x(dim);
      for (int j = 0; j < dim; ++j) x[j] = Rat(d(rng)) / (1 + probe % 3);
      ConvMembership lp = conv_membership(pts, x);
      CHECK(body.contains(x) == lp.inside);
    }
    for (const auto& p : pts) CHECK(body.contains(p));
  }
}

TEST_CASE("symmetry test sees asymmetry") {
  ConvexBody sym = ConvexBody::from_points({rv({1, 0}), rv({-1, 0}), rv({0, 2}), rv({0, -2})});
  CHECK(sym.is_symmetric());
  ConvexBody asym = ConvexBody::from_points({rv({0, 0}), rv({1, 0}), rv({0, 1})});
  CHECK(!asym.is_symmetric());
}

TEST_CASE("H-representation rejected above affine dimension 4") {
  std::vector<RatVec> pts;
  pts.push_back(RatVec(5, Rat(0)));
  for (int i = 0; i < 5; ++i) {
    RatVec v(5, Rat(0));
    v[i] = 1;
    pts.push_back(v);
  }
  ConvexBody body = ConvexBody::from_points(pts);
  CHECK_THROWS_AS(body.facets(), std::domain_error);
}

TEST_CASE("exact lp on a known program") {
  // max x + y  s.t.  x + 2y <= 4, 3x + y <= 6.
  LPResult r = lp_maximize({Rat(1), Rat(1)},
                           {{{Rat(1), Rat(2)}, Rel::LE, Rat(4)},
                            {{Rat(3), Rat(1)}, Rel::LE, Rat(6)}});
  REQUIRE(r.status == LPStatus::OPTIMAL);
  CHECK(r.value == Rat(14) / 5);
  CHECK(r.x[0] == Rat(8) / 5);
  CHECK(r.x[1] == Rat(6) / 5);
}

TEST_CASE("lp detects infeasible and unbounded programs") {
  LPResult inf = lp_maximize({Rat(1)}, {{{Rat(1)}, Rel::LE, Rat(-1)}});
  CHECK(inf.status == LPStatus::INFEASIBLE);
  LPResult unb = lp_maximize({Rat(1)}, {{{Rat(-1)}, Rel::LE, Rat(1)}});
  CHECK(unb.status == LPStatus::UNBOUNDED);
}
