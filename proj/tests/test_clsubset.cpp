#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <adok/lattice/clsubset.hpp>
#include <adok/core/logreal.hpp>
#include <adok/lattice/count.hpp>

#include <random>
#include <set>

using namespace adok;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.push_back(x);
  return v;
}

std::set<IntVec> as_set(const std::vector<IntVec>& v) { return {v.begin(), v.end()}; }

// Literal averaged-sum closure: iterate l-fold sumsets of the current set
// and keep the averages landing in the span, until stable.
std::set<IntVec> averaged_closure(const std::vector<IntVec>& S, int l_max) {
  Lattice span = lattice_span(S);
  std::set<IntVec> cur(S.begin(), S.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<IntVec> base(cur.begin(), cur.end());
    std::set<IntVec> sums(base.begin(), base.end());
    std::set<IntVec> next = cur;
    for (int l = 2; l <= l_max; ++l) {
      std::set<IntVec> bigger;
      for (const auto& s : sums)
        for (const auto& b : base) bigger.insert(s + b);
      sums = std::move(bigger);
      for (const auto& s : sums) {
        IntVec avg(s.size());
        bool integral = true;
        for (size_t i = 0; i < s.size(); ++i) {
          if (s[i] % l != 0) {
            integral = false;
            break;
          }
          avg[i] = s[i] / l;
        }
        if (integral && span.contains(avg) && !next.count(avg)) {
          next.insert(avg);
          grew = true;
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

TEST_CASE("cl hull on a line fills the gaps") {
  CLSubset h = cl_hull({iv({0}), iv({1}), iv({3})});
  CHECK(as_set(h.elements()) == as_set({iv({0}), iv({1}), iv({2}), iv({3})}));
}

TEST_CASE("cl hull respects the generated sublattice") {
  CLSubset h = cl_hull({iv({0, 2}), iv({2, 0})});
  // Midpoint (1,1) is in the hull but outside the span of the generators.
  CHECK(as_set(h.elements()) == as_set({iv({0, 2}), iv({2, 0})}));
}

TEST_CASE("cl hull of a singleton") {
  CLSubset h = cl_hull({iv({5, -3})});
  CHECK(as_set(h.elements()) == as_set({iv({5, -3})}));
}

TEST_CASE("cl hull is idempotent on random sets") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> d(-4, 4);
  std::uniform_int_distribution<int> nd(1, 12);
  for (int it = 0; it < 120; ++it) {
    int dim = 1 + it % 3;
    std::vector<IntVec> S;
    int n = nd(rng);
    for (int i = 0; i < n; ++i) {
      IntVec v(dim);
      for (int j = 0; j < dim; ++j) v[j] = d(rng);
      S.push_back(v);
    }
    CLSubset h = cl_hull(S);
    CLSubset h2 = cl_hull(h.elements());
    CHECK(as_set(h.elements()) == as_set(h2.elements()));
    for (const auto& s : S) CHECK(h.contains(s));
  }
}

TEST_CASE("averaged-sum closure stabilizes to the hull in rank 2") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> d(-3, 3);
  std::uniform_int_distribution<int> nd(2, 8);
  for (int it = 0; it < 25; ++it) {
    std::vector<IntVec> S;
    int n = nd(rng);
    for (int i = 0; i < n; ++i) S.push_back(iv({d(rng), d(rng)}));
    std::set<IntVec> closure = averaged_closure(S, 24);
    CLSubset h = cl_hull(S);
    CHECK(closure == as_set(h.elements()));
  }
}

TEST_CASE("counting the l1 ball of radius 3 in Z^3") {
  BallSpec ball;
  ball.weights.assign(3, Rat(1) / 4);
  ball.strict = true;  // sum |k| < 4, i.e. <= 3
  CountResult c = count_weighted_l1(ball);
  REQUIRE(c.exact.has_value());
  CHECK(*c.exact == 63);
  // Same count through the generic CL enumeration.
  std::vector<IntVec> pts;
  for (const auto& p : enumerate_ball(ball)) {
    IntVec v(3);
    for (int i = 0; i < 3; ++i) v[i] = p[i];
    pts.push_back(v);
  }
  CHECK(pts.size() == 63);
}

TEST_CASE("box count via weights") {
  // |c1| <= 2, |c2| <= 1 realized as weights 1/(2+1e) on separate coords.
  BallSpec ball;
  ball.weights = {Rat(1) / 5, Rat(1) / 3};
  ball.strict = false;
  // Not a box, but the product bound applies to the axis bounds.
  CHECK(ball_axis_bound(ball.weights[0], false) == 5);
  CHECK(ball_axis_bound(ball.weights[1], false) == 3);
  // The explicit 2x1 box count of the data-type example: 15 points.
  Int count = 0;
  for (long a = -2; a <= 2; ++a)
    for (long b = -1; b <= 1; ++b) ++count;
  CHECK(count == 15);
}

TEST_CASE("count of the trivial ball is one") {
  BallSpec ball;
  ball.weights = {Rat(2), Rat(3)};
  ball.strict = true;
  CountResult c = count_weighted_l1(ball);
  REQUIRE(c.exact.has_value());
  CHECK(*c.exact == 1);
  CHECK(c.active_rank == 0);
}

TEST_CASE("interval counting brackets the exact count") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> den(2, 40);
  for (int it = 0; it < 40; ++it) {
    size_t n = 1 + it % 5;
    BallSpec ball;
    for (size_t i = 0; i < n; ++i) ball.weights.push_back(Rat(1) / den(rng));
    ball.strict = it % 2;
    CountResult ex = count_weighted_l1(ball);
    REQUIRE(ex.exact.has_value());
    // Force the interval path by forbidding both exact routes.
    CountLimits tiny;
    tiny.enum_limit = 1;
    tiny.dp_capacity_limit = 1;
    CountResult iv = count_weighted_l1(ball, tiny);
    CHECK(!iv.exact.has_value());
    Interval truth = log_interval(*ex.exact);
    CHECK(iv.log_count.lo <= truth.hi + 1e-12);
    CHECK(iv.log_count.hi >= truth.lo - 1e-12);
  }
}

TEST_CASE("star sums") {
  auto s = star_sum(2, {iv({-1}), iv({0}), iv({1})});
  CHECK(as_set(s) == as_set({iv({-2}), iv({-1}), iv({0}), iv({1}), iv({2})}));
  auto id = star_sum(1, {iv({3, 1})});
  CHECK(as_set(id) == as_set({iv({3, 1})}));
  auto pairs = star_sum(2, {iv({1, 0}), iv({0, 1})});
  CHECK(as_set(pairs) == as_set({iv({2, 0}), iv({1, 1}), iv({0, 2})}));
}

TEST_CASE("dilate counts on segments") {
  ConvexBody seg = ConvexBody::from_points({RatVec{Rat(-1)}, RatVec{Rat(1)}});
  auto [a, b] = dilate_count(Lattice::full(1), seg, Rat(2));
  CHECK(a == 3);
  CHECK(b == 5);
  auto [c, d] = dilate_count(Lattice::full(1), seg, Rat(1));
  CHECK(c == d);
  Lattice even = lattice_span({iv({2})});
  auto [e, f] = dilate_count(even, seg, Rat(3));
  CHECK(e == 1);
  CHECK(f == 3);
}

TEST_CASE("dilation bound holds on random instances") {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<Rat> as = {Rat(1), Rat(3) / 2, Rat(2), Rat(5)};
  for (int it = 0; it < 60; ++it) {
    int dim = 1 + it % 3;
    std::vector<RatVec> pts;
    for (int i = 0; i < 3; ++i) {
      RatVec v(dim);
      for (int j = 0; j < dim; ++j) v[j] = d(rng);
      pts.push_back(v);
      RatVec m(dim);
      for (int j = 0; j < dim; ++j) m[j] = -v[j];
      pts.push_back(m);
    }
    ConvexBody body = ConvexBody::from_points(pts);
    Rat a = as[it % as.size()];
    auto [small, big] = dilate_count(Lattice::full(dim), body, a);
    CHECK(small <= big);
    Int bound = 1;
    for (int j = 0; j < dim; ++j) bound *= ceil_rat(2 * a);
    CHECK(big <= small * bound);
  }
}

TEST_CASE("unbounded enumeration is rejected") {
  BallSpec ball;
  ball.weights = {Rat(1, 100000000)};
  ball.strict = true;
  CountLimits tiny;
  tiny.enum_limit = 100;
  tiny.dp_capacity_limit = 4;
  CountResult c = count_weighted_l1(ball, tiny);
  CHECK(!c.exact.has_value());  // falls back to the certified interval
  CHECK_THROWS_AS(enumerate_ball(ball, 1000), std::domain_error);
}
