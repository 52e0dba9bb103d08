#include <adok/lattice/clsubset.hpp>
#include <adok/lattice/lp.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace adok {

CLSubset::CLSubset(Lattice lattice, ConvexBody body)
    : lattice_(std::move(lattice)), body_(std::move(body)) {}

bool CLSubset::contains(const IntVec& v) const {
  return lattice_.contains(v) && body_.contains(to_rat(v));
}

const std::vector<IntVec>& CLSubset::elements(size_t candidate_limit) const {
  if (elements_) return *elements_;
  auto [lo, hi] = body_.bounding_box();
  const size_t n = lo.size();
  std::vector<Int> lois(n), hiis(n);
  Int cand = 1;
  for (size_t i = 0; i < n; ++i) {
    lois[i] = ceil_rat(lo[i]);
    hiis[i] = floor_rat(hi[i]);
    Int w = hiis[i] - lois[i] + 1;
    if (w < 0) w = 0;
    cand *= w;
    if (cand > Int(candidate_limit))
      throw std::domain_error("CL-subset enumeration: candidate box too large");
  }
  std::vector<IntVec> out;
  IntVec cur(n);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == n) {
      if (contains(cur)) out.push_back(cur);
      return;
    }
    for (Int v = lois[i]; v <= hiis[i]; ++v) {
      cur[i] = v;
      rec(i + 1);
    }
  };
  if (cand > 0) rec(0);
  elements_ = std::move(out);
  return *elements_;
}

Int CLSubset::count(size_t candidate_limit) const {
  return Int(elements(candidate_limit).size());
}

CLSubset cl_hull(const std::vector<IntVec>& S) {
  if (S.empty()) return CLSubset(Lattice(0), ConvexBody());
  Lattice L = lattice_span(S);
  std::vector<RatVec> pts;
  pts.reserve(S.size());
  for (const auto& s : S) pts.push_back(to_rat(s));
  return CLSubset(std::move(L), ConvexBody::from_points(std::move(pts)));
}

std::vector<IntVec> star_sum(unsigned m, const std::vector<IntVec>& S) {
  if (m == 0) throw std::invalid_argument("star_sum: m >= 1 required");
  std::set<IntVec> cur(S.begin(), S.end());
  for (unsigned step = 1; step < m; ++step) {
    std::set<IntVec> next;
    for (const auto& a : cur)
      for (const auto& s : S) next.insert(a + s);
    cur = std::move(next);
  }
  return {cur.begin(), cur.end()};
}

std::pair<Int, Int> dilate_count(const Lattice& M, const ConvexBody& delta, const Rat& a,
                                 size_t candidate_limit) {
  if (a < 1) throw std::invalid_argument("dilate_count: a >= 1 required");
  CLSubset small(M, delta);
  CLSubset big(M, delta.dilate(a));
  return {small.count(candidate_limit), big.count(candidate_limit)};
}

bool cl_hull_member_oracle(const std::vector<IntVec>& S, const IntVec& x) {
  Lattice L = lattice_span(S);
  if (!L.contains(x)) return false;
  std::vector<RatVec> pts;
  for (const auto& s : S) pts.push_back(to_rat(s));
  RatVec xr = to_rat(x);
  ConvMembership mem = conv_membership(pts, xr);
  if (mem.inside) {
    // Verify the averaged-sum witness exactly: with l the common denominator
    // of the convex weights, sum_i n_i s_i = l*x, sum n_i = l, n_i >= 0.
    Int l = 1;
    for (const auto& lam : mem.lambda) l = boost::multiprecision::lcm(l, den(lam));
    Int total = 0;
    IntVec acc(x.size(), Int(0));
    for (size_t i = 0; i < S.size(); ++i) {
      Rat nr = mem.lambda[i] * Rat(l);
      if (den(nr) != 1 || nr.sign() < 0) throw std::logic_error("cl oracle: bad witness");
      Int n = num(nr);
      total += n;
      for (size_t j = 0; j < x.size(); ++j) acc[j] += n * S[i][j];
    }
    if (total != l) throw std::logic_error("cl oracle: witness weight mismatch");
    for (size_t j = 0; j < x.size(); ++j)
      if (acc[j] != l * x[j]) throw std::logic_error("cl oracle: witness sum mismatch");
    return true;
  }
  // Verify the separator exactly: h.s_i <= c for all i, h.x > c.
  for (const auto& p : pts)
    if (dot(mem.separator_h, p) > mem.separator_c)
      throw std::logic_error("cl oracle: bad separator");
  if (dot(mem.separator_h, xr) <= mem.separator_c)
    throw std::logic_error("cl oracle: separator does not separate");
  return false;
}

}  // namespace adok
