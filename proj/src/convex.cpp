#include <adok/lattice/convex.hpp>
#include <adok/lattice/lp.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace adok {

int row_reduce(std::vector<RatVec>& rows) {
  if (rows.empty()) return 0;
  const size_t cols = rows.front().size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows.size(); ++c) {
    size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    Rat p = rows[r][c];
    for (auto& v : rows[r]) v /= p;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rat f = rows[i][c];
      for (size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return static_cast<int>(r);
}

std::vector<RatVec> nullspace(const std::vector<RatVec>& rows_in, size_t cols) {
  std::vector<RatVec> rows = rows_in;
  row_reduce(rows);
  std::vector<long> pivot_col_of_row;
  std::vector<bool> is_pivot(cols, false);
  for (const auto& row : rows) {
    size_t c = 0;
    while (c < cols && row[c] == 0) ++c;
    if (c < cols) {
      pivot_col_of_row.push_back(static_cast<long>(c));
      is_pivot[c] = true;
    }
  }
  std::vector<RatVec> basis;
  for (size_t freec = 0; freec < cols; ++freec) {
    if (is_pivot[freec]) continue;
    RatVec v(cols, Rat(0));
    v[freec] = 1;
    for (size_t i = 0; i < pivot_col_of_row.size(); ++i)
      v[pivot_col_of_row[i]] = -rows[i][freec];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> solve_linear(std::vector<RatVec> rows, const RatVec& rhs) {
  // rows: m x n, solve rows(augmented) consistent system for x with A x = rhs
  // where A's columns are given as... here rows ARE the equations a_i.x = rhs_i.
  const size_t m = rows.size();
  if (m == 0) return RatVec{};
  const size_t n = rows.front().size();
  for (size_t i = 0; i < m; ++i) rows[i].push_back(rhs[i]);
  size_t r = 0;
  std::vector<long> pivcol;
  for (size_t c = 0; c < n && r < m; ++c) {
    size_t piv = r;
    while (piv < m && rows[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(rows[r], rows[piv]);
    Rat p = rows[r][c];
    for (auto& v : rows[r]) v /= p;
    for (size_t i = 0; i < m; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rat f = rows[i][c];
      for (size_t j = c; j <= n; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivcol.push_back(static_cast<long>(c));
    ++r;
  }
  for (size_t i = r; i < m; ++i)
    if (rows[i][n] != 0) return std::nullopt;
  RatVec x(n, Rat(0));
  for (size_t i = 0; i < r; ++i) x[pivcol[i]] = rows[i][n];
  return x;
}

ConvexBody ConvexBody::from_points(std::vector<RatVec> pts) {
  if (pts.empty()) throw std::invalid_argument("convex body: empty generator set");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  ConvexBody b;
  b.gens_ = std::move(pts);
  return b;
}

int ConvexBody::affine_dim() const {
  ensure_hrep();
  return affine_dim_;
}

std::pair<RatVec, RatVec> ConvexBody::bounding_box() const {
  RatVec lo = gens_.front(), hi = gens_.front();
  for (const auto& g : gens_)
    for (size_t i = 0; i < g.size(); ++i) {
      if (g[i] < lo[i]) lo[i] = g[i];
      if (g[i] > hi[i]) hi[i] = g[i];
    }
  return {lo, hi};
}

ConvexBody ConvexBody::dilate(const Rat& a) const {
  std::vector<RatVec> pts = gens_;
  for (auto& p : pts)
    for (auto& v : p) v *= a;
  return from_points(std::move(pts));
}

std::optional<RatVec> ConvexBody::affine_coords(const RatVec& x) const {
  // The basis rows are in reduced echelon form, so the coordinates read off
  // at the pivot columns; a residual check replaces a full solve.
  const size_t n = base_point_.size();
  const size_t a = affine_basis_.size();
  RatVec lambda(a);
  for (size_t j = 0; j < a; ++j) {
    size_t c = 0;
    while (c < n && affine_basis_[j][c] == 0) ++c;
    lambda[j] = (x[c] - base_point_[c]) / affine_basis_[j][c];
  }
  for (size_t i = 0; i < n; ++i) {
    Rat s = base_point_[i];
    for (size_t j = 0; j < a; ++j)
      if (affine_basis_[j][i] != 0) s += lambda[j] * affine_basis_[j][i];
    if (s != x[i]) return std::nullopt;
  }
  return lambda;
}

void ConvexBody::ensure_hrep() const {
  if (hrep_done_) return;
  base_point_ = gens_.front();
  std::vector<RatVec> dirs;
  for (size_t i = 1; i < gens_.size(); ++i) {
    RatVec d(gens_[i].size());
    for (size_t j = 0; j < d.size(); ++j) d[j] = gens_[i][j] - base_point_[j];
    dirs.push_back(std::move(d));
  }
  std::vector<RatVec> reduced = dirs;
  affine_dim_ = row_reduce(reduced);
  affine_basis_ = reduced;
  equations_ = nullspace(dirs, base_point_.size());
  if (affine_dim_ > 4)
    throw std::domain_error("convex body: H-representation limited to affine dimension <= 4");

  const size_t a = static_cast<size_t>(affine_dim_);
  // Points in affine coordinates.
  std::vector<RatVec> apts;
  for (const auto& g : gens_) {
    auto c = affine_coords(g);
    if (!c) throw std::logic_error("convex body: generator outside its own span");
    apts.push_back(*c);
  }
  // Large generator sets make the facet subset-scan explode; only the
  // extreme points matter, so drop everything inside the hull of the rest.
  if (apts.size() > 24) {
    std::vector<RatVec> kept = apts;
    for (size_t i = kept.size(); i-- > 0;) {
      std::vector<RatVec> others = kept;
      others.erase(others.begin() + static_cast<long>(i));
      if (others.empty()) break;
      if (conv_membership(others, kept[i]).inside) kept.erase(kept.begin() + static_cast<long>(i));
    }
    apts = std::move(kept);
  }
  facets_.clear();
  if (a == 0) {
    hrep_done_ = true;
    return;
  }
  // Enumerate a-subsets; keep supporting hyperplanes.
  const size_t k = apts.size();
  std::vector<size_t> idx(a);
  std::map<std::pair<RatVec, Rat>, bool> seen;
  auto consider = [&](RatVec n0, Rat c0) {
    // Normalize to a primitive integer normal with fixed orientation.
    Int l = 1;
    for (const auto& v : n0) l = boost::multiprecision::lcm(l, den(v));
    RatVec ni(n0.size());
    Int g = 0;
    for (size_t i = 0; i < n0.size(); ++i) {
      ni[i] = n0[i] * Rat(l);
      g = boost::multiprecision::gcd(g, num(ni[i]));
    }
    if (g == 0) return;
    Rat c = c0 * Rat(l) / Rat(g);
    for (auto& v : ni) v /= Rat(g);
    auto key = std::make_pair(ni, c);
    if (seen.count(key)) return;
    seen[key] = true;
    facets_.push_back(Facet{ni, c, false});
  };
  std::vector<size_t> comb(a);
  // Iterate combinations of size a from k points.
  std::vector<size_t> stack;
  std::function<void(size_t, size_t)> rec = [&](size_t start, size_t depth) {
    if (depth == a) {
      // Hyperplane through the chosen points: normal n with
      // n.(q_i - q_0) = 0 for i = 1..a-1 -> nullspace of (a-1) x a system.
      std::vector<RatVec> rows;
      for (size_t i = 1; i < a; ++i) {
        RatVec r(a);
        for (size_t j = 0; j < a; ++j) r[j] = apts[stack[i]][j] - apts[stack[0]][j];
        rows.push_back(std::move(r));
      }
      auto ns = nullspace(rows, a);
      if (ns.size() != 1) return;
      RatVec n0 = ns.front();
      Rat c0 = dot(n0, apts[stack[0]]);
      bool all_le = true, all_ge = true;
      for (const auto& q : apts) {
        int s = Rat(dot(n0, q) - c0).sign();
        if (s > 0) all_le = false;
        if (s < 0) all_ge = false;
        if (!all_le && !all_ge) return;
      }
      if (all_le) consider(n0, c0);
      if (all_ge) {
        RatVec m0(n0.size());
        for (size_t i = 0; i < n0.size(); ++i) m0[i] = -n0[i];
        consider(m0, -c0);
      }
      return;
    }
    for (size_t i = start; i + (a - depth) <= k; ++i) {
      stack.push_back(i);
      rec(i + 1, depth + 1);
      stack.pop_back();
    }
  };
  rec(0, 0);
  hrep_done_ = true;
}

const std::vector<Facet>& ConvexBody::facets() const {
  ensure_hrep();
  return facets_;
}

const std::vector<RatVec>& ConvexBody::hull_equations() const {
  ensure_hrep();
  return equations_;
}

bool ConvexBody::contains(const RatVec& x) const {
  ensure_hrep();
  for (const auto& u : equations_) {
    Rat s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += u[i] * (x[i] - base_point_[i]);
    if (s != 0) return false;
  }
  auto c = affine_coords(x);
  if (!c) return false;
  for (const auto& f : facets_) {
    int s = Rat(dot(f.normal, *c) - f.offset).sign();
    if (s > 0 || (s == 0 && f.strict)) return false;
  }
  return true;
}

bool ConvexBody::is_symmetric() const {
  for (const auto& g : gens_) {
    RatVec m(g.size());
    for (size_t i = 0; i < g.size(); ++i) m[i] = -g[i];
    if (!contains(m)) return false;
  }
  return true;
}

}  // namespace adok
