#include <adok/lattice/lp.hpp>

#include <stdexcept>

namespace adok {

namespace {

// Tableau rows: [A | b], last row = objective (reduced costs, maximize).
class Simplex {
 public:
  Simplex(std::vector<RatVec> table, std::vector<size_t> basis, size_t nvars)
      : t_(std::move(table)), basis_(std::move(basis)), n_(nvars) {}

  // Pivots until optimal over the columns below enter_limit; returns false
  // on unboundedness.  Bland's rule throughout.
  bool run(size_t enter_limit) {
    const size_t m = t_.size() - 1;
    for (;;) {
      size_t enter = n_;
      for (size_t j = 0; j < enter_limit; ++j)
        if (t_[m][j].sign() > 0) {
          enter = j;
          break;
        }
      if (enter == n_) return true;
      size_t leave = m;
      Rat best;
      for (size_t i = 0; i < m; ++i) {
        if (t_[i][enter].sign() <= 0) continue;
        Rat ratio = t_[i][n_] / t_[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  }

  void pivot(size_t row, size_t col) {
    Rat p = t_[row][col];
    for (auto& v : t_[row]) v /= p;
    for (size_t i = 0; i < t_.size(); ++i) {
      if (i == row || t_[i][col] == 0) continue;
      Rat f = t_[i][col];
      for (size_t j = 0; j <= n_; ++j) t_[i][j] -= f * t_[row][j];
    }
    basis_[row] = col;
  }

  std::vector<RatVec> t_;
  std::vector<size_t> basis_;
  size_t n_;
};

}  // namespace

LPResult lp_maximize(const RatVec& objective, const std::vector<LPRow>& rows) {
  const size_t n0 = objective.size();
  size_t n_slack = 0;
  for (const auto& r : rows)
    if (r.rel != Rel::EQ) ++n_slack;
  const size_t m = rows.size();
  const size_t n_real = n0 + n_slack;
  const size_t n = n_real + m;  // one artificial per row keeps the setup simple

  std::vector<RatVec> t(m + 1, RatVec(n + 1, Rat(0)));
  std::vector<size_t> basis(m);
  size_t slack_at = n0;
  for (size_t i = 0; i < m; ++i) {
    const auto& r = rows[i];
    if (r.a.size() != n0) throw std::invalid_argument("lp: row width mismatch");
    int flip = r.b.sign() < 0 ? -1 : 1;
    for (size_t j = 0; j < n0; ++j) t[i][j] = r.a[j] * flip;
    t[i][n] = r.b * flip;
    Rel rel = r.rel;
    if (flip < 0) {
      if (rel == Rel::LE)
        rel = Rel::GE;
      else if (rel == Rel::GE)
        rel = Rel::LE;
    }
    if (rel == Rel::LE)
      t[i][slack_at++] = 1;
    else if (rel == Rel::GE)
      t[i][slack_at++] = -1;
    t[i][n_real + i] = 1;
    basis[i] = n_real + i;
  }

  // Phase 1: maximize -(sum of artificials), expressed through the
  // artificial basis.
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j <= n; ++j) t[m][j] += t[i][j];
  for (size_t i = 0; i < m; ++i) t[m][n_real + i] = 0;

  Simplex s(std::move(t), std::move(basis), n);
  if (!s.run(n)) throw std::logic_error("lp: phase-1 unbounded");
  if (s.t_[m][n].sign() != 0) return {LPStatus::INFEASIBLE, Rat(0), {}};

  // Drive remaining artificials out of the basis where possible; rows that
  // resist are redundant and their artificial stays basic at zero.
  for (size_t i = 0; i < m; ++i) {
    if (s.basis_[i] < n_real) continue;
    for (size_t j = 0; j < n_real; ++j)
      if (s.t_[i][j].sign() != 0) {
        s.pivot(i, j);
        break;
      }
  }

  // Phase 2 objective through the current basis; artificial columns are
  // excluded from entering.
  auto& t2 = s.t_;
  for (size_t j = 0; j <= n; ++j) t2[m][j] = 0;
  for (size_t j = 0; j < n0; ++j) t2[m][j] = objective[j];
  for (size_t i = 0; i < m; ++i) {
    size_t bv = s.basis_[i];
    Rat c = t2[m][bv];
    if (c == 0) continue;
    for (size_t j = 0; j <= n; ++j) t2[m][j] -= c * s.t_[i][j];
  }

  if (!s.run(n_real)) return {LPStatus::UNBOUNDED, Rat(0), {}};

  RatVec x(n0, Rat(0));
  for (size_t i = 0; i < m; ++i)
    if (s.basis_[i] < n0) x[s.basis_[i]] = s.t_[i][n];
  Rat value = 0;
  for (size_t j = 0; j < n0; ++j) value += objective[j] * x[j];
  return {LPStatus::OPTIMAL, value, x};
}

ConvMembership conv_membership(const std::vector<RatVec>& points, const RatVec& x) {
  if (points.empty()) return {false, {}, RatVec(x.size(), Rat(0)), Rat(-1)};
  const size_t dim = x.size();
  const size_t k = points.size();
  std::vector<LPRow> rows;
  for (size_t d = 0; d < dim; ++d) {
    LPRow r{RatVec(k), Rel::EQ, x[d]};
    for (size_t i = 0; i < k; ++i) r.a[i] = points[i][d];
    rows.push_back(std::move(r));
  }
  rows.push_back(LPRow{RatVec(k, Rat(1)), Rel::EQ, Rat(1)});
  LPResult res = lp_maximize(RatVec(k, Rat(0)), rows);
  if (res.status == LPStatus::OPTIMAL) {
    return {true, res.x, {}, Rat(0)};
  }
  // Separating functional via sign-split variables: maximize h.x - c with
  // h.p_i - c <= 0 and a normalization box, which any separator can be
  // scaled into.
  const size_t nv = 2 * (dim + 1);
  RatVec obj(nv, Rat(0));
  for (size_t d = 0; d < dim; ++d) {
    obj[2 * d] = x[d];
    obj[2 * d + 1] = -x[d];
  }
  obj[2 * dim] = -1;
  obj[2 * dim + 1] = 1;
  std::vector<LPRow> rows2;
  for (size_t i = 0; i < k; ++i) {
    LPRow r{RatVec(nv, Rat(0)), Rel::LE, Rat(0)};
    for (size_t d = 0; d < dim; ++d) {
      r.a[2 * d] = points[i][d];
      r.a[2 * d + 1] = -points[i][d];
    }
    r.a[2 * dim] = -1;
    r.a[2 * dim + 1] = 1;
    rows2.push_back(std::move(r));
  }
  for (size_t d = 0; d <= dim; ++d) {
    LPRow r{RatVec(nv, Rat(0)), Rel::LE, Rat(1)};
    r.a[2 * d] = 1;
    r.a[2 * d + 1] = 1;
    rows2.push_back(std::move(r));
  }
  LPResult sep = lp_maximize(obj, rows2);
  if (sep.status != LPStatus::OPTIMAL || sep.value.sign() <= 0)
    throw std::logic_error("conv_membership: separation failed");
  RatVec h(dim);
  for (size_t d = 0; d < dim; ++d) h[d] = sep.x[2 * d] - sep.x[2 * d + 1];
  Rat c = sep.x[2 * dim] - sep.x[2 * dim + 1];
  return {false, {}, h, c};
}

}  // namespace adok
