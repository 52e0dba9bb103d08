#include <adok/okounkov/estimators.hpp>
#include <adok/okounkov/hullvol.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace adok {

namespace {

double factorial_d(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Interval normalize(const Interval& logc, int m, int k) {
  double scale = factorial_d(k + 1) / std::pow(static_cast<double>(m), k + 1);
  return logc.scale(scale);
}

// Least-squares-free two-point fit of c0 + c1 * log(m)/m through the last
// two sampled midpoints; returns c0.
std::optional<double> extrapolate_tail(const std::vector<std::pair<int, double>>& pts) {
  if (pts.size() < 2) return std::nullopt;
  auto [m1, y1] = pts[pts.size() - 2];
  auto [m2, y2] = pts[pts.size() - 1];
  double x1 = std::log(static_cast<double>(m1)) / m1;
  double x2 = std::log(static_cast<double>(m2)) / m2;
  if (x1 == x2) return std::nullopt;
  double slope = (y1 - y2) / (x1 - x2);
  return y2 - slope * x2;
}

}  // namespace

std::vector<int> parse_m_range(const std::string& spec) {
  std::vector<int> out;
  auto dots = spec.find("..");
  if (dots != std::string::npos) {
    int a = std::stoi(spec.substr(0, dots));
    int b = std::stoi(spec.substr(dots + 2));
    if (a < 1 || b < a) throw std::invalid_argument("bad m range: " + spec);
    for (int m = a; m <= b; ++m) out.push_back(m);
    return out;
  }
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int m = std::stoi(tok);
    if (m < 1) throw std::invalid_argument("bad m value: " + tok);
    out.push_back(m);
  }
  if (out.empty()) throw std::invalid_argument("empty m range");
  return out;
}

VolumeReport volume_estimate(const DiagonalModel& model, const Face& face,
                             const std::vector<int>& ms, bool extrapolate,
                             const GoodFlag* flag, const CountLimits& limits) {
  if (ms.empty()) throw std::invalid_argument("volume_estimate: empty level list");
  VolumeReport rep;
  rep.face = face;
  const int k = static_cast<int>(face.size()) - 1;
  int m_max = *std::max_element(ms.begin(), ms.end());
  KappaResult kr = kappa_hat(model, face, std::min(m_max, 12));
  rep.kappa_defined = kr.defined;
  rep.kappa = kr.defined ? kr.value : -1;

  // The certified box interval is kept alongside the sharpest count: when
  // some levels are exact and others are not, mixing the two estimator
  // families skews the tail fit, so the extrapolation sticks to one family.
  std::vector<Interval> box_logs;
  CountLimits box_only;
  box_only.enum_limit = 0;
  box_only.dp_capacity_limit = 0;
  bool all_exact = true;
  for (int m : ms) {
    LevelEstimate le;
    le.m = m;
    CountResult c = count_sections(model, m, face, true, limits);
    le.exact = c.exact.has_value();
    le.empty = c.active_rank == 0;
    le.log_count = c.log_count;
    le.norm_dim = normalize(c.log_count, m, k);
    if (rep.kappa_defined) le.norm_kappa = normalize(c.log_count, m, rep.kappa);
    if (!le.empty && !rep.l0) rep.l0 = m;
    if (!le.empty && !le.exact) all_exact = false;
    box_logs.push_back(le.empty ? Interval::exact(0)
                                : count_sections(model, m, face, true, box_only).log_count);
    rep.levels.push_back(le);
  }

  std::vector<std::pair<int, double>> dim_pts, kap_pts;
  for (size_t i = 0; i < rep.levels.size(); ++i) {
    const auto& le = rep.levels[i];
    if (le.empty) continue;
    Interval src = all_exact ? le.log_count : box_logs[i];
    dim_pts.emplace_back(le.m, normalize(src, le.m, k).mid());
    if (rep.kappa_defined)
      kap_pts.emplace_back(le.m, normalize(src, le.m, rep.kappa).mid());
  }
  if (!dim_pts.empty()) {
    rep.avol_raw = rep.levels.back().norm_dim;
    rep.e_hat_raw = rep.levels.back().norm_kappa;
    for (auto it = rep.levels.rbegin(); it != rep.levels.rend(); ++it)
      if (!it->empty) {
        rep.avol_raw = it->norm_dim;
        rep.e_hat_raw = it->norm_kappa;
        break;
      }
    if (extrapolate) {
      rep.avol_extrapolated = extrapolate_tail(dim_pts);
      rep.e_hat_extrapolated = extrapolate_tail(kap_pts);
    }
    size_t tail = std::min<size_t>(3, kap_pts.size());
    double lo = 0, hi = 0;
    for (size_t i = kap_pts.size() - tail; i < kap_pts.size(); ++i) {
      double v = kap_pts[i].second;
      if (i == kap_pts.size() - tail) lo = hi = v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    rep.oscillation = hi - lo;
  }
  if (flag) {
    SemigroupSample s = build_semigroup(model, face, *flag, std::min(m_max, 16));
    rep.generates = s.generates;
  }
  return rep;
}

KKOkResult kkok_cross_check(const DiagonalModel& model, const Face& face, const GoodFlag& flag,
                            const std::vector<int>& ms) {
  if (ms.empty()) throw std::invalid_argument("kkok_cross_check: empty level list");
  KKOkResult out;
  int m_max = *std::max_element(ms.begin(), ms.end());
  KappaResult kr = kappa_hat(model, face, std::min(m_max, 12));
  if (!kr.defined) throw std::domain_error("kkok_cross_check: kappa undefined (empty series)");
  out.kappa = kr.value;
  SemigroupSample s = build_semigroup(model, face, flag, m_max);
  out.image_exact = s.image_exact;
  out.fundamental_volume = s.fundamental_volume;
  // Count route at the largest nonempty sampled level.
  int m_big = 0;
  for (int m : ms)
    if (s.level_count(m) > 0) m_big = std::max(m_big, m);
  if (m_big == 0) throw std::domain_error("kkok_cross_check: no nonempty level sampled");
  double denom = std::pow(static_cast<double>(m_big), out.kappa + 1);
  out.count_route = Interval::exact(s.level_count(m_big)).scale(1.0 / denom);
  // Hull route: base of the sampled semigroup.
  std::vector<RatVec> pts;
  for (const auto& [m, ws] : s.levels)
    for (const auto& w : ws) {
      RatVec q(w.size());
      for (size_t i = 0; i < w.size(); ++i) q[i] = Rat(w[i]) / m;
      pts.push_back(std::move(q));
    }
  out.hull_route_volume = hull_volume(pts);
  double vol = out.hull_route_volume.convert_to<double>();
  // Normalize by the lattice covolume when the vertical slice is full rank.
  if (out.fundamental_volume > 0) vol /= out.fundamental_volume.convert_to<double>();
  out.hull_route = vol;
  return out;
}

double geometric_mult_estimate(const DiagonalModel& model, const Face& face,
                               const std::vector<int>& ms) {
  if (ms.empty()) throw std::invalid_argument("geometric_mult_estimate: empty level list");
  int m_max = *std::max_element(ms.begin(), ms.end());
  KappaResult kr = kappa_hat(model, face, std::min(m_max, 12));
  if (!kr.defined) throw std::domain_error("geometric_mult_estimate: empty series");
  std::vector<double> vals;
  for (int m : ms) {
    GradedSections gs = graded_sections(model, m, face, true);
    size_t dim = gs.small_monomials().size();
    if (dim == 0) continue;
    vals.push_back(static_cast<double>(dim) * factorial_d(kr.value) /
                   std::pow(static_cast<double>(m), kr.value));
  }
  if (vals.empty()) return 0.0;
  size_t tail = std::min<size_t>(3, vals.size());
  double sum = 0;
  for (size_t i = vals.size() - tail; i < vals.size(); ++i) sum += vals[i];
  return sum / tail;
}

nlohmann::ordered_json volume_report_json(const VolumeReport& rep) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["face"] = rep.face;
  j["kappa_hat"] = rep.kappa_defined ? nlohmann::ordered_json(rep.kappa)
                                     : nlohmann::ordered_json("-inf");
  if (rep.l0) j["l0"] = *rep.l0;
  nlohmann::ordered_json levels = nlohmann::ordered_json::array();
  for (const auto& le : rep.levels) {
    nlohmann::ordered_json lj;
    lj["m"] = le.m;
    lj["empty"] = le.empty;
    lj["exact"] = le.exact;
    lj["count_lo"] = le.log_count.lo;
    lj["count_hi"] = le.log_count.hi;
    lj["normalized_lo"] = le.norm_dim.lo;
    lj["normalized_hi"] = le.norm_dim.hi;
    levels.push_back(lj);
  }
  j["levels"] = levels;
  j["avol_raw_lo"] = rep.avol_raw.lo;
  j["avol_raw_hi"] = rep.avol_raw.hi;
  if (rep.avol_extrapolated) j["avol_extrapolated"] = *rep.avol_extrapolated;
  j["e_hat_raw_lo"] = rep.e_hat_raw.lo;
  j["e_hat_raw_hi"] = rep.e_hat_raw.hi;
  if (rep.e_hat_extrapolated) j["e_hat_extrapolated"] = *rep.e_hat_extrapolated;
  j["oscillation"] = rep.oscillation;
  if (rep.generates) j["generates"] = *rep.generates;
  return j;
}

std::string volume_report_csv(const VolumeReport& rep) {
  std::ostringstream os;
  os << "m,count_lo,count_hi,normalized_lo,normalized_hi\n";
  os.precision(12);
  for (const auto& le : rep.levels)
    os << le.m << "," << le.log_count.lo << "," << le.log_count.hi << "," << le.norm_dim.lo
       << "," << le.norm_dim.hi << "\n";
  return os.str();
}

}  // namespace adok
