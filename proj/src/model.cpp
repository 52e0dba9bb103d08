#include <adok/model/model.hpp>

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace adok {

std::vector<Face> all_faces(int n) {
  std::vector<Face> out;
  for (unsigned mask = 1; mask < (1u << (n + 1)); ++mask) {
    Face f;
    for (int i = 0; i <= n; ++i)
      if (mask & (1u << i)) f.push_back(i);
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::string face_str(const Face& f) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
  os << "}";
  return os.str();
}

WeightFunction DiagonalModel::weight_at(const Place& v) const {
  auto it = weights.find(v);
  if (it != weights.end() && !it->second.is_zero()) return it->second;
  auto mf = max_family.find(v);
  if (mf != max_family.end()) return induced_weight(*this, v, mf->second);
  return WeightFunction();
}

std::vector<Place> DiagonalModel::places() const {
  std::vector<Place> out;
  for (const auto& [v, w] : weights)
    if (!w.is_zero()) out.push_back(v);
  for (const auto& [v, a] : max_family)
    if (!weights.count(v) || weights.at(v).is_zero())
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<long> DiagonalModel::weighted_primes() const {
  std::vector<long> out;
  for (const auto& v : places())
    if (!v.infinite) out.push_back(v.p);
  return out;
}

LogReal DiagonalModel::phi_total(const RatVec& u) const {
  LogReal s;
  for (const auto& v : places()) s += phi(v, u);
  return s;
}

void DiagonalModel::validate() const {
  if (dim < 1 || dim > 6) throw std::invalid_argument("model: dim must be in 1..6");
  if (degree < 0) throw std::invalid_argument("model: degree must be >= 0");
  for (const auto& [v, w] : weights) {
    if (!v.infinite && !is_prime(v.p))
      throw std::invalid_argument("model: place '" + v.str() + "' is not prime");
    for (const auto& pc : w.pieces())
      if (pc.gradient.size() > static_cast<size_t>(dim))
        throw std::invalid_argument("model: gradient length exceeds dim at place " + v.str());
  }
  for (const auto& [v, a] : max_family) {
    if (!v.infinite && !is_prime(v.p))
      throw std::invalid_argument("model: max_family place '" + v.str() + "' is not prime");
    if (a.size() != static_cast<size_t>(dim) + 1)
      throw std::invalid_argument("model: max_family vector at " + v.str() +
                                  " must have dim+1 entries");
    for (const auto& x : a)
      if (x.sign() <= 0)
        throw std::invalid_argument("model: max_family entries must be positive");
    // When explicit pieces coexist with the family, they must agree with the
    // induced weight at the polytope vertices.
    auto it = weights.find(v);
    if (it != weights.end() && !it->second.is_zero()) {
      WeightFunction ind = induced_weight(*this, v, a);
      for (int j = 0; j <= dim; ++j) {
        RatVec u(dim, Rat(0));
        if (j >= 1) u[j - 1] = degree;
        if ((it->second.eval(u) - ind.eval(u)).sign() != 0)
          throw std::invalid_argument(
              "model: explicit weight disagrees with max_family at vertex " + std::to_string(j) +
              " of place " + v.str());
      }
    }
  }
}

WeightFunction induced_weight(const DiagonalModel& model, const Place&, const RatVec& a) {
  // phi(u) = sum_j utilde_j(u) * log a_j  with utilde_0 = d - sum u_i.
  AffinePiece pc;
  LogReal la0 = LogReal::log_of(a[0]);
  pc.offset = la0 * Rat(model.degree);
  pc.gradient.resize(model.dim);
  for (int i = 1; i <= model.dim; ++i)
    pc.gradient[i - 1] = LogReal::log_of(a[i]) - la0;
  return WeightFunction({pc});
}

DiagonalModel twist_infinity(const DiagonalModel& m, const Rat& lambda) {
  if (lambda == 0) return m;
  DiagonalModel out = m;
  WeightFunction w = out.weight_at(Place::inf());
  out.weights[Place::inf()] = w.shifted(LogReal(lambda));
  // A twisted metric is no longer the plain max-family one; keep the family
  // only when untouched.
  if (lambda != 0) out.max_family.erase(Place::inf());
  return out;
}

DiagonalModel twist_finite(const DiagonalModel& m, long p, const Rat& lambda) {
  if (!is_prime(p)) throw std::invalid_argument("twist_finite: p must be prime");
  if (lambda == 0) return m;
  DiagonalModel out = m;
  Place v = Place::finite(p);
  WeightFunction w = out.weight_at(v);
  out.weights[v] = w.shifted(LogReal::log_prime(p) * lambda);
  if (lambda != 0) out.max_family.erase(v);
  return out;
}

DiagonalModel model_multiple(const DiagonalModel& m, int a) {
  if (a < 1) throw std::invalid_argument("model_multiple: a >= 1 required");
  DiagonalModel out = m;
  out.degree = m.degree * a;
  out.weights.clear();
  out.max_family.clear();
  for (const auto& v : m.places()) {
    // a * phi(u / a): gradients unchanged, offsets scale by a.
    std::vector<AffinePiece> pieces;
    WeightFunction w = m.weight_at(v);
    if (w.is_zero()) continue;
    for (const auto& pc : w.pieces()) {
      AffinePiece q = pc;
      q.offset = pc.offset * Rat(a);
      pieces.push_back(std::move(q));
    }
    out.weights[v] = WeightFunction(std::move(pieces));
  }
  // The pointwise metric of the a-th power is the a-th power of the metric;
  // the scaling family itself is unchanged (the degree factor carries it).
  out.max_family = m.max_family;
  return out;
}

DiagonalModel model_sum(const DiagonalModel& a, const DiagonalModel& b) {
  if (a.dim != b.dim) throw std::invalid_argument("model_sum: dimension mismatch");
  DiagonalModel out;
  out.dim = a.dim;
  out.degree = a.degree + b.degree;
  // min-of-affines add piece-wise: min_i A_i + min_j B_j = min_{ij} (A_i+B_j).
  std::vector<Place> vs;
  for (const auto& v : a.places()) vs.push_back(v);
  for (const auto& v : b.places())
    if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
  for (const auto& v : vs) {
    WeightFunction wa = a.weight_at(v), wb = b.weight_at(v);
    if (wa.is_zero() && wb.is_zero()) continue;
    if (wa.is_zero()) {
      out.weights[v] = wb;
      continue;
    }
    if (wb.is_zero()) {
      out.weights[v] = wa;
      continue;
    }
    std::vector<AffinePiece> pieces;
    for (const auto& pa : wa.pieces())
      for (const auto& pb : wb.pieces()) {
        AffinePiece q;
        q.offset = pa.offset + pb.offset;
        size_t g = std::max(pa.gradient.size(), pb.gradient.size());
        q.gradient.resize(g);
        for (size_t i = 0; i < g; ++i) {
          if (i < pa.gradient.size()) q.gradient[i] += pa.gradient[i];
          if (i < pb.gradient.size()) q.gradient[i] += pb.gradient[i];
        }
        pieces.push_back(std::move(q));
      }
    out.weights[v] = WeightFunction(std::move(pieces));
  }
  for (const auto& [v, fa] : a.max_family) {
    auto it = b.max_family.find(v);
    if (it == b.max_family.end()) continue;
    RatVec prod(fa.size());
    for (size_t i = 0; i < fa.size(); ++i) prod[i] = fa[i] * it->second[i];
    out.max_family[v] = prod;
  }
  return out;
}

std::vector<Expo> face_monomials(int n, int total_degree, const Face& face) {
  std::vector<Expo> out;
  Expo cur(n + 1, 0);
  std::function<void(size_t, int)> rec = [&](size_t pos, int left) {
    if (pos + 1 == face.size()) {
      cur[face[pos]] = left;
      out.push_back(cur);
      cur[face[pos]] = 0;
      return;
    }
    for (int t = 0; t <= left; ++t) {
      cur[face[pos]] = t;
      rec(pos + 1, left - t);
    }
    cur[face[pos]] = 0;
  };
  if (!face.empty()) rec(0, total_degree);
  return out;
}

RatVec monomial_point(const Expo& alpha, int m) {
  if (m <= 0) throw std::invalid_argument("monomial_point: positive level required");
  RatVec u(alpha.size() - 1);
  for (size_t i = 1; i < alpha.size(); ++i) u[i - 1] = Rat(alpha[i]) / m;
  return u;
}

}  // namespace adok
