#pragma once

#include <adok/core/logreal.hpp>
#include <adok/lattice/vec.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace adok {

struct Place {
  bool infinite = true;
  long p = 0;

  static Place inf() { return {true, 0}; }
  static Place finite(long prime) { return {false, prime}; }

  bool operator<(const Place& o) const {
    if (infinite != o.infinite) return infinite;  // infinite place sorts first
    return p < o.p;
  }
  bool operator==(const Place& o) const { return infinite == o.infinite && p == o.p; }
  std::string str() const { return infinite ? "inf" : std::to_string(p); }
};

struct AffinePiece {
  std::vector<LogReal> gradient;  // length = dim
  LogReal offset;

  LogReal eval(const RatVec& u) const {
    LogReal v = offset;
    for (size_t i = 0; i < gradient.size(); ++i) v += gradient[i] * u[i];
    return v;
  }
};

// Concave piecewise-linear function on the moment polytope, stored as a
// min of affine pieces.  An empty piece list is the zero weight.
class WeightFunction {
 public:
  WeightFunction() = default;
  explicit WeightFunction(std::vector<AffinePiece> pieces) : pieces_(std::move(pieces)) {}
  static WeightFunction constant(LogReal c) {
    return WeightFunction({AffinePiece{{}, std::move(c)}});
  }

  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  bool is_zero() const { return pieces_.empty(); }

  LogReal eval(const RatVec& u) const {
    if (pieces_.empty()) return LogReal();
    LogReal best = eval_piece(pieces_.front(), u);
    for (size_t i = 1; i < pieces_.size(); ++i) best = min(best, eval_piece(pieces_[i], u));
    return best;
  }

  // Adds a constant to the weight.
  WeightFunction shifted(const LogReal& c) const {
    if (pieces_.empty()) return constant(c);
    std::vector<AffinePiece> out = pieces_;
    for (auto& pc : out) pc.offset += c;
    return WeightFunction(std::move(out));
  }

 private:
  static LogReal eval_piece(const AffinePiece& pc, const RatVec& u) {
    LogReal v = pc.offset;
    for (size_t i = 0; i < pc.gradient.size() && i < u.size(); ++i)
      if (!pc.gradient[i].is_zero()) v += pc.gradient[i] * u[i];
    return v;
  }

  std::vector<AffinePiece> pieces_;
};

// Coordinate face of P^n: sorted homogeneous coordinate indices.
using Face = std::vector<int>;

inline Face full_face(int n) {
  Face f(n + 1);
  for (int i = 0; i <= n; ++i) f[i] = i;
  return f;
}

std::vector<Face> all_faces(int n);  // every nonempty subset of {0..n}
std::string face_str(const Face& f);

// Homogeneous monomial exponent vector of length n+1 (entries sum to m*d).
using Expo = std::vector<int>;

// An adelically normed graded monomial series on P^n over Q: the line
// bundle O(degree), one concave PL weight per place, and optionally the
// pointwise "max" metric family used for heights and nef tests.
struct DiagonalModel {
  int dim = 1;
  int degree = 1;
  std::map<Place, WeightFunction> weights;
  std::map<Place, RatVec> max_family;  // place -> (a_0 .. a_n), positive

  // Weight actually in force at a place; falls back to the weight induced
  // by the max family when no explicit pieces were given.
  WeightFunction weight_at(const Place& v) const;

  std::vector<Place> places() const;          // places with nonzero data
  std::vector<long> weighted_primes() const;  // finite places among them

  LogReal phi(const Place& v, const RatVec& u) const { return weight_at(v).eval(u); }
  LogReal phi_total(const RatVec& u) const;

  void validate() const;  // throws std::invalid_argument with diagnostics
};

// Weight function a max-family vector induces at one place.
WeightFunction induced_weight(const DiagonalModel& model, const Place& v, const RatVec& a);

DiagonalModel twist_infinity(const DiagonalModel& m, const Rat& lambda);
DiagonalModel twist_finite(const DiagonalModel& m, long p, const Rat& lambda);
// a-fold multiple: degree a*d with weight a*phi(u/a).
DiagonalModel model_multiple(const DiagonalModel& m, int a);
// Place-wise weight sum; degrees add.
DiagonalModel model_sum(const DiagonalModel& a, const DiagonalModel& b);

// Monomials of H^0(O(m*d)) supported on a face, in lexicographic order.
std::vector<Expo> face_monomials(int n, int total_degree, const Face& face);

// u-coordinates (affine moment-polytope point) of a monomial at level m.
RatVec monomial_point(const Expo& alpha, int m);

}  // namespace adok
