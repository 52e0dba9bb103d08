#pragma once

#include <adok/model/sections.hpp>

#include <optional>

namespace adok {

// Projective rational point (x_0 : ... : x_n), not all zero.
using ProjPoint = RatVec;

// Height of a rational point under the pointwise max-family metric; exact.
LogReal height(const DiagonalModel& model, const ProjPoint& x);

enum class NefStatus { nef, not_nef, undetermined };

struct NefReport {
  NefStatus status = NefStatus::undetermined;
  std::optional<ProjPoint> witness;  // point of negative height, if any
  std::string note;
};

// Structural concavity always holds (weights are min-of-affines); with a
// max family the report checks heights at the torus-fixed points and at a
// rational sample grid, staying conservative otherwise.
NefReport is_nef(const DiagonalModel& model, int grid_resolution = 4);

struct IntegralResult {
  Interval value;                 // certified enclosure
  std::optional<LogReal> exact;   // present when every cell closed in exact form
};

// Lattice-normalized integral of the positive part of the total weight over
// the face polytope.
IntegralResult integral_phi_plus(const DiagonalModel& model, const Face& face,
                                 double tol = 1e-9);

// Closed-form degree of a nef diagonal model along a face:
// (dim_face + 1)! * integral of Phi_+ over the face polytope.
IntegralResult adeg_diagonal_nef(const DiagonalModel& model, const Face& face,
                                 bool allow_undetermined = false);

struct BoundResult {
  Interval value;
  std::optional<LogReal> exact;
};

// Valid upper bound for the nef-infimum invariant of the restricted model:
// (dim_face + 1) * sum_v max_{P_face}(phi_v)_+ .
BoundResult delta_upper(const DiagonalModel& model, const Face& face);

struct VerticalDegreeResult {
  IntegralResult lhs;  // vertical twist degree via multilinearity of adeg
  LogReal rhs;         // vol(A|_face) * log p
  bool equal_exact = false;
  bool consistent = false;  // rhs inside the lhs enclosure
};

VerticalDegreeResult vertical_degree_identity(const DiagonalModel& model, const Face& face,
                                              long p, bool allow_undetermined = false);

// Exact maximum of a weight function over the face polytope when available
// (single affine piece); otherwise a certified upper bound.
BoundResult weight_max_plus(const DiagonalModel& model, const Place& v, const Face& face);

}  // namespace adok
