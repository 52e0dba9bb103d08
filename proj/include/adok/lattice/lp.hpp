#pragma once

#include <adok/lattice/vec.hpp>

#include <vector>

namespace adok {

// Dense exact-rational simplex, two phases, Bland's rule.
// Variables are nonnegative; rows are a.x (<=|==|>=) b.
enum class Rel { LE, EQ, GE };

struct LPRow {
  RatVec a;
  Rel rel;
  Rat b;
};

enum class LPStatus { OPTIMAL, INFEASIBLE, UNBOUNDED };

struct LPResult {
  LPStatus status;
  Rat value;
  RatVec x;
};

LPResult lp_maximize(const RatVec& objective, const std::vector<LPRow>& rows);

// Convex-hull membership of x in conv(points), decided exactly.  On
// membership the certificate is a rational convex combination; otherwise a
// separating functional h with h.p <= c for all points and h.x > c.
struct ConvMembership {
  bool inside;
  RatVec lambda;      // convex weights, aligned with points (inside)
  RatVec separator_h; // (outside)
  Rat separator_c;
};

ConvMembership conv_membership(const std::vector<RatVec>& points, const RatVec& x);

}  // namespace adok
