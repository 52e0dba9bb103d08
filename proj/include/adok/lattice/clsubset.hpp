#pragma once

#include <adok/core/interval.hpp>
#include <adok/lattice/convex.hpp>
#include <adok/lattice/hnf.hpp>

#include <optional>
#include <set>
#include <vector>

namespace adok {

// Convex-lattice subset: lattice intersect convex body, elements cached
// when the instance is enumerable.
class CLSubset {
 public:
  CLSubset() = default;
  CLSubset(Lattice lattice, ConvexBody body);

  const Lattice& lattice() const { return lattice_; }
  const ConvexBody& body() const { return body_; }

  bool contains(const IntVec& v) const;
  // Enumerates lattice points of the body; throws if the candidate box
  // exceeds the limit.
  const std::vector<IntVec>& elements(size_t candidate_limit = 10000000) const;

  Int count(size_t candidate_limit = 10000000) const;

 private:
  Lattice lattice_;
  ConvexBody body_;
  mutable std::optional<std::vector<IntVec>> elements_;
};

// Smallest CL-subset containing S: Z-span of S intersected with conv(S).
CLSubset cl_hull(const std::vector<IntVec>& S);

// m-fold sumset {s_1 + ... + s_m}.
std::vector<IntVec> star_sum(unsigned m, const std::vector<IntVec>& S);

// (#(M cap Delta), #(M cap a*Delta)) by exact enumeration.
std::pair<Int, Int> dilate_count(const Lattice& M, const ConvexBody& delta, const Rat& a,
                                 size_t candidate_limit = 10000000);

// Independent membership oracle for the CL-hull: decides x in CL_M(S) by a
// verified averaged-sum witness (n_i, l with sum n_i s_i = l x) on the inside
// and a verified separating functional on the outside.
bool cl_hull_member_oracle(const std::vector<IntVec>& S, const IntVec& x);

}  // namespace adok
