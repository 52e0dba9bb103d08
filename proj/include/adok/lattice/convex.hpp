#pragma once

#include <adok/lattice/vec.hpp>

#include <optional>
#include <vector>

namespace adok {

// Half-space normal.x <= offset (strict when flagged).
struct Facet {
  RatVec normal;
  Rat offset;
  bool strict = false;
};

// Bounded rational polytope, V-representation first; the H-representation
// (facets of the hull inside its affine span, plus span equations) is
// computed on demand by exact dual description.  Affine dimension above 4
// is rejected; section-space counting never goes through this path.
class ConvexBody {
 public:
  ConvexBody() = default;

  static ConvexBody from_points(std::vector<RatVec> pts);

  const std::vector<RatVec>& generators() const { return gens_; }
  size_t ambient_dim() const { return gens_.empty() ? 0 : gens_.front().size(); }
  int affine_dim() const;

  bool contains(const RatVec& x) const;
  bool is_symmetric() const;

  // Scales about the origin.
  ConvexBody dilate(const Rat& a) const;

  // Per-coordinate bounding box over the generators.
  std::pair<RatVec, RatVec> bounding_box() const;

  const std::vector<Facet>& facets() const;           // inequalities in affine coords
  const std::vector<RatVec>& hull_equations() const;  // u.(x - p0) = 0 functionals

 private:
  void ensure_hrep() const;

  std::vector<RatVec> gens_;
  mutable bool hrep_done_ = false;
  mutable std::vector<Facet> facets_;        // over affine coordinates
  mutable std::vector<RatVec> equations_;    // ambient functionals annihilating the span
  mutable std::vector<RatVec> affine_basis_; // rows spanning the direction space
  mutable RatVec base_point_;
  mutable int affine_dim_ = -1;

  std::optional<RatVec> affine_coords(const RatVec& x) const;
};

// Exact Gaussian elimination helpers over Q.
int row_reduce(std::vector<RatVec>& rows);                       // returns rank
std::vector<RatVec> nullspace(const std::vector<RatVec>& rows, size_t cols);
std::optional<RatVec> solve_linear(std::vector<RatVec> cols_as_rows, const RatVec& rhs);

}  // namespace adok
