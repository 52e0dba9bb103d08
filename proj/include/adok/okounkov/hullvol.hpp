#pragma once

#include <adok/lattice/vec.hpp>

#include <vector>

namespace adok {

// Exact volume of the convex hull of rational points, measured in the
// affine span of the points (dimensions 0..3).
Rat hull_volume(const std::vector<RatVec>& points);

}  // namespace adok
