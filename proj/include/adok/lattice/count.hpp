#pragma once

#include <adok/core/interval.hpp>
#include <adok/core/rational.hpp>

#include <optional>
#include <vector>

namespace adok {

// Weighted l1 lattice ball { k in Z^N : sum_i w_i |k_i| < 1 } (or <= 1).
// This is the shape every graded section set of a diagonal model reduces
// to, with one coordinate per monomial.
struct BallSpec {
  std::vector<Rat> weights;  // positive
  bool strict = true;

  bool operator==(const BallSpec& o) const {
    return strict == o.strict && weights == o.weights;
  }
};

struct CountLimits {
  unsigned long long enum_limit = 10000000;   // candidate box size for direct walk
  unsigned long long dp_capacity_limit = 1u << 22;  // scaled capacity bound
  unsigned long long dp_ops_limit = 200000000;      // N * capacity bound
};

struct CountResult {
  std::optional<Int> exact;
  Interval log_count;  // certified enclosure of log(count), count >= 1
  size_t active_rank = 0;
};

// Largest admissible |k_i| per coordinate (0 when the coordinate is dead).
Int ball_axis_bound(const Rat& w, bool strict);

CountResult count_weighted_l1(const BallSpec& ball, const CountLimits& limits = {});

// Explicit point enumeration (throws past the limit).  For oracles and
// small-m validation only.
std::vector<std::vector<long>> enumerate_ball(const BallSpec& ball,
                                              unsigned long long limit = 5000000);

}  // namespace adok
