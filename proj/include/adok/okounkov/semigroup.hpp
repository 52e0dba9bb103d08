#pragma once

#include <adok/flags/flag.hpp>
#include <adok/lattice/hnf.hpp>

#include <map>

namespace adok {

// Sampled valuation semigroup of a restricted graded series: the pairs
// (m, w(s)) over nonzero strictly small restricted sections, level by level.
struct SemigroupSample {
  Face face;
  GoodFlag flag;
  int m_max = 0;
  std::map<int, std::set<WVec>> levels;  // nonempty levels only
  std::vector<int> nhat;                 // the nonempty level indices
  bool image_exact = true;

  Lattice span;      // Z-span of the (m, w) vectors in Z^{dimY+2}
  Lattice vertical;  // slice of the span with first coordinate zero
  bool generates = false;
  Rat fundamental_volume = 0;  // |S|: covolume of the vertical slice, 0 if rank-deficient

  int level_count(int m) const {
    auto it = levels.find(m);
    return it == levels.end() ? 0 : static_cast<int>(it->second.size());
  }
};

SemigroupSample build_semigroup(const DiagonalModel& model, const Face& face,
                                const GoodFlag& flag, int m_max);

// First prime >= start that is unweighted and admits a good flag avoiding a
// nonzero strictly small restricted section (when one exists below m_probe).
std::optional<GoodFlag> default_flag(const DiagonalModel& model, const Face& face,
                                     long start = 11, int m_probe = 8);

struct KappaResult {
  bool defined = false;  // false encodes kappa = -infinity
  int value = -1;
  std::optional<int> rank_route;  // rank of the sampled span minus 2
  bool agree = true;
};

KappaResult kappa_hat(const DiagonalModel& model, const Face& face, int m_max);

}  // namespace adok
