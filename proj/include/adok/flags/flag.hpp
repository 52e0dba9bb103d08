#pragma once

#include <adok/flags/fppoly.hpp>
#include <adok/model/sections.hpp>

#include <optional>
#include <set>

namespace adok {

// Translated coordinate flag on the standard integral model of a face:
// fiber over p, then the chart-local hyperplanes y_{order[0]} = c_0, ... in
// coordinates re-centered at `center`.
struct GoodFlag {
  long p = 2;
  int chart = 0;                // position inside the face (index into face)
  std::vector<long> center;    // dim_face entries in [0, p)
  std::vector<int> order;      // permutation of 0..dim_face-1
  Face face;

  int face_dim() const { return static_cast<int>(face.size()) - 1; }
  bool centered_at_origin() const {
    for (long c : center)
      if (c) return false;
    return true;
  }
};

// Searches charts and centers in lexicographic order for a center where the
// avoid-section does not vanish mod p.  Returns nothing when p divides too
// much (every candidate center lies on the section's zero set).
std::optional<GoodFlag> find_good_flag(const DiagonalModel& model, const Face& face,
                                       const Section* avoid, long p);

using WVec = std::vector<Int>;

// Chart-local reduction of a face-supported section: p-content, then the
// dehomogenized polynomial mod p.
struct FlagReduction {
  Int content;
  FpPoly poly;
};

FlagReduction reduce_at_flag(const Section& s, const GoodFlag& flag);

// (w_0, ..., w_dimY): p-content followed by iterated vanishing orders along
// the flag.
WVec valuation_vector(const Section& s, const GoodFlag& flag);

struct ImageResult {
  std::set<WVec> image;
  bool exact = true;
  std::string note;
};

// Valuation image of the nonzero strictly small sections of one level.
// Centers at the origin admit an exact monomial formula; translated centers
// fall back to single- and two-term representatives (a certified lower
// approximation) unless brute force is feasible.
ImageResult valuation_image(const GradedSections& gs, const GoodFlag& flag,
                            unsigned long long brute_limit = 0);

// Full enumeration (throws when the ball is too large).
ImageResult valuation_image_bruteforce(const GradedSections& gs, const GoodFlag& flag,
                                       unsigned long long limit = 5000000);

}  // namespace adok
