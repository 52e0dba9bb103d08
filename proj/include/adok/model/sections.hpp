#pragma once

#include <adok/lattice/clsubset.hpp>
#include <adok/lattice/count.hpp>
#include <adok/model/section.hpp>

#include <vector>

namespace adok {

// Per-monomial admissibility data at one level: a section sum_a c_a x^a is
// finitely admissible iff every c_a lies in unit_a * Z, and (strictly)
// small iff additionally sum |c_a| * 2^{-vinf_a} < 1 (<= 1).  In the
// integer coordinates k_a = c_a / unit_a the graded set is the weighted
// l1 ball with the listed weights.
struct MonomialInfo {
  Expo alpha;
  Int vinf;
  std::map<long, Int> ep;
  Rat unit;    // prod_p p^{-ep}
  Rat weight;  // unit * 2^{-vinf}
};

struct GradedSections {
  int m = 0;
  Face face;
  bool strict = true;
  std::vector<MonomialInfo> mono;

  BallSpec ball() const {
    BallSpec b;
    b.strict = strict;
    b.weights.reserve(mono.size());
    for (const auto& mi : mono) b.weights.push_back(mi.weight);
    return b;
  }

  // Monomials admitting a nonzero coefficient (the strictly small ones).
  std::vector<size_t> small_monomials() const;

  Section section_from(const std::vector<long>& k) const;

  // Explicit CL-subset over the integer coordinates; small levels only.
  CLSubset to_clsubset(unsigned long long limit = 2000000) const;
};

// Graded piece of the model restricted to a face (face == full space gives
// the unrestricted sections); the restriction is coefficient projection.
GradedSections graded_sections(const DiagonalModel& model, int m, const Face& face,
                               bool strict = true);

CountResult count_sections(const DiagonalModel& model, int m, const Face& face,
                           bool strict = true, const CountLimits& limits = {});

}  // namespace adok
