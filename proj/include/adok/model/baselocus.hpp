#pragma once

#include <adok/model/sections.hpp>

#include <optional>

namespace adok {

// Union of coordinate subspaces of P^n, stored as the antichain of maximal
// faces it contains.  Base loci of monomial spans always have this shape.
struct CoordinateLocus {
  int n = 0;
  std::vector<Face> maximal;

  bool empty_locus() const { return maximal.empty(); }
  bool whole_space() const;
  bool contains_face(const Face& f) const;

  static CoordinateLocus from_predicate(int n, const std::function<bool(const Face&)>& in);
  bool operator==(const CoordinateLocus& o) const { return n == o.n && maximal == o.maximal; }
  std::string str() const;
};

// Common zero locus of the strictly small sections of level m (their span
// is the span of the strictly small monomials).
CoordinateLocus base_locus_level(const DiagonalModel& model, int m, bool strict = true);

struct StableLocusReport {
  CoordinateLocus locus;   // intersection over 1 <= m <= m_max
  bool stabilized = false; // unchanged over the upper half of the range
  int last_change = 0;     // largest m at which the intersection shrank
};

StableLocusReport stable_base_locus_ss(const DiagonalModel& model, int m_max,
                                       bool strict = true);

// B_+(O(d)) is empty for d >= 1, so the augmented locus equals the stable
// strictly-small locus; d <= 0 is rejected.
CoordinateLocus augmented_base_locus(const DiagonalModel& model, int m_max);

struct WAmpleReport {
  bool w_ample = false;
  std::optional<int> witness_m;
};

WAmpleReport is_w_ample(const DiagonalModel& model, int m_max);

struct GenerationReport {
  // generated[i] says whether the strictly small monomials of level i+1 span
  // the full graded piece.
  std::vector<bool> generated;
  std::optional<int> all_true_from;  // least m1 with generated true on [m1, m_max]
  bool bss_empty = false;
  // True when the dichotomy holds on the sampled range: empty stable locus
  // together with eventual generation, or a persistent witness both ways.
  bool consistent = true;
};

GenerationReport zhang_moriwaki_check(const DiagonalModel& model, int m_max);

}  // namespace adok
