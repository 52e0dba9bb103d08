#pragma once

#include <adok/lattice/vec.hpp>

#include <optional>
#include <vector>

namespace adok {

// Sublattice of Z^r given by a row-style Hermite normal form basis: rows
// are echelon with positive pivots and reduced entries above each pivot,
// so the representation is canonical and equality is row-wise comparison.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(size_t ambient) : ambient_(ambient) {}

  size_t ambient_rank() const { return ambient_; }
  size_t rank() const { return basis_.size(); }
  const std::vector<IntVec>& basis() const { return basis_; }

  bool contains(const IntVec& v) const;
  // Coordinates of v in the basis, if v belongs to the lattice.
  std::optional<IntVec> coordinates(const IntVec& v) const;

  // |det| of the basis when the lattice has full rank in its ambient space.
  Int det_abs() const;

  bool operator==(const Lattice& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }

  static Lattice span(size_t ambient, std::vector<IntVec> gens);
  static Lattice full(size_t ambient);

 private:
  size_t ambient_ = 0;
  std::vector<IntVec> basis_;
};

// Row-style HNF of an integer matrix; returns the nonzero rows.
std::vector<IntVec> hermite_normal_form(std::vector<IntVec> rows, size_t cols);

inline Lattice lattice_span(const std::vector<IntVec>& vecs) {
  if (vecs.empty()) return Lattice(0);
  return Lattice::span(vecs.front().size(), vecs);
}

}  // namespace adok
