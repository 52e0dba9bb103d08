#include <adok/lattice/hnf.hpp>

#include <stdexcept>

namespace adok {

std::vector<IntVec> hermite_normal_form(std::vector<IntVec> rows, size_t cols) {
  for (const auto& r : rows)
    if (r.size() != cols) throw std::invalid_argument("hnf: ragged input");
  size_t pivot_row = 0;
  std::vector<size_t> pivot_cols;
  for (size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    // Reduce all entries of column c below pivot_row to a single gcd entry.
    size_t nz = pivot_row;
    while (nz < rows.size() && rows[nz][c] == 0) ++nz;
    if (nz == rows.size()) continue;
    std::swap(rows[pivot_row], rows[nz]);
    for (size_t i = pivot_row + 1; i < rows.size(); ++i) {
      // Euclid on (rows[pivot_row][c], rows[i][c]).
      while (rows[i][c] != 0) {
        Int q = floor_div(rows[pivot_row][c], rows[i][c]);
        for (size_t j = 0; j < cols; ++j) rows[pivot_row][j] -= q * rows[i][j];
        std::swap(rows[pivot_row], rows[i]);
      }
    }
    if (rows[pivot_row][c] < 0)
      for (size_t j = 0; j < cols; ++j) rows[pivot_row][j] = -rows[pivot_row][j];
    // Reduce the entries above the pivot into [0, pivot).
    for (size_t i = 0; i < pivot_row; ++i) {
      Int q = floor_div(rows[i][c], rows[pivot_row][c]);
      if (q != 0)
        for (size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[pivot_row][j];
    }
    pivot_cols.push_back(c);
    ++pivot_row;
  }
  rows.resize(pivot_row);
  return rows;
}

Lattice Lattice::span(size_t ambient, std::vector<IntVec> gens) {
  Lattice L(ambient);
  L.basis_ = hermite_normal_form(std::move(gens), ambient);
  return L;
}

Lattice Lattice::full(size_t ambient) {
  Lattice L(ambient);
  for (size_t i = 0; i < ambient; ++i) {
    IntVec e(ambient, Int(0));
    e[i] = 1;
    L.basis_.push_back(e);
  }
  return L;
}

std::optional<IntVec> Lattice::coordinates(const IntVec& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("lattice: rank mismatch");
  IntVec w = v;
  IntVec coef(basis_.size(), Int(0));
  for (size_t i = 0; i < basis_.size(); ++i) {
    size_t c = 0;
    while (c < ambient_ && basis_[i][c] == 0) ++c;
    if (c == ambient_) continue;
    if (w[c] % basis_[i][c] != 0) return std::nullopt;
    Int q = w[c] / basis_[i][c];
    coef[i] = q;
    if (q != 0)
      for (size_t j = 0; j < ambient_; ++j) w[j] -= q * basis_[i][j];
  }
  for (const auto& x : w)
    if (x != 0) return std::nullopt;
  return coef;
}

bool Lattice::contains(const IntVec& v) const { return coordinates(v).has_value(); }

Int Lattice::det_abs() const {
  if (rank() != ambient_) throw std::domain_error("det_abs: lattice not full rank");
  Int d = 1;
  for (size_t i = 0; i < basis_.size(); ++i) {
    size_t c = 0;
    while (c < ambient_ && basis_[i][c] == 0) ++c;
    d *= basis_[i][c];
  }
  return d < 0 ? Int(-d) : d;
}

}  // namespace adok
