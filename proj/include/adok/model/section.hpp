#pragma once

#include <adok/model/model.hpp>

#include <map>

namespace adok {

// Homogeneous element of degree m: sparse exponent -> rational coefficient.
struct Section {
  int degree = 0;
  std::map<Expo, Rat> coeff;

  static Section monomial(int degree, const Expo& alpha, const Rat& c) {
    Section s;
    s.degree = degree;
    if (c != 0) s.coeff[alpha] = c;
    return s;
  }

  bool zero() const { return coeff.empty(); }
  Section operator*(const Section& o) const;
  Section scaled(const Rat& c) const;
  Section operator+(const Section& o) const;
};

long val_p(const Rat& q, long p);  // p-adic valuation, q != 0

// Dyadic floor exponent at the infinite place and the per-prime floor
// exponents for a monomial at level m.
Int floor_exponent_inf(const DiagonalModel& model, const Expo& alpha, int m);
Int floor_exponent_p(const DiagonalModel& model, long p, const Expo& alpha, int m);

// Declared norms of the model family.
Rat norm_finite(const DiagonalModel& model, const Section& s, long p);
Rat norm_infinity(const DiagonalModel& model, const Section& s);

bool finitely_admissible(const DiagonalModel& model, const Section& s);
bool strictly_small(const DiagonalModel& model, const Section& s);

}  // namespace adok
