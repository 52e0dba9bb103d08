#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adok {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int num(const Rat& q) { return Int(boost::multiprecision::numerator(q)); }
inline Int den(const Rat& q) { return Int(boost::multiprecision::denominator(q)); }

// Floor division for possibly negative operands.
inline Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("floor_div: division by zero");
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int floor_rat(const Rat& q) { return floor_div(num(q), den(q)); }
inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

inline int sign(const Rat& q) { return q.sign(); }
inline int sign(const Int& z) { return z.sign(); }

// Canonical "p/q" form; integers render without the "/1".
std::string rat_to_string(const Rat& q);
Rat rat_from_string(const std::string& s);

Int pow_int(const Int& base, unsigned long e);

// Prime factorization by trial division (+ gmp primality for the cofactor).
// Intended for human-scale model data, not cryptographic sizes.
std::vector<std::pair<long, long>> factor(Int n);

bool is_prime(long p);

}  // namespace adok
