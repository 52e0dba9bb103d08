#pragma once

#include <adok/core/interval.hpp>
#include <adok/core/rational.hpp>

#include <map>
#include <optional>
#include <string>

namespace adok {

// Exact element of the Q-vector space spanned by 1 and the logarithms of
// primes:  x = c0 + sum_p c_p * log(p)  with rational coefficients.
// The space is closed under addition and rational scaling, contains log of
// every positive rational, and admits an exact sign test: x = 0 iff all
// coefficients vanish, otherwise the sign is decided by evaluating with
// increasing MPFR precision.
class LogReal {
 public:
  LogReal() = default;
  LogReal(const Rat& c) : c0_(c) {}
  LogReal(long c) : c0_(c) {}

  static LogReal log_prime(long p);
  // log(q) for a positive rational q, expanded over its prime factorization.
  static LogReal log_of(const Rat& q);

  LogReal operator+(const LogReal& o) const;
  LogReal operator-(const LogReal& o) const;
  LogReal operator-() const;
  LogReal operator*(const Rat& s) const;
  LogReal& operator+=(const LogReal& o) { *this = *this + o; return *this; }
  LogReal& operator-=(const LogReal& o) { *this = *this - o; return *this; }

  bool operator==(const LogReal& o) const { return c0_ == o.c0_ && logs_ == o.logs_; }
  bool operator!=(const LogReal& o) const { return !(*this == o); }

  // Exact sign: -1, 0, or +1.
  int sign() const;
  bool is_zero() const { return c0_ == 0 && logs_.empty(); }
  bool is_rational() const { return logs_.empty(); }
  const Rat& rational_part() const { return c0_; }
  const std::map<long, Rat>& log_coeffs() const { return logs_; }

  // max { k in Z : k * log(p) <= *this }.
  Int floor_div_log(long p) const;

  Interval to_interval() const;
  double approx() const { return to_interval().mid(); }

  // Canonical text form, e.g. "3/2", "log(2)", "-1/2+2*log(3)".
  std::string str() const;
  static LogReal parse(const std::string& s);

  LogReal max0() const { return sign() > 0 ? *this : LogReal(); }

 private:
  Rat c0_;
  std::map<long, Rat> logs_;  // prime -> coefficient, no zero entries

  void prune();
  friend LogReal max(const LogReal& a, const LogReal& b);
  friend LogReal min(const LogReal& a, const LogReal& b);
};

inline LogReal max(const LogReal& a, const LogReal& b) { return (b - a).sign() >= 0 ? b : a; }
inline LogReal min(const LogReal& a, const LogReal& b) { return (b - a).sign() >= 0 ? a : b; }

// Certified enclosure of log(z) for a positive integer / rational.
Interval log_interval(const Int& z);
Interval log_interval_rat(const Rat& q);

}  // namespace adok
