#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace adok {

// Closed interval [lo, hi] with outward rounding after every operation.
// One extra ulp per endpoint per op keeps the enclosure valid without
// touching the FPU rounding mode.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static double down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
  }
  static double up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
  }

  static Interval exact(double x) { return {x, x}; }
  static Interval hull(double a, double b) { return {std::min(a, b), std::max(a, b)}; }

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }

  Interval operator+(const Interval& o) const { return {down(lo + o.lo), up(hi + o.hi)}; }
  Interval operator-(const Interval& o) const { return {down(lo - o.hi), up(hi - o.lo)}; }
  Interval operator-() const { return {-hi, -lo}; }
  Interval& operator+=(const Interval& o) { *this = *this + o; return *this; }
  Interval& operator-=(const Interval& o) { *this = *this - o; return *this; }

  Interval operator*(const Interval& o) const {
    double a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return {down(std::min(std::min(a, b), std::min(c, d))),
            up(std::max(std::max(a, b), std::max(c, d)))};
  }

  Interval scale(double s) const {
    if (s >= 0) return {down(lo * s), up(hi * s)};
    return {down(hi * s), up(lo * s)};
  }

  Interval max0() const { return {std::max(lo, 0.0), std::max(hi, 0.0)}; }

  bool certainly_le(double x) const { return hi <= x; }
  bool certainly_ge(double x) const { return lo >= x; }
};

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) {
  return os << "[" << iv.lo << ", " << iv.hi << "]";
}

}  // namespace adok
