#include <adok/core/rational.hpp>
#include <adok/flags/fppoly.hpp>

namespace adok {

namespace {

long powmod(long b, long e, long p) {
  long r = 1 % p;
  b %= p;
  if (b < 0) b += p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

}  // namespace

FpPoly FpPoly::translate(size_t var, long t) const {
  t %= p_;
  if (t < 0) t += p_;
  if (t == 0) return *this;
  FpPoly out(p_, nvars_);
  for (const auto& [e, c] : terms_) {
    int d = e[var];
    // (x + t)^d expanded with an exact big-integer binomial ladder, reduced
    // mod p per term.
    Int coef = 1;  // C(d, j)
    long tpow = 1;
    for (int j = 0; j <= d; ++j) {
      Key k = e;
      k[var] = d - j;
      long cj = Int(coef % p_).convert_to<long>();
      out.add_term(k, c * (cj * tpow % p_) % p_);
      if (j < d) {
        coef = coef * (d - j) / (j + 1);
        tpow = tpow * t % p_;
      }
    }
  }
  return out;
}

int FpPoly::min_exponent(size_t var) const {
  if (terms_.empty()) throw std::logic_error("min_exponent of zero polynomial");
  int best = -1;
  for (const auto& [e, c] : terms_)
    if (best < 0 || e[var] < best) best = e[var];
  return best;
}

FpPoly FpPoly::extract_and_restrict(size_t var, int e) const {
  FpPoly out(p_, nvars_);
  for (const auto& [k, c] : terms_) {
    if (k[var] != e) continue;
    Key r = k;
    r[var] = 0;
    out.add_term(r, c);
  }
  return out;
}

long FpPoly::eval(const std::vector<long>& point) const {
  long total = 0;
  for (const auto& [e, c] : terms_) {
    long t = c % p_;
    for (size_t i = 0; i < nvars_; ++i)
      if (e[i]) t = t * powmod(point[i], e[i], p_) % p_;
    total = (total + t) % p_;
  }
  return total;
}

}  // namespace adok
