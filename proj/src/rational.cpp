#include <adok/core/rational.hpp>

#include <gmp.h>

namespace adok {

std::string rat_to_string(const Rat& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(Int(s));
    }
    Int n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Rat(n) / Rat(d);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational: '" + s + "'");
  }
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.backend().data(), base.backend().data(), e);
  return r;
}

bool is_prime(long p) {
  if (p < 2) return false;
  Int z(p);
  return mpz_probab_prime_p(z.backend().data(), 32) != 0;
}

std::vector<std::pair<long, long>> factor(Int n) {
  if (n <= 0) throw std::domain_error("factor: positive input required");
  std::vector<std::pair<long, long>> out;
  auto take = [&](long p) {
    long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  };
  take(2);
  for (long p = 3; p <= 1000000 && Int(p) * p <= n; p += 2) take(p);
  if (n > 1) {
    if (mpz_probab_prime_p(n.backend().data(), 32) == 0)
      throw std::domain_error("factor: composite cofactor too large: " + n.str());
    if (n > Int(std::numeric_limits<long>::max()))
      throw std::domain_error("factor: prime factor exceeds long range");
    out.emplace_back(n.convert_to<long>(), 1);
  }
  return out;
}

}  // namespace adok
