#include <adok/model/section.hpp>

#include <stdexcept>

namespace adok {

Section Section::operator*(const Section& o) const {
  Section out;
  out.degree = degree + o.degree;
  for (const auto& [a, c] : coeff)
    for (const auto& [b, d] : o.coeff) {
      Expo s(a.size());
      for (size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
      out.coeff[s] += c * d;
    }
  for (auto it = out.coeff.begin(); it != out.coeff.end();)
    it = it->second == 0 ? out.coeff.erase(it) : std::next(it);
  return out;
}

Section Section::scaled(const Rat& c) const {
  Section out;
  out.degree = degree;
  if (c == 0) return out;
  for (const auto& [a, v] : coeff) out.coeff[a] = v * c;
  return out;
}

Section Section::operator+(const Section& o) const {
  if (degree != o.degree && !zero() && !o.zero())
    throw std::invalid_argument("section sum: degree mismatch");
  Section out = *this;
  out.degree = zero() ? o.degree : degree;
  for (const auto& [a, v] : o.coeff) {
    out.coeff[a] += v;
    if (out.coeff[a] == 0) out.coeff.erase(a);
  }
  return out;
}

long val_p(const Rat& q, long p) {
  if (q == 0) throw std::domain_error("val_p of zero");
  long v = 0;
  Int n = num(q), d = den(q);
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  while (d % p == 0) {
    d /= p;
    --v;
  }
  return v;
}

Int floor_exponent_inf(const DiagonalModel& model, const Expo& alpha, int m) {
  if (m == 0) return 0;
  LogReal v = model.phi(Place::inf(), monomial_point(alpha, m)) * Rat(m);
  return v.floor_div_log(2);
}

Int floor_exponent_p(const DiagonalModel& model, long p, const Expo& alpha, int m) {
  if (m == 0) return 0;
  LogReal v = model.phi(Place::finite(p), monomial_point(alpha, m)) * Rat(m);
  return v.floor_div_log(p);
}

Rat norm_finite(const DiagonalModel& model, const Section& s, long p) {
  Rat best = 0;
  for (const auto& [alpha, c] : s.coeff) {
    if (static_cast<int>(alpha.size()) != model.dim + 1)
      throw std::invalid_argument("norm: exponent arity mismatch");
    Int e = floor_exponent_p(model, p, alpha, s.degree);
    long vc = val_p(c, p);
    // |c|_p * p^{-e} = p^{-(vc + e)}.
    Int k = Int(vc) + e;
    Rat term = k >= 0 ? Rat(1) / Rat(pow_int(Int(p), k.convert_to<unsigned long>()))
                      : Rat(pow_int(Int(p), (-k).convert_to<unsigned long>()));
    if (term > best) best = term;
  }
  return best;
}

Rat norm_infinity(const DiagonalModel& model, const Section& s) {
  Rat total = 0;
  for (const auto& [alpha, c] : s.coeff) {
    Int v = floor_exponent_inf(model, alpha, s.degree);
    Rat w = v >= 0 ? Rat(1) / Rat(pow_int(Int(2), v.convert_to<unsigned long>()))
                   : Rat(pow_int(Int(2), (-v).convert_to<unsigned long>()));
    total += abs(c) * w;
  }
  return total;
}

bool finitely_admissible(const DiagonalModel& model, const Section& s) {
  if (s.zero()) return true;
  // Only the model's weighted primes and the primes in the coefficients can
  // violate admissibility.
  std::vector<long> ps = model.weighted_primes();
  for (const auto& [alpha, c] : s.coeff) {
    for (const auto& [p, e] : factor(den(c)))
      if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
  }
  for (long p : ps)
    if (norm_finite(model, s, p) > 1) return false;
  return true;
}

bool strictly_small(const DiagonalModel& model, const Section& s) {
  if (s.zero()) return true;
  return finitely_admissible(model, s) && norm_infinity(model, s) < 1;
}

}  // namespace adok
