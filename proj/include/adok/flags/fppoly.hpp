#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace adok {

// Sparse multivariate polynomial over F_p (p < 2^31).
class FpPoly {
 public:
  using Key = std::vector<int>;

  FpPoly() = default;
  FpPoly(long p, size_t nvars) : p_(p), nvars_(nvars) {}

  long p() const { return p_; }
  size_t nvars() const { return nvars_; }
  bool zero() const { return terms_.empty(); }
  const std::map<Key, long>& terms() const { return terms_; }

  void add_term(const Key& e, long c) {
    c %= p_;
    if (c < 0) c += p_;
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(e, 0);
    it->second = (it->second + c) % p_;
    if (it->second == 0) terms_.erase(it);
  }

  // Substitute var -> var + t.
  FpPoly translate(size_t var, long t) const;
  // Order of vanishing in one variable (min exponent); zero polynomial is
  // rejected by callers.
  int min_exponent(size_t var) const;
  // Divide by var^e and then set var = 0 (keeps the terms with exponent e,
  // dropping the variable).
  FpPoly extract_and_restrict(size_t var, int e) const;
  long eval(const std::vector<long>& point) const;

 private:
  long p_ = 2;
  size_t nvars_ = 0;
  std::map<Key, long> terms_;
};

}  // namespace adok
