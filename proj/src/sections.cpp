#include <adok/model/sections.hpp>

#include <stdexcept>

namespace adok {

namespace {

Rat pow2_neg(const Int& v) {
  return v >= 0 ? Rat(1) / Rat(pow_int(Int(2), v.convert_to<unsigned long>()))
                : Rat(pow_int(Int(2), (-v).convert_to<unsigned long>()));
}

Rat powp_neg(long p, const Int& e) {
  return e >= 0 ? Rat(1) / Rat(pow_int(Int(p), e.convert_to<unsigned long>()))
                : Rat(pow_int(Int(p), (-e).convert_to<unsigned long>()));
}

}  // namespace

std::vector<size_t> GradedSections::small_monomials() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < mono.size(); ++i) {
    int cmp = Rat(mono[i].weight - 1).sign();
    if (strict ? cmp < 0 : cmp <= 0) out.push_back(i);
  }
  return out;
}

Section GradedSections::section_from(const std::vector<long>& k) const {
  if (k.size() != mono.size()) throw std::invalid_argument("section_from: arity mismatch");
  Section s;
  s.degree = m;
  for (size_t i = 0; i < k.size(); ++i)
    if (k[i] != 0) s.coeff[mono[i].alpha] = mono[i].unit * k[i];
  return s;
}

CLSubset GradedSections::to_clsubset(unsigned long long limit) const {
  auto pts = enumerate_ball(ball(), limit);
  std::vector<IntVec> vecs;
  vecs.reserve(pts.size());
  for (const auto& p : pts) {
    IntVec v(p.size());
    for (size_t i = 0; i < p.size(); ++i) v[i] = p[i];
    vecs.push_back(std::move(v));
  }
  return cl_hull(vecs);
}

GradedSections graded_sections(const DiagonalModel& model, int m, const Face& face,
                               bool strict) {
  if (m < 0) throw std::invalid_argument("graded_sections: m >= 0 required");
  GradedSections out;
  out.m = m;
  out.face = face;
  out.strict = strict;
  if (m == 0) {
    // Degree zero: single constant monomial of weight 1 (only 0 is strictly
    // small; the unit survives the non-strict variant).
    MonomialInfo mi;
    mi.alpha = Expo(model.dim + 1, 0);
    mi.vinf = 0;
    mi.unit = 1;
    mi.weight = 1;
    out.mono.push_back(std::move(mi));
    return out;
  }
  auto primes = model.weighted_primes();
  for (auto& alpha : face_monomials(model.dim, m * model.degree, face)) {
    MonomialInfo mi;
    mi.vinf = floor_exponent_inf(model, alpha, m);
    mi.unit = 1;
    for (long p : primes) {
      Int e = floor_exponent_p(model, p, alpha, m);
      if (e != 0) mi.ep[p] = e;
      mi.unit *= powp_neg(p, e);
    }
    mi.weight = mi.unit * pow2_neg(mi.vinf);
    mi.alpha = std::move(alpha);
    out.mono.push_back(std::move(mi));
  }
  return out;
}

CountResult count_sections(const DiagonalModel& model, int m, const Face& face, bool strict,
                           const CountLimits& limits) {
  return count_weighted_l1(graded_sections(model, m, face, strict).ball(), limits);
}

}  // namespace adok
