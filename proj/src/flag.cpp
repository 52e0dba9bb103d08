#include <adok/flags/flag.hpp>

#include <algorithm>
#include <functional>

namespace adok {

namespace {

long inv_mod(long a, long p) {
  long r = 1, b = a % p, e = p - 2;
  if (b < 0) b += p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

long rat_mod_p(const Rat& q, long p) {
  Int n = num(q), d = den(q);
  if (d % p == 0) throw std::domain_error("rat_mod_p: p divides denominator");
  long nn = Int(n % p).convert_to<long>();
  if (nn < 0) nn += p;
  long dd = Int(d % p).convert_to<long>();
  if (dd < 0) dd += p;
  return nn * inv_mod(dd, p) % p;
}

void check_face_support(const Section& s, const Face& face) {
  for (const auto& [alpha, c] : s.coeff)
    for (size_t j = 0; j < alpha.size(); ++j)
      if (alpha[j] > 0 && !std::binary_search(face.begin(), face.end(), static_cast<int>(j)))
        throw std::invalid_argument("section not supported on the flag's face");
}

}  // namespace

FlagReduction reduce_at_flag(const Section& s, const GoodFlag& flag) {
  if (s.zero()) throw std::invalid_argument("valuation of the zero section");
  check_face_support(s, flag.face);
  long content = 0;
  bool first = true;
  for (const auto& [alpha, c] : s.coeff) {
    long v = val_p(c, flag.p);
    content = first ? v : std::min(content, v);
    first = false;
  }
  const int k = flag.face_dim();
  FpPoly poly(flag.p, k);
  Rat scale = content >= 0
                  ? Rat(1) / Rat(pow_int(Int(flag.p), static_cast<unsigned long>(content)))
                  : Rat(pow_int(Int(flag.p), static_cast<unsigned long>(-content)));
  for (const auto& [alpha, c] : s.coeff) {
    FpPoly::Key key(k, 0);
    int pos = 0;
    for (size_t fi = 0; fi < flag.face.size(); ++fi) {
      if (static_cast<int>(fi) == flag.chart) continue;
      key[pos++] = alpha[flag.face[fi]];
    }
    poly.add_term(key, rat_mod_p(c * scale, flag.p));
  }
  if (poly.zero()) throw std::logic_error("reduce_at_flag: content removal failed");
  return FlagReduction{Int(content), std::move(poly)};
}

WVec valuation_vector(const Section& s, const GoodFlag& flag) {
  FlagReduction red = reduce_at_flag(s, flag);
  const int k = flag.face_dim();
  FpPoly cur = red.poly;
  for (int i = 0; i < k; ++i)
    if (flag.center[i]) cur = cur.translate(i, flag.center[i]);
  WVec w;
  w.push_back(red.content);
  for (int step = 0; step < k; ++step) {
    size_t var = flag.order[step];
    int e = cur.min_exponent(var);
    w.push_back(e);
    cur = cur.extract_and_restrict(var, e);
    if (cur.zero()) throw std::logic_error("valuation: vanished during extraction");
  }
  return w;
}

std::optional<GoodFlag> find_good_flag(const DiagonalModel& model, const Face& face,
                                       const Section* avoid, long p) {
  if (!is_prime(p)) throw std::invalid_argument("find_good_flag: p must be prime");
  auto wp = model.weighted_primes();
  if (std::find(wp.begin(), wp.end(), p) != wp.end())
    throw std::invalid_argument("find_good_flag: p carries weight data; choose another prime");
  const int k = static_cast<int>(face.size()) - 1;
  for (int chart = 0; chart < k + 1; ++chart) {
    GoodFlag flag;
    flag.p = p;
    flag.chart = chart;
    flag.center.assign(k, 0);
    flag.order.resize(k);
    for (int i = 0; i < k; ++i) flag.order[i] = i;
    flag.face = face;
    if (!avoid || avoid->zero()) return flag;
    FlagReduction red;
    try {
      red = reduce_at_flag(*avoid, flag);
    } catch (const std::invalid_argument&) {
      throw;  // wrong face support is a caller error
    }
    // Lexicographic scan of the centers.
    std::vector<long> tau(k, 0);
    for (;;) {
      if (red.poly.eval(tau) != 0) {
        flag.center = tau;
        return flag;
      }
      int pos = k - 1;
      while (pos >= 0 && tau[pos] == p - 1) tau[pos--] = 0;
      if (pos < 0) break;
      ++tau[pos];
    }
  }
  return std::nullopt;
}

namespace {

// Largest t with p^t * r < 1 (strict) or <= 1; -1 when even t=0 fails.
long max_content(long p, const Rat& r, bool strict) {
  long t = -1;
  Rat cur = r;
  while (true) {
    int cmp = Rat(cur - 1).sign();
    if (strict ? cmp >= 0 : cmp > 0) break;
    ++t;
    cur *= p;
  }
  return t;
}

}  // namespace

ImageResult valuation_image_bruteforce(const GradedSections& gs, const GoodFlag& flag,
                                       unsigned long long limit) {
  ImageResult out;
  auto pts = enumerate_ball(gs.ball(), limit);
  for (const auto& kvec : pts) {
    bool zero = true;
    for (long v : kvec)
      if (v) zero = false;
    if (zero) continue;
    out.image.insert(valuation_vector(gs.section_from(kvec), flag));
  }
  out.exact = true;
  return out;
}

ImageResult valuation_image(const GradedSections& gs, const GoodFlag& flag,
                            unsigned long long brute_limit) {
  if (gs.face != flag.face) throw std::invalid_argument("valuation_image: flag/face mismatch");
  ImageResult out;
  const int k = flag.face_dim();
  if (flag.centered_at_origin()) {
    // A section's valuation vector only sees the lexicographically least
    // exponent tuple of its mod-p support, so monomial representatives with
    // p-power contents realize the entire image.
    for (const auto& mi : gs.mono) {
      long tmax = max_content(flag.p, mi.weight, gs.strict);
      if (tmax < 0) continue;
      WVec base;
      base.push_back(0);
      for (int step = 0; step < k; ++step) {
        size_t var = flag.order[step];
        // Position of that variable among the non-chart face coordinates.
        size_t pos = 0;
        int coord = -1;
        for (size_t fi = 0; fi < flag.face.size(); ++fi) {
          if (static_cast<int>(fi) == flag.chart) continue;
          if (pos == var) {
            coord = flag.face[fi];
            break;
          }
          ++pos;
        }
        base.push_back(mi.alpha[coord]);
      }
      for (long t = 0; t <= tmax; ++t) {
        WVec w = base;
        w[0] = t;
        out.image.insert(std::move(w));
      }
    }
    out.exact = true;
    return out;
  }
  if (brute_limit > 0) {
    try {
      return valuation_image_bruteforce(gs, flag, brute_limit);
    } catch (const std::domain_error&) {
      // fall through to representatives
    }
  }
  // Translated center: single- and two-term representatives give a certified
  // subset of the image; cancellation across three or more terms can reach
  // further at large levels.
  auto active = gs.small_monomials();
  for (size_t i : active) {
    const auto& mi = gs.mono[i];
    long tmax = max_content(flag.p, mi.weight, gs.strict);
    for (long t = 0; t <= tmax; ++t) {
      Rat c = mi.unit * pow_int(Int(flag.p), static_cast<unsigned long>(t));
      out.image.insert(valuation_vector(Section::monomial(gs.m, mi.alpha, c), flag));
    }
  }
  for (size_t a = 0; a < active.size(); ++a) {
    for (size_t b = a + 1; b < active.size(); ++b) {
      const auto& mi = gs.mono[active[a]];
      const auto& mj = gs.mono[active[b]];
      for (long lam = 1; lam < flag.p; ++lam) {
        long rep = lam <= flag.p / 2 ? lam : lam - flag.p;
        Rat wsum = mi.weight + mj.weight * abs(Rat(rep));
        long tmax = max_content(flag.p, wsum, gs.strict);
        for (long t = 0; t <= tmax; ++t) {
          Rat pt = Rat(pow_int(Int(flag.p), static_cast<unsigned long>(t)));
          Section s = Section::monomial(gs.m, mi.alpha, mi.unit * pt) +
                      Section::monomial(gs.m, mj.alpha, mj.unit * pt * rep);
          out.image.insert(valuation_vector(s, flag));
        }
      }
    }
  }
  out.exact = false;
  out.note = "translated center: image approximated from one- and two-term sections";
  return out;
}

}  // namespace adok
