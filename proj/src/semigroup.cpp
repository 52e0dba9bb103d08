#include <adok/model/baselocus.hpp>
#include <adok/okounkov/semigroup.hpp>

#include <algorithm>

namespace adok {

SemigroupSample build_semigroup(const DiagonalModel& model, const Face& face,
                                const GoodFlag& flag, int m_max) {
  if (flag.face != face) throw std::invalid_argument("build_semigroup: flag/face mismatch");
  SemigroupSample out;
  out.face = face;
  out.flag = flag;
  out.m_max = m_max;
  const int k = flag.face_dim();
  std::vector<IntVec> gens;
  for (int m = 1; m <= m_max; ++m) {
    GradedSections gs = graded_sections(model, m, face, true);
    ImageResult img = valuation_image(gs, flag);
    if (!img.exact) out.image_exact = false;
    if (img.image.empty()) continue;
    out.nhat.push_back(m);
    for (const auto& w : img.image) {
      IntVec v;
      v.reserve(k + 2);
      v.push_back(m);
      for (const auto& x : w) v.push_back(x);
      gens.push_back(std::move(v));
    }
    out.levels[m] = std::move(img.image);
  }
  if (gens.empty()) {
    out.span = Lattice(k + 2);
    out.vertical = Lattice(k + 1);
    return out;
  }
  out.span = Lattice::span(k + 2, gens);
  out.generates = out.span == Lattice::full(k + 2);
  // Rows of the HNF basis with zero leading coordinate span the vertical
  // slice; drop the first coordinate.
  std::vector<IntVec> vert;
  for (const auto& row : out.span.basis())
    if (row[0] == 0) vert.push_back(IntVec(row.begin() + 1, row.end()));
  out.vertical = Lattice::span(k + 1, vert.empty() ? std::vector<IntVec>{IntVec(k + 1, Int(0))}
                                                   : vert);
  if (out.vertical.rank() == static_cast<size_t>(k + 1))
    out.fundamental_volume = Rat(out.vertical.det_abs());
  return out;
}

std::optional<GoodFlag> default_flag(const DiagonalModel& model, const Face& face, long start,
                                     int m_probe) {
  auto wp = model.weighted_primes();
  long p = start;
  while (p < start + 1000 &&
         (!is_prime(p) || std::find(wp.begin(), wp.end(), p) != wp.end()))
    ++p;
  if (p >= start + 1000) return std::nullopt;
  const int k = static_cast<int>(face.size()) - 1;
  // A chart whose pure power is strictly small admits the origin as center
  // (the power is nonzero there), which keeps valuation images exact.
  for (int chart = 0; chart <= k; ++chart) {
    int j = face[chart];
    for (int m = 1; m <= m_probe; ++m) {
      GradedSections gs = graded_sections(model, m, face, true);
      for (size_t i : gs.small_monomials()) {
        const Expo& a = gs.mono[i].alpha;
        if (a[j] != m * model.degree) continue;
        GoodFlag flag;
        flag.p = p;
        flag.chart = chart;
        flag.center.assign(k, 0);
        flag.order.resize(k);
        for (int t = 0; t < k; ++t) flag.order[t] = t;
        flag.face = face;
        return flag;
      }
    }
  }
  // Otherwise search charts and centers against the first small section.
  Section avoid;
  for (int m = 1; m <= m_probe && avoid.zero(); ++m) {
    GradedSections gs = graded_sections(model, m, face, true);
    auto small = gs.small_monomials();
    if (!small.empty())
      avoid = Section::monomial(m, gs.mono[small.front()].alpha, gs.mono[small.front()].unit);
  }
  for (; p < start + 1000; ++p) {
    if (!is_prime(p)) continue;
    if (std::find(wp.begin(), wp.end(), p) != wp.end()) continue;
    auto flag = find_good_flag(model, face, avoid.zero() ? nullptr : &avoid, p);
    if (flag) return flag;
  }
  return std::nullopt;
}

KappaResult kappa_hat(const DiagonalModel& model, const Face& face, int m_max) {
  KappaResult out;
  StableLocusReport bss = stable_base_locus_ss(model, m_max);
  if (bss.locus.contains_face(face)) {
    out.defined = false;
  } else {
    out.defined = true;
    out.value = static_cast<int>(face.size()) - 1;
  }
  auto flag = default_flag(model, face);
  if (flag) {
    SemigroupSample s = build_semigroup(model, face, *flag, m_max);
    if (s.nhat.empty()) {
      out.rank_route = std::nullopt;
      out.agree = !out.defined;
    } else {
      out.rank_route = static_cast<int>(s.span.rank()) - 2;
      out.agree = out.defined && *out.rank_route == out.value;
    }
  }
  return out;
}

}  // namespace adok
