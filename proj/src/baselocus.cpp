#include <adok/model/baselocus.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

namespace adok {

namespace {

bool subset(const Face& a, const Face& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool CoordinateLocus::whole_space() const {
  for (const auto& f : maximal)
    if (static_cast<int>(f.size()) == n + 1) return true;
  return false;
}

bool CoordinateLocus::contains_face(const Face& f) const {
  for (const auto& g : maximal)
    if (subset(f, g)) return true;
  return false;
}

CoordinateLocus CoordinateLocus::from_predicate(int n,
                                                const std::function<bool(const Face&)>& in) {
  CoordinateLocus out;
  out.n = n;
  std::vector<Face> members;
  for (const auto& f : all_faces(n))
    if (in(f)) members.push_back(f);
  for (const auto& f : members) {
    bool maximal = true;
    for (const auto& g : members)
      if (f != g && subset(f, g)) {
        maximal = false;
        break;
      }
    if (maximal) out.maximal.push_back(f);
  }
  std::sort(out.maximal.begin(), out.maximal.end());
  return out;
}

std::string CoordinateLocus::str() const {
  if (maximal.empty()) return "{}";
  std::ostringstream os;
  for (size_t i = 0; i < maximal.size(); ++i) os << (i ? " u " : "") << face_str(maximal[i]);
  return os.str();
}

CoordinateLocus base_locus_level(const DiagonalModel& model, int m, bool strict) {
  GradedSections gs = graded_sections(model, m, full_face(model.dim), strict);
  auto small = gs.small_monomials();
  std::vector<Face> supports;
  for (size_t i : small) {
    Face s;
    for (int j = 0; j <= model.dim; ++j)
      if (gs.mono[i].alpha[j] > 0) s.push_back(j);
    if (s.empty()) s = {};  // constant monomial (m*d == 0) vanishes nowhere
    supports.push_back(std::move(s));
  }
  return CoordinateLocus::from_predicate(model.dim, [&](const Face& f) {
    for (const auto& s : supports)
      if (subset(s, f)) return false;  // some small section is nonzero on f
    return true;
  });
}

StableLocusReport stable_base_locus_ss(const DiagonalModel& model, int m_max, bool strict) {
  if (m_max < 1) throw std::invalid_argument("stable_base_locus: m_max >= 1 required");
  StableLocusReport rep;
  // Intersection over levels, tracked as a membership predicate.
  std::vector<Face> faces = all_faces(model.dim);
  std::vector<bool> in(faces.size(), true);
  rep.last_change = 0;
  for (int m = 1; m <= m_max; ++m) {
    CoordinateLocus lvl = base_locus_level(model, m, strict);
    bool changed = false;
    for (size_t i = 0; i < faces.size(); ++i) {
      if (in[i] && !lvl.contains_face(faces[i])) {
        in[i] = false;
        changed = true;
      }
    }
    if (changed) rep.last_change = m;
  }
  rep.locus = CoordinateLocus::from_predicate(model.dim, [&](const Face& f) {
    for (size_t i = 0; i < faces.size(); ++i)
      if (faces[i] == f) return static_cast<bool>(in[i]);
    return false;
  });
  // The whole space means no strictly small sections showed up at all; that
  // cannot be told apart from "not yet" on a finite range.
  rep.stabilized = !rep.locus.whole_space() && rep.last_change <= std::max(1, m_max / 2);
  return rep;
}

CoordinateLocus augmented_base_locus(const DiagonalModel& model, int m_max) {
  if (model.degree < 1)
    throw std::invalid_argument("augmented_base_locus: ample degree d >= 1 required");
  return stable_base_locus_ss(model, m_max).locus;
}

WAmpleReport is_w_ample(const DiagonalModel& model, int m_max) {
  if (model.degree < 1)
    throw std::invalid_argument("is_w_ample: ample degree d >= 1 required");
  WAmpleReport rep;
  for (int m = 1; m <= m_max; ++m) {
    if (base_locus_level(model, m).empty_locus()) {
      rep.w_ample = true;
      rep.witness_m = m;
      return rep;
    }
  }
  return rep;
}

GenerationReport zhang_moriwaki_check(const DiagonalModel& model, int m_max) {
  if (model.degree < 1)
    throw std::invalid_argument("zhang_moriwaki_check: ample degree d >= 1 required");
  GenerationReport rep;
  rep.generated.resize(m_max);
  for (int m = 1; m <= m_max; ++m) {
    GradedSections gs = graded_sections(model, m, full_face(model.dim), true);
    rep.generated[m - 1] = gs.small_monomials().size() == gs.mono.size();
  }
  for (int m = m_max; m >= 1; --m) {
    if (!rep.generated[m - 1]) break;
    rep.all_true_from = m;
  }
  rep.bss_empty = stable_base_locus_ss(model, m_max).locus.empty_locus();
  if (rep.bss_empty) {
    rep.consistent = rep.all_true_from.has_value();
  } else {
    // With a nonempty stable locus, generation can hold for no level.
    rep.consistent = true;
  }
  return rep;
}

}  // namespace adok
