#include <adok/lattice/lp.hpp>
#include <adok/model/io.hpp>
#include <adok/verify/checks.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace adok {

namespace {

std::string digest_of(const Json& j) { return digest_hex(j.dump()); }

Json face_json(const Face& f) { return Json(f); }

std::set<IntVec> as_set(const std::vector<IntVec>& v) { return {v.begin(), v.end()}; }

IntVec apply_map(const std::vector<IntVec>& rows, const IntVec& x) {
  IntVec y(rows.size(), Int(0));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) y[i] += rows[i][j] * x[j];
  return y;
}

bool is_zero_vec(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

double pow_d(double x, int e) { return std::pow(x, e); }

}  // namespace

Certificate check_counting_lemma(const std::vector<IntVec>& gamma_in,
                                 const std::vector<IntVec>& rmap) {
  Certificate cert;
  cert.check = "counting";
  std::set<IntVec> gamma = as_set(gamma_in);
  // Symmetry is a hypothesis of the lemma.
  for (const auto& g : gamma)
    if (!gamma.count(-g)) throw std::invalid_argument("counting lemma: asymmetric set");
  // Surjectivity of the map.
  const size_t rk_src = rmap.empty() ? 0 : rmap.front().size();
  std::vector<IntVec> images;
  for (size_t j = 0; j < rk_src; ++j) {
    IntVec e(rk_src, Int(0));
    e[j] = 1;
    images.push_back(apply_map(rmap, e));
  }
  if (!(Lattice::span(rmap.size(), images) == Lattice::full(rmap.size())))
    throw std::invalid_argument("counting lemma: map is not surjective");

  std::set<IntVec> r_gamma, ker_gamma, two_star, ker_two_star;
  for (const auto& g : gamma) {
    IntVec y = apply_map(rmap, g);
    r_gamma.insert(y);
    if (is_zero_vec(y)) ker_gamma.insert(g);
  }
  for (const auto& a : gamma)
    for (const auto& b : gamma) two_star.insert(a + b);
  for (const auto& s : two_star)
    if (is_zero_vec(apply_map(rmap, s))) ker_two_star.insert(s);

  Int n_gamma(gamma.size()), n_r(r_gamma.size()), n_ker(ker_gamma.size());
  Int n_two(two_star.size()), n_ker_two(ker_two_star.size());
  // Product form of the two log inequalities.
  bool left = n_gamma <= n_r * n_ker_two;
  bool right = n_r * n_ker <= n_two;
  cert.relation = "all";
  cert.pass = left && right;
  cert.verdict = cert.pass ? "pass" : "fail";
  cert.lhs = Json{{"card_gamma", n_gamma.str()}, {"card_r_gamma", n_r.str()}};
  cert.rhs = Json{{"card_2star", n_two.str()},
                  {"card_ker_gamma", n_ker.str()},
                  {"card_ker_2star", n_ker_two.str()}};
  cert.details["rows"] = Json::array({Json{{"name", "lower"}, {"ok", left}},
                                      Json{{"name", "upper"}, {"ok", right}}});
  cert.inputs_digest = digest_of(Json{{"gamma_size", gamma.size()}, {"rows", rmap.size()}});
  if (!cert.pass) cert.witness = Json{{"note", "counting inequality violated"}};
  return cert;
}

Certificate check_dilation_lemma(const Lattice& M, const ConvexBody& delta, const Rat& a) {
  Certificate cert;
  cert.check = "dilation";
  if (!delta.is_symmetric()) throw std::invalid_argument("dilation lemma: asymmetric body");
  auto [small, big] = dilate_count(M, delta, a);
  Int bound = 1;
  Int c2a = ceil_rat(2 * a);
  for (size_t i = 0; i < M.rank(); ++i) bound *= c2a;
  bool lower = small <= big;
  bool upper = big <= small * bound;
  cert.relation = "all";
  cert.pass = lower && upper;
  cert.verdict = cert.pass ? "pass" : "fail";
  cert.lhs = Json{{"count_delta", small.str()}, {"count_a_delta", big.str()}};
  cert.rhs = Json{{"ceil_2a_pow_rank", bound.str()}, {"a", rat_to_string(a)},
                  {"rank", M.rank()}};
  cert.details["rows"] = Json::array({Json{{"name", "monotone"}, {"ok", lower}},
                                      Json{{"name", "bounded"}, {"ok", upper}}});
  cert.inputs_digest = digest_of(Json{{"rank", M.rank()}, {"a", rat_to_string(a)}});
  return cert;
}

namespace {

IntVec random_vec(std::mt19937_64& rng, int dim, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntVec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = d(rng);
  return v;
}

std::vector<IntVec> random_symmetric_set(std::mt19937_64& rng, int dim, int max_points) {
  std::uniform_int_distribution<int> np(1, std::max(1, max_points / 2));
  int half = np(rng);
  std::set<IntVec> s;
  for (int i = 0; i < half; ++i) {
    IntVec v = random_vec(rng, dim, -4, 4);
    s.insert(v);
    s.insert(-v);
  }
  return {s.begin(), s.end()};
}

std::vector<IntVec> random_surjection(std::mt19937_64& rng, int src, int dst) {
  // Random rows, retried until surjective (checked by the caller's lemma).
  for (;;) {
    std::vector<IntVec> rows;
    for (int i = 0; i < dst; ++i) rows.push_back(random_vec(rng, src, -3, 3));
    std::vector<IntVec> images;
    for (int j = 0; j < src; ++j) {
      IntVec e(src, Int(0));
      e[j] = 1;
      images.push_back(apply_map(rows, e));
    }
    if (Lattice::span(dst, images) == Lattice::full(dst)) return rows;
  }
}

}  // namespace

Certificate check_counting_lemma_random(const RandomSuiteConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  Certificate agg;
  agg.check = "counting_random";
  agg.relation = "all";
  agg.pass = true;
  agg.verdict = "pass";
  int done = 0;
  for (int i = 0; i < cfg.instances; ++i) {
    std::uniform_int_distribution<int> rkd(1, cfg.max_rank);
    int src = rkd(rng);
    std::uniform_int_distribution<int> dstd(1, src);
    int dst = dstd(rng);
    auto gamma = random_symmetric_set(rng, src, cfg.max_points);
    auto rmap = random_surjection(rng, src, dst);
    Certificate one = check_counting_lemma(gamma, rmap);
    ++done;
    if (!one.pass) {
      agg.pass = false;
      agg.verdict = "fail";
      agg.witness = one.to_json();
      break;
    }
  }
  agg.lhs = Json{{"instances", done}};
  agg.rhs = Json{{"expected", cfg.instances}};
  agg.details["rows"] = Json::array({Json{{"name", "all_instances"}, {"ok", agg.pass}}});
  agg.inputs_digest = digest_of(Json{{"seed", cfg.seed}, {"instances", cfg.instances}});
  return agg;
}

Certificate check_dilation_lemma_random(const RandomSuiteConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 1);
  std::vector<Rat> as = {Rat(1), Rat(3) / 2, Rat(2), Rat(5)};
  Certificate agg;
  agg.check = "dilation_random";
  agg.relation = "all";
  agg.pass = true;
  agg.verdict = "pass";
  int done = 0;
  for (int i = 0; i < cfg.instances; ++i) {
    std::uniform_int_distribution<int> rkd(1, std::min(3, cfg.max_rank));
    int dim = rkd(rng);
    // Symmetric polytope: conv(+-v_1, ..., +-v_t).
    std::uniform_int_distribution<int> td(1, 4);
    int t = td(rng);
    std::vector<RatVec> pts;
    for (int j = 0; j < t; ++j) {
      IntVec v = random_vec(rng, dim, -3, 3);
      pts.push_back(to_rat(v));
      pts.push_back(to_rat(-v));
    }
    ConvexBody body = ConvexBody::from_points(pts);
    // Random sublattice: span of a few random vectors plus a scaled basis
    // vector to keep positive rank.
    std::vector<IntVec> gens;
    std::uniform_int_distribution<int> gd(1, dim);
    int ng = gd(rng);
    for (int j = 0; j < ng; ++j) gens.push_back(random_vec(rng, dim, -2, 2));
    IntVec e(dim, Int(0));
    e[0] = 1 + (i % 2);
    gens.push_back(e);
    Lattice M = lattice_span(gens);
    std::uniform_int_distribution<size_t> ad(0, as.size() - 1);
    Certificate one = check_dilation_lemma(M, body, as[ad(rng)]);
    ++done;
    if (!one.pass) {
      agg.pass = false;
      agg.verdict = "fail";
      agg.witness = one.to_json();
      break;
    }
  }
  agg.lhs = Json{{"instances", done}};
  agg.rhs = Json{{"expected", cfg.instances}};
  agg.details["rows"] = Json::array({Json{{"name", "all_instances"}, {"ok", agg.pass}}});
  agg.inputs_digest = digest_of(Json{{"seed", cfg.seed}, {"instances", cfg.instances}});
  return agg;
}

Certificate check_yuan_theorem(const DiagonalModel& model, const Face& face,
                               const GoodFlag& flag, int m) {
  Certificate cert;
  cert.check = "yuan";
  GradedSections gs = graded_sections(model, m, face, true);
  CountLimits wide;
  wide.enum_limit = 50000000;
  wide.dp_capacity_limit = 1u << 24;
  CountResult count = count_weighted_l1(gs.ball(), wide);
  if (count.active_rank == 0)
    throw std::domain_error("yuan check: the graded set is {0} at level " + std::to_string(m));
  ImageResult img = valuation_image(gs, flag);
  const long rank = static_cast<long>(count.active_rank);
  const long beta = flag.p * rank;

  Interval log_count = count.log_count;
  Interval logp = log_interval(Int(flag.p));
  Interval w_side = logp.scale(static_cast<double>(img.image.size()));
  Interval lhs = log_count - w_side;
  double lhs_abs = std::max(std::abs(lhs.lo), std::abs(lhs.hi));

  BoundResult du = delta_upper(model, face);
  Interval delta_iv = du.exact ? du.exact->to_interval() : du.value;
  Interval log4 = log_interval(Int(4));
  Interval log4p = log_interval(Int(4) * flag.p);
  Interval log4beta = log_interval(Int(4) * beta);
  Interval rhs = (delta_iv * log4 + log4p * log4beta).scale(static_cast<double>(rank));
  rhs = rhs * Interval{1.0 / logp.hi, 1.0 / logp.lo};

  bool exact_data = count.exact.has_value() && img.exact;
  cert.relation = "abs_le";
  cert.pass = exact_data && lhs_abs <= rhs.lo;
  cert.verdict = cert.pass ? "pass" : (exact_data ? "fail" : "inconclusive");
  cert.lhs = interval_json(lhs);
  cert.rhs = interval_json(rhs);
  cert.details["m"] = m;
  cert.details["p"] = flag.p;
  cert.details["rank"] = rank;
  cert.details["beta"] = beta;
  cert.details["count_exact"] = count.exact ? count.exact->str() : "";
  cert.details["w_image_count"] = img.image.size();
  cert.details["delta_upper"] = du.exact ? Json(du.exact->str()) : interval_json(du.value);
  cert.details["delta_substituted"] = true;  // upper bound stands in for the infimum
  cert.details["slack"] = rhs.lo - lhs_abs;
  cert.details["vacuous"] = rhs.lo > log_count.hi;
  cert.inputs_digest =
      digest_of(Json{{"model", model_digest(model)}, {"face", face_json(face)}, {"m", m},
                     {"p", flag.p}});
  if (!cert.pass) cert.witness = Json{{"lhs_abs", lhs_abs}, {"rhs_lo", rhs.lo}};
  return cert;
}

Certificate check_prop_yuan(const DiagonalModel& model, const Face& face, const GoodFlag& flag,
                            const std::vector<int>& ms) {
  Certificate cert;
  cert.check = "prop_yuan";
  KappaResult kr = kappa_hat(model, face, std::min(12, ms.empty() ? 8 : ms.back()));
  if (!kr.defined) {
    cert.relation = "all";
    cert.pass = true;
    cert.verdict = "pass";
    cert.details["note"] = "no restricted strictly small sections: vacuous";
    cert.details["rows"] = Json::array({Json{{"name", "vacuous"}, {"ok", true}}});
    cert.inputs_digest = digest_of(Json{{"model", model_digest(model)}, {"face", face_json(face)}});
    return cert;
  }
  const int kappa = kr.value;
  double e_est = geometric_mult_estimate(model, face, ms);
  BoundResult du = delta_upper(model, face);
  double delta_hi = du.exact ? du.exact->to_interval().hi : du.value.hi;
  double fact = 1;
  for (int i = 2; i <= kappa; ++i) fact *= i;
  double d_const = std::log(4.0) * delta_hi * e_est / fact;
  double logp = std::log(static_cast<double>(flag.p));

  int m_big = 0;
  Interval count_norm{0, 0};
  double w_norm = 0;
  for (int m : ms) {
    GradedSections gs = graded_sections(model, m, face, true);
    CountResult c = count_weighted_l1(gs.ball());
    if (c.active_rank == 0) continue;
    ImageResult img = valuation_image(gs, flag);
    double denom = pow_d(static_cast<double>(m), kappa + 1);
    m_big = m;
    count_norm = c.log_count.scale(1.0 / denom);
    w_norm = static_cast<double>(img.image.size()) * logp / denom;
  }
  if (m_big == 0) {
    cert.relation = "all";
    cert.pass = true;
    cert.verdict = "pass";
    cert.details["note"] = "no nonempty level sampled: vacuous";
    cert.details["rows"] = Json::array({Json{{"name", "vacuous"}, {"ok", true}}});
    cert.inputs_digest = digest_of(Json{{"model", model_digest(model)}, {"face", face_json(face)}});
    return cert;
  }
  double gap = std::abs(count_norm.mid() - w_norm);
  double slack = count_norm.width() / 2 + 1e-12;
  double bound = d_const / logp;
  cert.relation = "le";
  bool ok = gap <= bound + slack;
  cert.pass = ok;
  // The statement is asymptotic; a finite-level excess is inconclusive
  // rather than a refutation.
  cert.verdict = ok ? "pass" : "inconclusive";
  cert.lhs = Json(gap);
  cert.rhs = Json(bound + slack);
  cert.details["m"] = m_big;
  cert.details["kappa"] = kappa;
  cert.details["e_estimate"] = e_est;
  cert.details["D"] = d_const;
  cert.details["slack"] = slack;
  cert.details["p"] = flag.p;
  cert.inputs_digest = digest_of(
      Json{{"model", model_digest(model)}, {"face", face_json(face)}, {"p", flag.p}});
  if (!ok) cert.witness = Json{{"gap", gap}, {"bound", bound + slack}};
  return cert;
}

Certificate check_brunn_minkowski(const DiagonalModel& model_l, const DiagonalModel& model_m,
                                  const Face& face, const std::vector<int>& ms) {
  Certificate cert;
  cert.check = "brunn_minkowski";
  const int k = static_cast<int>(face.size()) - 1;
  DiagonalModel sum = model_sum(model_l, model_m);
  KappaResult kl = kappa_hat(model_l, face, 10);
  if (!kl.defined || kl.value != k)
    throw std::domain_error("brunn_minkowski: kappa of the first model must equal dim face");
  KappaResult km = kappa_hat(model_m, face, 10);

  auto fl = default_flag(sum, face);
  std::optional<bool> gen_l, gen_m, gen_s;
  Rat vol_l = 1, vol_m = 1, vol_s = 1;
  if (fl) {
    auto fl_l = default_flag(model_l, face, fl->p);
    auto fl_m = default_flag(model_m, face, fl->p);
    if (fl_l) {
      SemigroupSample s = build_semigroup(model_l, face, *fl_l, std::min(16, ms.back()));
      gen_l = s.generates;
      if (s.fundamental_volume > 0) vol_l = s.fundamental_volume;
    }
    if (fl_m) {
      SemigroupSample s = build_semigroup(model_m, face, *fl_m, std::min(16, ms.back()));
      gen_m = s.generates;
      if (s.fundamental_volume > 0) vol_m = s.fundamental_volume;
    }
    SemigroupSample s = build_semigroup(sum, face, *fl, std::min(16, ms.back()));
    gen_s = s.generates;
    if (s.fundamental_volume > 0) vol_s = s.fundamental_volume;
  }

  VolumeReport rl = volume_estimate(model_l, face, ms);
  VolumeReport rm = volume_estimate(model_m, face, ms);
  VolumeReport rs = volume_estimate(sum, face, ms);

  double e = 1.0 / (k + 1);
  auto root = [&](const Interval& iv, const Rat& vol) {
    double v = vol.convert_to<double>();
    return Interval{std::pow(std::max(0.0, iv.lo) * v, e), std::pow(std::max(0.0, iv.hi) * v, e)};
  };
  Interval lhs = root(rs.avol_raw, vol_s);
  Interval r1 = root(rl.avol_raw, vol_l);
  Interval r2 = root(rm.avol_raw, vol_m);

  // Certified consistency: a violation would need the sum's upper endpoint
  // to fall below the parts' lower endpoints.
  bool consistent = lhs.hi >= r1.lo + r2.lo;
  // Midpoint comparison within the combined interval tolerance.
  double tol = (lhs.width() + r1.width() + r2.width()) / 2 + 1e-9;
  bool mid_ok = lhs.mid() + tol >= r1.mid() + r2.mid();

  cert.relation = "le";
  cert.pass = consistent && mid_ok;
  cert.verdict = cert.pass ? "pass" : "fail";
  cert.lhs = Json(r1.mid() + r2.mid());
  cert.rhs = Json(lhs.mid() + tol);
  cert.details["sum_root"] = interval_json(lhs);
  cert.details["l_root"] = interval_json(r1);
  cert.details["m_root"] = interval_json(r2);
  cert.details["kappa_l"] = kl.value;
  cert.details["kappa_m"] = km.defined ? Json(km.value) : Json("-inf");
  if (gen_l) cert.details["generates_l"] = *gen_l;
  if (gen_m) cert.details["generates_m"] = *gen_m;
  if (gen_s) cert.details["generates_sum"] = *gen_s;
  cert.details["s_volume_l"] = rat_to_string(vol_l);
  cert.details["s_volume_m"] = rat_to_string(vol_m);
  cert.details["s_volume_sum"] = rat_to_string(vol_s);
  cert.inputs_digest = digest_of(Json{{"model_l", model_digest(model_l)},
                                      {"model_m", model_digest(model_m)},
                                      {"face", face_json(face)}});
  if (!cert.pass)
    cert.witness = Json{{"lhs", lhs.mid()}, {"parts", r1.mid() + r2.mid()}, {"tol", tol}};
  return cert;
}

Certificate check_continuity(const DiagonalModel& model, const Face& face,
                             const std::vector<Rat>& lambdas, const std::vector<int>& ms) {
  Certificate cert;
  cert.check = "continuity";
  StableLocusReport bss = stable_base_locus_ss(model, 10);
  if (bss.locus.contains_face(face))
    throw std::domain_error("continuity: face lies in the stable base locus");
  KappaResult kr = kappa_hat(model, face, 10);
  const int kappa = kr.value;

  // Sandwich constants: lambda0 is the per-level twist margin of the
  // strictly small sections at the first populated level, m0 the number of
  // copies of the best face-supported section needed to absorb it.
  double lambda0 = 0, best_neg_log = 0;
  int best_level = 0;
  for (int a = 1; a <= 10; ++a) {
    GradedSections gs = graded_sections(model, a, full_face(model.dim), true);
    auto small = gs.small_monomials();
    if (small.empty()) continue;
    double worst = 0;
    bool first = true;
    for (size_t i : small) {
      Section s = Section::monomial(a, gs.mono[i].alpha, gs.mono[i].unit);
      double nl = -std::log(norm_infinity(model, s).convert_to<double>()) / a;
      if (first || nl < worst) worst = nl;
      first = false;
      bool on_face = true;
      for (size_t j = 0; j < gs.mono[i].alpha.size(); ++j)
        if (gs.mono[i].alpha[j] > 0 &&
            !std::binary_search(face.begin(), face.end(), static_cast<int>(j)))
          on_face = false;
      if (on_face && nl * a > best_neg_log) {
        best_neg_log = nl * a;
        best_level = a;
      }
    }
    if (worst > 0) {
      lambda0 = worst;
      break;
    }
  }
  if (lambda0 <= 0 || best_neg_log <= 0)
    throw std::domain_error("continuity: no strictly small sections to calibrate constants");
  int m0 = best_level * (static_cast<int>(std::floor(lambda0 / best_neg_log)) + 1);

  VolumeReport base = volume_estimate(model, face, ms);
  double e0 = base.e_hat_best();
  Json rows = Json::array();
  bool all_ok = true;
  for (const auto& lam : lambdas) {
    Json row;
    row["lambda"] = rat_to_string(lam);
    DiagonalModel tw = twist_infinity(model, lam);
    double t = (static_cast<double>(m0) / lambda0) * std::abs(lam.convert_to<double>());
    VolumeReport rep;
    bool domain_exit = false;
    try {
      rep = volume_estimate(tw, face, ms);
      domain_exit = !rep.l0.has_value();
    } catch (const std::exception&) {
      domain_exit = true;
    }
    if (lam == 0) {
      bool ok = std::abs(rep.e_hat_best() - e0) <= 1e-12;
      row["ok"] = ok;
      row["note"] = "identity";
      all_ok = all_ok && ok;
      rows.push_back(row);
      continue;
    }
    if (domain_exit) {
      row["ok"] = true;
      row["note"] = "domain exit: no sections after the twist";
      rows.push_back(row);
      continue;
    }
    double bound;
    if (t >= 1) {
      bound = std::numeric_limits<double>::infinity();
      row["note"] = "sandwich degenerate (t >= 1)";
    } else {
      bound = std::max(std::pow(1 + t, kappa + 1) - 1, 1 - std::pow(1 - t, kappa + 1)) * e0;
    }
    double slack = (base.e_hat_raw.width() + rep.e_hat_raw.width()) / 2 + 1e-9;
    double change = std::abs(rep.e_hat_best() - e0);
    bool ok = change <= bound + slack;
    row["e_hat"] = rep.e_hat_best();
    row["change"] = change;
    row["bound"] = bound;
    row["slack"] = slack;
    row["t"] = t;
    row["ok"] = ok;
    all_ok = all_ok && ok;
    rows.push_back(row);
  }
  cert.relation = "all";
  cert.pass = all_ok;
  cert.verdict = all_ok ? "pass" : "fail";
  cert.lhs = Json(e0);
  cert.rhs = Json{{"lambda0", lambda0}, {"m0", m0}};
  cert.details["rows"] = rows;
  cert.details["kappa"] = kappa;
  cert.inputs_digest =
      digest_of(Json{{"model", model_digest(model)}, {"face", face_json(face)}});
  if (!all_ok) cert.witness = rows;
  return cert;
}

Certificate check_nef_equality(const DiagonalModel& model, const Face& face,
                               const std::vector<int>& ms, double rel_tol,
                               bool allow_undetermined) {
  Certificate cert;
  cert.check = "nef_equality";
  IntegralResult oracle = adeg_diagonal_nef(model, face, allow_undetermined);
  StableLocusReport bss = stable_base_locus_ss(model, 10);
  if (bss.locus.contains_face(face))
    throw std::domain_error("nef_equality: face lies in the augmented base locus");
  VolumeReport rep = volume_estimate(model, face, ms);
  double est = rep.avol_best();
  double orc = oracle.value.mid();
  double scale = std::max(std::abs(orc), 1e-9);
  double rel = std::abs(est - orc) / scale;
  bool both_zero = std::abs(orc) < 1e-12 && rep.avol_raw.hi < 1e-9;
  cert.relation = "le";
  cert.pass = both_zero || rel <= rel_tol;
  cert.verdict = cert.pass ? "pass" : "fail";
  cert.lhs = Json(rel);
  cert.rhs = Json(rel_tol);
  cert.details["estimate"] = est;
  cert.details["estimate_interval"] = interval_json(rep.avol_raw);
  cert.details["oracle"] = interval_json(oracle.value);
  if (oracle.exact) cert.details["oracle_exact"] = oracle.exact->str();
  cert.inputs_digest =
      digest_of(Json{{"model", model_digest(model)}, {"face", face_json(face)}});
  if (!cert.pass) cert.witness = Json{{"estimate", est}, {"oracle", orc}};
  return cert;
}

FujitaResult fujita_lower_bound(const DiagonalModel& model, const Face& face,
                                const std::vector<int>& ms, int grid_points,
                                const Face* face_z) {
  FujitaResult out;
  Certificate& cert = out.cert;
  cert.check = "fujita";
  const int k = static_cast<int>(face.size()) - 1;
  if (k > 2) throw std::domain_error("fujita: grid program supports face dimension <= 2");
  if (grid_points > 200) throw std::invalid_argument("fujita: grid limited to 200 points");
  const Face& fz = face_z ? *face_z : face;
  StableLocusReport bss = stable_base_locus_ss(model, 10);
  // Bigness along the distinguished subvariety is a hypothesis of the
  // approximation statement; without it both sides degenerate to zero, so
  // note it instead of refusing.
  bool z_big = !bss.locus.contains_face(fz);

  // Grid over the face simplex in local lattice coordinates.
  const int d = model.degree;
  int g = 1;
  if (k == 1) g = std::max(1, grid_points - 1);
  if (k == 2) {
    while ((g + 1) * (g + 2) / 2 <= grid_points) ++g;
    g = std::max(1, g - 1);
  }
  struct GridPoint {
    std::vector<int> idx;
    RatVec beta;
  };
  std::vector<GridPoint> grid;
  if (k == 0) {
    grid.push_back({{}, {}});
  } else if (k == 1) {
    for (int i = 0; i <= g; ++i) grid.push_back({{i}, {Rat(d) * i / g}});
  } else {
    for (int i = 0; i <= g; ++i)
      for (int j = 0; i + j <= g; ++j)
        grid.push_back({{i, j}, {Rat(d) * i / g, Rat(d) * j / g}});
  }
  auto find_idx = [&](const std::vector<int>& idx) -> int {
    for (size_t t = 0; t < grid.size(); ++t)
      if (grid[t].idx == idx) return static_cast<int>(t);
    return -1;
  };

  // Rational lower bounds of Phi at the grid points keep feasibility valid.
  std::vector<Rat> phi_lo(grid.size());
  bool infeasible = false;
  for (size_t t = 0; t < grid.size(); ++t) {
    RatVec u(model.dim, Rat(0));
    // Same chart map as the integrator.
    Rat rest = d;
    for (int i = 1; i <= k; ++i) rest -= grid[t].beta[i - 1];
    for (int i = 1; i <= k; ++i)
      if (face[i] >= 1) u[face[i] - 1] = grid[t].beta[i - 1];
    if (face[0] >= 1) u[face[0] - 1] = rest;
    LogReal phi = model.phi_total(u);
    if (phi.is_rational()) {
      phi_lo[t] = phi.rational_part();
    } else {
      phi_lo[t] = Rat(phi.to_interval().lo);
    }
    if (phi_lo[t] < 0) infeasible = true;
  }

  double lp_value = 0;
  if (!infeasible && k == 0) {
    // A point face: the program is max theta with 0 <= theta <= Phi(pt).
    lp_value = std::max(0.0, phi_lo[0].convert_to<double>());
  } else if (!infeasible) {
    std::vector<LPRow> rows;
    RatVec obj(grid.size(), Rat(0));
    Rat h = Rat(d) / g;
    if (k == 1) {
      for (size_t t = 0; t < grid.size(); ++t)
        obj[t] = (grid[t].idx[0] == 0 || grid[t].idx[0] == g) ? h / 2 : h;
      // Concavity: second differences nonpositive.
      for (int i = 1; i < g; ++i) {
        LPRow r{RatVec(grid.size(), Rat(0)), Rel::LE, Rat(0)};
        r.a[find_idx({i - 1})] = 1;
        r.a[find_idx({i + 1})] = 1;
        r.a[find_idx({i})] = -2;
        rows.push_back(std::move(r));
      }
    } else {
      // Exact integral of the PL interpolant: each triangle contributes a
      // third of its area to each of its vertices.
      Rat third = h * h / 2 / 3;
      auto bump = [&](int a, int b) {
        int idx = find_idx({a, b});
        if (idx < 0) throw std::logic_error("fujita: grid indexing");
        obj[idx] += third;
      };
      for (int i = 0; i + 1 <= g; ++i)
        for (int j = 0; i + j <= g - 1; ++j) {
          bump(i, j);
          bump(i + 1, j);
          bump(i, j + 1);
          if (i + j <= g - 2) {
            bump(i + 1, j);
            bump(i, j + 1);
            bump(i + 1, j + 1);
          }
        }
      // Concavity across interior edges: three families of rhombus
      // inequalities on the regular triangulation.
      auto add_rhombus = [&](std::vector<int> a, std::vector<int> b, std::vector<int> c,
                             std::vector<int> dd) {
        int ia = find_idx(a), ib = find_idx(b), ic = find_idx(c), id = find_idx(dd);
        if (ia < 0 || ib < 0 || ic < 0 || id < 0) return;
        LPRow r{RatVec(grid.size(), Rat(0)), Rel::LE, Rat(0)};
        r.a[ia] += 1;
        r.a[ib] += 1;
        r.a[ic] -= 1;
        r.a[id] -= 1;
        rows.push_back(std::move(r));
      };
      for (int i = 0; i <= g; ++i)
        for (int j = 0; i + j <= g; ++j) {
          add_rhombus({i, j}, {i + 1, j + 1}, {i + 1, j}, {i, j + 1});      // diagonal edges
          add_rhombus({i + 1, j - 1}, {i, j + 1}, {i, j}, {i + 1, j});      // horizontal edges
          add_rhombus({i - 1, j + 1}, {i + 1, j}, {i, j}, {i, j + 1});      // vertical edges
        }
    }
    for (size_t t = 0; t < grid.size(); ++t) {
      LPRow r{RatVec(grid.size(), Rat(0)), Rel::LE, phi_lo[t]};
      r.a[t] = 1;
      rows.push_back(std::move(r));
    }
    LPResult lp = lp_maximize(obj, rows);
    if (lp.status != LPStatus::OPTIMAL) throw std::logic_error("fujita: LP did not solve");
    double fact = 1;
    for (int i = 2; i <= k + 1; ++i) fact *= i;
    lp_value = lp.value.convert_to<double>() * fact;
  }
  out.feasible = !infeasible;
  out.bound = infeasible ? 0.0 : lp_value;

  VolumeReport rep = volume_estimate(model, face, ms);
  out.avol_hi = rep.avol_raw.hi;
  out.avol_best = rep.avol_best();
  out.gap = out.avol_best - out.bound;

  cert.relation = "le";
  cert.pass = out.bound <= out.avol_hi + 1e-9;
  cert.verdict = cert.pass ? "pass" : "fail";
  cert.lhs = Json(out.bound);
  cert.rhs = Json(out.avol_hi);
  cert.details["feasible"] = out.feasible;
  if (!out.feasible)
    cert.details["note"] = "no concave 0 <= theta <= Phi exists (Phi dips negative): bound 0";
  cert.details["z_big"] = z_big;
  cert.details["grid_points"] = grid.size();
  cert.details["avol_estimate"] = out.avol_best;
  cert.details["gap"] = out.gap;
  cert.inputs_digest = digest_of(Json{{"model", model_digest(model)},
                                      {"face", face_json(face)},
                                      {"grid", grid_points}});
  return out;
}

Certificate check_baselocus_duality(const DiagonalModel& model, int m_max, double threshold) {
  Certificate cert;
  cert.check = "baselocus";
  StableLocusReport bss = stable_base_locus_ss(model, m_max);
  Json rows = Json::array();
  bool all_ok = true;
  for (const auto& face : all_faces(model.dim)) {
    bool in_locus = bss.locus.contains_face(face);
    // Estimator route, independent of the support combinatorics: sampled
    // semigroup rank and the normalized count at the top level.
    bool small_volume;
    std::optional<int> rank_kappa;
    // Small primes see the p-content direction of the semigroup at shallow
    // levels, which the rank route needs.
    auto flag = default_flag(model, face, 2);
    if (flag) {
      SemigroupSample s = build_semigroup(model, face, *flag, m_max);
      if (!s.nhat.empty()) rank_kappa = static_cast<int>(s.span.rank()) - 2;
    }
    std::vector<int> ms = {std::max(2, m_max / 2), m_max};
    VolumeReport rep = volume_estimate(model, face, ms, false);
    double upper = rep.avol_raw.hi;
    int dimf = static_cast<int>(face.size()) - 1;
    bool kappa_defect = !rank_kappa.has_value() || *rank_kappa < dimf;
    small_volume = upper < threshold;
    bool estimator_zero = kappa_defect || small_volume;
    bool ok = in_locus == estimator_zero;
    all_ok = all_ok && ok;
    Json row;
    row["face"] = face_json(face);
    row["in_locus"] = in_locus;
    row["rank_kappa"] = rank_kappa ? Json(*rank_kappa) : Json("-inf");
    row["avol_upper"] = upper;
    row["ok"] = ok;
    rows.push_back(row);
  }
  cert.relation = "iff";
  cert.pass = all_ok;
  cert.verdict = all_ok ? "pass" : "fail";
  cert.details["rows"] = rows;
  cert.details["locus"] = bss.locus.str();
  cert.details["threshold"] = threshold;
  cert.inputs_digest = digest_of(Json{{"model", model_digest(model)}, {"m_max", m_max}});
  if (!all_ok) cert.witness = rows;
  return cert;
}

Certificate check_wample_openness(const DiagonalModel& model, int m_max) {
  Certificate cert;
  cert.check = "wample_openness";
  WAmpleReport base = is_w_ample(model, m_max);
  if (!base.w_ample) {
    cert.relation = "all";
    cert.pass = true;
    cert.verdict = "pass";
    cert.details["note"] = "model not w-ample: openness vacuous";
    cert.details["rows"] = Json::array({Json{{"name", "vacuous"}, {"ok", true}}});
    cert.inputs_digest = digest_of(Json{{"model", model_digest(model)}});
    return cert;
  }
  // Bisect the largest dyadic lambda <= 1 whose negative twist stays w-ample.
  Rat lo = 0, hi = 1;
  if (!is_w_ample(twist_infinity(model, -hi), m_max).w_ample) {
    for (int it = 0; it < 12; ++it) {
      Rat mid = (lo + hi) / 2;
      if (is_w_ample(twist_infinity(model, -mid), m_max).w_ample)
        lo = mid;
      else
        hi = mid;
    }
  } else {
    lo = hi;
  }
  bool ok = lo > 0 && is_w_ample(twist_infinity(model, -lo), m_max).w_ample &&
            is_w_ample(twist_infinity(model, lo), m_max).w_ample;
  cert.relation = "all";
  cert.pass = ok;
  cert.verdict = ok ? "pass" : "fail";
  cert.lhs = Json(rat_to_string(lo));
  cert.rhs = Json("0");
  cert.details["lambda_hat"] = rat_to_string(lo);
  cert.details["witness_m"] = base.witness_m ? Json(*base.witness_m) : Json();
  cert.details["rows"] = Json::array({Json{{"name", "open_ball"}, {"ok", ok}}});
  cert.inputs_digest = digest_of(Json{{"model", model_digest(model)}, {"m_max", m_max}});
  return cert;
}

}  // namespace adok
