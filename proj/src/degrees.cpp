#include <adok/model/degrees.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

namespace adok {

namespace {

Rat factorial(int k) {
  Rat f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Int binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// Geometric degree of O(d) along a k-dimensional face, recovered from the
// k-th finite difference of the monomial-count sequence.
Int face_degree_by_counting(int d, int k) {
  std::vector<Int> c;
  for (int t = 0; t <= k; ++t) c.push_back(binom(static_cast<long>(t) * d + k, k));
  for (int step = 0; step < k; ++step)
    for (size_t i = c.size() - 1; i >= 1; --i) c[i] -= c[i - 1];
  return c.back();
}

// Local lattice chart of a coordinate face: beta in d*Delta_k maps to the
// moment-polytope point u.
struct FaceChart {
  int n, d, k;
  Face face;

  RatVec to_u(const RatVec& beta) const {
    RatVec u(n, Rat(0));
    Rat rest = d;
    for (int i = 1; i <= k; ++i) rest -= beta[i - 1];
    for (int i = 1; i <= k; ++i)
      if (face[i] >= 1) u[face[i] - 1] = beta[i - 1];
    if (face[0] >= 1) u[face[0] - 1] = rest;
    return u;
  }

  std::vector<RatVec> unit_vertices() const {
    std::vector<RatVec> vs;
    vs.push_back(RatVec(k, Rat(0)));
    for (int i = 0; i < k; ++i) {
      RatVec v(k, Rat(0));
      v[i] = d;
      vs.push_back(v);
    }
    return vs;
  }
};

struct PlaceEval {
  Place v;
  std::vector<AffinePiece> pieces;
};

std::vector<PlaceEval> gather_places(const DiagonalModel& model) {
  std::vector<PlaceEval> out;
  for (const auto& v : model.places()) {
    WeightFunction w = model.weight_at(v);
    if (!w.is_zero()) out.push_back(PlaceEval{v, w.pieces()});
  }
  return out;
}

LogReal eval_piece_u(const AffinePiece& pc, const RatVec& u) {
  LogReal s = pc.offset;
  for (size_t i = 0; i < pc.gradient.size(); ++i)
    if (!pc.gradient[i].is_zero()) s += pc.gradient[i] * u[i];
  return s;
}

struct CellEval {
  // Per place: index of a piece affine-dominant on the cell, or -1.
  std::vector<int> dominant;
  // Exact total weight at each vertex when all places are dominant.
  std::vector<LogReal> f_exact;
  Interval f_range;  // valid enclosure of the range of Phi on the cell
  bool affine = false;
};

CellEval evaluate_cell(const std::vector<PlaceEval>& places, const FaceChart& chart,
                       const std::vector<RatVec>& verts) {
  CellEval out;
  const size_t nv = verts.size();
  std::vector<RatVec> us;
  us.reserve(nv);
  for (const auto& b : verts) us.push_back(chart.to_u(b));
  out.affine = true;
  out.f_exact.assign(nv, LogReal());
  Interval lo_sum = Interval::exact(0), hi_sum = Interval::exact(0);
  for (const auto& pe : places) {
    // Piece values at the vertices.
    std::vector<std::vector<LogReal>> val(pe.pieces.size(), std::vector<LogReal>(nv));
    for (size_t pi = 0; pi < pe.pieces.size(); ++pi)
      for (size_t vi = 0; vi < nv; ++vi) val[pi][vi] = eval_piece_u(pe.pieces[pi], us[vi]);
    int dom = -1;
    for (size_t pi = 0; pi < pe.pieces.size() && dom < 0; ++pi) {
      bool dominant = true;
      for (size_t qi = 0; qi < pe.pieces.size() && dominant; ++qi) {
        if (qi == pi) continue;
        for (size_t vi = 0; vi < nv; ++vi)
          if ((val[pi][vi] - val[qi][vi]).sign() > 0) {
            dominant = false;
            break;
          }
      }
      if (dominant) dom = static_cast<int>(pi);
    }
    out.dominant.push_back(dom);
    if (dom >= 0) {
      for (size_t vi = 0; vi < nv; ++vi) out.f_exact[vi] += val[dom][vi];
      Interval plo = val[dom][0].to_interval(), phi = plo;
      for (size_t vi = 1; vi < nv; ++vi) {
        Interval t = val[dom][vi].to_interval();
        plo.lo = std::min(plo.lo, t.lo);
        phi.hi = std::max(phi.hi, t.hi);
      }
      lo_sum += Interval{plo.lo, plo.lo};
      hi_sum += Interval{phi.hi, phi.hi};
    } else {
      out.affine = false;
      // Range of min_k A_k over the cell: [min_k min_v, min_k max_v].
      double lo = 0, hi = 0;
      bool first = true;
      for (size_t pi = 0; pi < pe.pieces.size(); ++pi) {
        Interval pl = val[pi][0].to_interval(), ph = pl;
        for (size_t vi = 1; vi < nv; ++vi) {
          Interval t = val[pi][vi].to_interval();
          pl.lo = std::min(pl.lo, t.lo);
          ph.hi = std::max(ph.hi, t.hi);
        }
        if (first || pl.lo < lo) lo = pl.lo;
        if (first || ph.hi < hi) hi = ph.hi;
        first = false;
      }
      lo_sum += Interval{lo, lo};
      hi_sum += Interval{hi, hi};
    }
  }
  out.f_range = Interval{lo_sum.lo, hi_sum.hi};
  return out;
}

std::pair<std::vector<RatVec>, std::vector<RatVec>> split_cell(const std::vector<RatVec>& verts) {
  // Split along the longest edge at its midpoint.
  size_t bi = 0, bj = 1;
  Rat best = -1;
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = i + 1; j < verts.size(); ++j) {
      Rat d2 = 0;
      for (size_t t = 0; t < verts[i].size(); ++t) {
        Rat d = verts[i][t] - verts[j][t];
        d2 += d * d;
      }
      if (d2 > best) {
        best = d2;
        bi = i;
        bj = j;
      }
    }
  RatVec mid(verts[bi].size());
  for (size_t t = 0; t < mid.size(); ++t) mid[t] = (verts[bi][t] + verts[bj][t]) / 2;
  auto a = verts, b = verts;
  a[bi] = mid;
  b[bj] = mid;
  return {a, b};
}

}  // namespace

IntegralResult integral_phi_plus(const DiagonalModel& model, const Face& face, double tol) {
  const int k = static_cast<int>(face.size()) - 1;
  FaceChart chart{model.dim, model.degree, k, face};
  auto places = gather_places(model);

  if (k == 0) {
    RatVec u = chart.to_u({});
    LogReal val;
    for (const auto& pe : places) {
      LogReal best = eval_piece_u(pe.pieces[0], u);
      for (size_t i = 1; i < pe.pieces.size(); ++i)
        best = min(best, eval_piece_u(pe.pieces[i], u));
      val += best;
    }
    LogReal pos = val.max0();
    return IntegralResult{pos.to_interval(), pos};
  }
  Rat vol_total = Rat(pow_int(Int(model.degree), static_cast<unsigned long>(k))) / factorial(k);
  if (vol_total == 0 || places.empty())
    return IntegralResult{Interval::exact(0), LogReal()};

  LogReal exact_acc;
  bool all_exact = true;
  Interval iv_acc = Interval::exact(0);
  double tol_f = tol / vol_total.convert_to<double>();

  struct Job {
    std::vector<RatVec> verts;
    Rat frac;
    int depth;
  };
  std::deque<Job> queue;
  queue.push_back(Job{chart.unit_vertices(), Rat(1), 0});
  const int max_depth = 40;
  const size_t max_cells = 200000;
  size_t processed = 0;

  while (!queue.empty()) {
    Job job = std::move(queue.front());
    queue.pop_front();
    if (++processed > max_cells) {
      // Flush the remaining cells with their coarse bounds.
      CellEval ce = evaluate_cell(places, chart, job.verts);
      Interval contrib = ce.f_range.max0();
      Rat cvol = vol_total * job.frac;
      iv_acc += contrib.scale(cvol.convert_to<double>());
      all_exact = false;
      continue;
    }
    CellEval ce = evaluate_cell(places, chart, job.verts);
    if (ce.affine) {
      int neg = 0, pos = 0;
      for (const auto& f : ce.f_exact) {
        int s = f.sign();
        if (s >= 0) ++pos;
        if (s <= 0) ++neg;
      }
      if (neg == static_cast<int>(ce.f_exact.size())) continue;  // Phi <= 0: no mass
      if (pos == static_cast<int>(ce.f_exact.size())) {
        LogReal mean;
        for (const auto& f : ce.f_exact) mean += f;
        mean = mean * (Rat(1) / Rat(static_cast<long>(ce.f_exact.size())));
        exact_acc += mean * (vol_total * job.frac);
        continue;
      }
    }
    Interval clipped = ce.f_range.max0();
    if (clipped.width() <= tol_f || job.depth >= max_depth) {
      Rat cvol = vol_total * job.frac;
      iv_acc += clipped.scale(cvol.convert_to<double>());
      if (clipped.width() > 0) all_exact = false;
      continue;
    }
    auto [a, b] = split_cell(job.verts);
    queue.push_back(Job{std::move(a), job.frac / 2, job.depth + 1});
    queue.push_back(Job{std::move(b), job.frac / 2, job.depth + 1});
  }

  IntegralResult out;
  out.value = exact_acc.to_interval() + iv_acc;
  if (all_exact && iv_acc.lo == 0 && iv_acc.hi == 0) out.exact = exact_acc;
  return out;
}

NefReport is_nef(const DiagonalModel& model, int grid_resolution) {
  NefReport rep;
  // Weight functions are concave by construction; the decision rests on the
  // pointwise metric where one is available.
  bool family_everywhere = true;
  for (const auto& v : model.places())
    if (!model.max_family.count(v)) family_everywhere = false;
  if (model.max_family.empty() || !family_everywhere) {
    rep.status = NefStatus::undetermined;
    rep.note = "no pointwise metric data; structural evidence only";
    return rep;
  }
  // Torus-fixed points.
  for (int j = 0; j <= model.dim; ++j) {
    ProjPoint x(model.dim + 1, Rat(0));
    x[j] = 1;
    if (height(model, x).sign() < 0) {
      rep.status = NefStatus::not_nef;
      rep.witness = x;
      rep.note = "negative height at a torus-fixed point";
      return rep;
    }
  }
  // Rational sample grid.
  std::vector<ProjPoint> samples;
  std::function<void(size_t, ProjPoint&)> rec = [&](size_t i, ProjPoint& cur) {
    if (i == cur.size()) {
      for (const auto& c : cur)
        if (c != 0) {
          samples.push_back(cur);
          return;
        }
      return;
    }
    for (int t = 0; t <= grid_resolution; ++t) {
      cur[i] = t;
      rec(i + 1, cur);
    }
    cur[i] = 0;
  };
  ProjPoint cur(model.dim + 1, Rat(0));
  rec(0, cur);
  for (const auto& x : samples)
    if (height(model, x).sign() < 0) {
      rep.status = NefStatus::not_nef;
      rep.witness = x;
      rep.note = "negative height at a sampled rational point";
      return rep;
    }
  rep.status = NefStatus::nef;
  rep.note = "heights nonnegative at fixed points and sample grid";
  return rep;
}

LogReal height(const DiagonalModel& model, const ProjPoint& x) {
  if (x.size() != static_cast<size_t>(model.dim) + 1)
    throw std::invalid_argument("height: point arity mismatch");
  int j = -1;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) {
      j = static_cast<int>(i);
      break;
    }
  if (j < 0) throw std::invalid_argument("height: zero point");
  // Relevant places: the family's, plus every prime in the coordinates.
  std::vector<Place> vs;
  vs.push_back(Place::inf());
  auto add_prime = [&](long p) {
    Place v = Place::finite(p);
    if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
  };
  for (const auto& [v, fam] : model.max_family) {
    if (!v.infinite) add_prime(v.p);
    (void)fam;
  }
  for (const auto& c : x)
    if (c != 0) {
      for (const auto& [p, e] : factor(num(abs(c)))) add_prime(p);
      for (const auto& [p, e] : factor(den(c))) add_prime(p);
    }
  LogReal h;
  for (const auto& v : vs) {
    RatVec fam(model.dim + 1, Rat(1));
    auto it = model.max_family.find(v);
    if (it != model.max_family.end()) fam = it->second;
    if (v.infinite) {
      Rat best = 0;
      for (size_t i = 0; i < x.size(); ++i) {
        Rat t = fam[i] * abs(x[i]);
        if (t > best) best = t;
      }
      h += LogReal::log_of(best) - LogReal::log_of(abs(x[j]));
    } else {
      // |y|_p = p^{-v_p(y)}; log max_k(a_k |x_k|_p) is a max of LogReals.
      bool first = true;
      LogReal best;
      for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        LogReal t = LogReal::log_of(fam[i]) - LogReal::log_prime(v.p) * Rat(val_p(x[i], v.p));
        best = first ? t : max(best, t);
        first = false;
      }
      h += best + LogReal::log_prime(v.p) * Rat(val_p(x[j], v.p));
    }
  }
  return h * Rat(model.degree);
}

IntegralResult adeg_diagonal_nef(const DiagonalModel& model, const Face& face,
                                 bool allow_undetermined) {
  NefReport nef = is_nef(model);
  if (nef.status == NefStatus::not_nef)
    throw std::domain_error("adeg_diagonal_nef: model is not nef (" + nef.note + ")");
  if (nef.status == NefStatus::undetermined && !allow_undetermined)
    throw std::domain_error("adeg_diagonal_nef: nef status undetermined; pass the override");
  const int k = static_cast<int>(face.size()) - 1;
  IntegralResult integral = integral_phi_plus(model, face);
  Rat fact = factorial(k + 1);
  IntegralResult out;
  out.value = integral.value.scale(fact.convert_to<double>());
  if (integral.exact) out.exact = *integral.exact * fact;
  return out;
}

BoundResult weight_max_plus(const DiagonalModel& model, const Place& v, const Face& face) {
  const int k = static_cast<int>(face.size()) - 1;
  FaceChart chart{model.dim, model.degree, k, face};
  WeightFunction w = model.weight_at(v);
  if (w.is_zero()) return BoundResult{Interval::exact(0), LogReal()};
  auto verts = chart.unit_vertices();
  if (w.pieces().size() == 1) {
    // Affine: the maximum sits at a vertex.
    LogReal best = eval_piece_u(w.pieces()[0], chart.to_u(verts[0]));
    for (size_t i = 1; i < verts.size(); ++i)
      best = max(best, eval_piece_u(w.pieces()[0], chart.to_u(verts[i])));
    LogReal pos = best.max0();
    return BoundResult{pos.to_interval(), pos};
  }
  // Branch and bound for a min-of-affines maximum.
  std::vector<PlaceEval> single{PlaceEval{v, w.pieces()}};
  struct Node {
    std::vector<RatVec> verts;
    double ub;
  };
  std::deque<Node> queue;
  double lb = 0.0;
  auto push = [&](std::vector<RatVec> cv) {
    CellEval ce = evaluate_cell(single, chart, cv);
    // Exact evaluations at the vertices raise the lower bound.
    for (const auto& b : cv) {
      RatVec u = chart.to_u(b);
      LogReal fv = w.eval(u);
      lb = std::max(lb, fv.to_interval().lo);
    }
    queue.push_back(Node{std::move(cv), ce.f_range.hi});
  };
  push(verts);
  double ub = queue.front().ub;
  for (int iter = 0; iter < 4000 && !queue.empty(); ++iter) {
    // Take the node with the largest upper bound.
    auto it = std::max_element(queue.begin(), queue.end(),
                               [](const Node& a, const Node& b) { return a.ub < b.ub; });
    Node node = std::move(*it);
    queue.erase(it);
    if (node.ub <= lb + 1e-9) {
      ub = std::max(lb, node.ub);
      queue.clear();
      break;
    }
    auto [a, b] = split_cell(node.verts);
    push(std::move(a));
    push(std::move(b));
    ub = lb;
    for (const auto& n : queue) ub = std::max(ub, n.ub);
  }
  double final_ub = lb;
  for (const auto& n : queue) final_ub = std::max(final_ub, n.ub);
  Interval iv{std::max(0.0, lb), std::max(0.0, std::max(final_ub, ub))};
  return BoundResult{iv, std::nullopt};
}

BoundResult delta_upper(const DiagonalModel& model, const Face& face) {
  const int k = static_cast<int>(face.size()) - 1;
  BoundResult out{Interval::exact(0), LogReal()};
  for (const auto& v : model.places()) {
    BoundResult bv = weight_max_plus(model, v, face);
    out.value += bv.value;
    if (out.exact && bv.exact)
      *out.exact += *bv.exact;
    else
      out.exact.reset();
  }
  out.value = out.value.scale(static_cast<double>(k + 1));
  if (out.exact) *out.exact = *out.exact * Rat(k + 1);
  return out;
}

VerticalDegreeResult vertical_degree_identity(const DiagonalModel& model, const Face& face,
                                              long p, bool allow_undetermined) {
  VerticalDegreeResult out;
  const int k = static_cast<int>(face.size()) - 1;
  IntegralResult base = adeg_diagonal_nef(model, face, allow_undetermined);
  // The vertical twist adds a nonnegative constant at p, which preserves
  // nef-ness but drops the pointwise-metric data at that place.
  IntegralResult twisted = adeg_diagonal_nef(twist_finite(model, p, 1), face, true);
  Rat inv = Rat(1) / Rat(k + 1);
  out.lhs.value = (twisted.value - base.value).scale(inv.convert_to<double>());
  if (base.exact && twisted.exact) out.lhs.exact = (*twisted.exact - *base.exact) * inv;
  Int deg = face_degree_by_counting(model.degree, k);
  out.rhs = LogReal::log_prime(p) * Rat(deg);
  if (out.lhs.exact) out.equal_exact = (*out.lhs.exact - out.rhs).sign() == 0;
  Interval rhs_iv = out.rhs.to_interval();
  out.consistent = out.lhs.value.lo <= rhs_iv.hi && rhs_iv.lo <= out.lhs.value.hi;
  return out;
}

}  // namespace adok
