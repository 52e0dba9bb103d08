#include <adok/lattice/convex.hpp>
#include <adok/okounkov/hullvol.hpp>

#include <algorithm>
#include <stdexcept>

namespace adok {

namespace {

Rat det2(const Rat& a, const Rat& b, const Rat& c, const Rat& d) { return a * d - b * c; }

Rat det3(const RatVec& a, const RatVec& b, const RatVec& c) {
  return a[0] * det2(b[1], b[2], c[1], c[2]) - a[1] * det2(b[0], b[2], c[0], c[2]) +
         a[2] * det2(b[0], b[1], c[0], c[1]);
}

Rat polygon_area(std::vector<RatVec> pts) {
  // Monotone chain hull, then the shoelace formula.
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return 0;
  auto cross = [](const RatVec& o, const RatVec& a, const RatVec& b) {
    return det2(a[0] - o[0], a[1] - o[1], b[0] - o[0], b[1] - o[1]);
  };
  std::vector<RatVec> h(2 * pts.size());
  size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p).sign() <= 0) --k;
    h[k++] = p;
  }
  size_t lower = k + 1;
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (k >= lower && cross(h[k - 2], h[k - 1], *it).sign() <= 0) --k;
    h[k++] = *it;
  }
  h.resize(k - 1);
  Rat area = 0;
  for (size_t i = 0; i < h.size(); ++i) {
    const auto& p = h[i];
    const auto& q = h[(i + 1) % h.size()];
    area += det2(p[0], p[1], q[0], q[1]);
  }
  return abs(area) / 2;
}

Rat volume3(const std::vector<RatVec>& pts) {
  ConvexBody body = ConvexBody::from_points(pts);
  if (body.affine_dim() < 3) return 0;
  // Centroid of the generators is interior enough for a facet fan.
  RatVec c(3, Rat(0));
  for (const auto& p : body.generators())
    for (int i = 0; i < 3; ++i) c[i] += p[i];
  for (int i = 0; i < 3; ++i) c[i] /= static_cast<long>(body.generators().size());
  Rat vol = 0;
  for (const auto& f : body.facets()) {
    // Points on this facet.
    std::vector<RatVec> on;
    for (const auto& p : body.generators())
      if (dot(f.normal, p) == f.offset) on.push_back(p);
    if (on.size() < 3) continue;
    // Order around the facet centroid in the facet plane.
    RatVec fc(3, Rat(0));
    for (const auto& p : on)
      for (int i = 0; i < 3; ++i) fc[i] += p[i];
    for (int i = 0; i < 3; ++i) fc[i] /= static_cast<long>(on.size());
    RatVec a1(3);
    for (int i = 0; i < 3; ++i) a1[i] = on[0][i] - fc[i];
    RatVec a2 = {f.normal[1] * a1[2] - f.normal[2] * a1[1],
                 f.normal[2] * a1[0] - f.normal[0] * a1[2],
                 f.normal[0] * a1[1] - f.normal[1] * a1[0]};
    auto plane_xy = [&](const RatVec& p) {
      RatVec d(3);
      for (int i = 0; i < 3; ++i) d[i] = p[i] - fc[i];
      return std::make_pair(dot(d, a1), dot(d, a2));
    };
    auto angle_less = [&](const RatVec& p, const RatVec& q) {
      auto [px, py] = plane_xy(p);
      auto [qx, qy] = plane_xy(q);
      auto half = [](const Rat& x, const Rat& y) { return y.sign() < 0 || (y == 0 && x.sign() < 0) ? 1 : 0; };
      int hp = half(px, py), hq = half(qx, qy);
      if (hp != hq) return hp < hq;
      return Rat(px * qy - py * qx).sign() > 0;
    };
    std::sort(on.begin(), on.end(), angle_less);
    for (size_t i = 0; i < on.size(); ++i) {
      const auto& p = on[i];
      const auto& q = on[(i + 1) % on.size()];
      RatVec u(3), v(3), w(3);
      for (int t = 0; t < 3; ++t) {
        u[t] = p[t] - c[t];
        v[t] = q[t] - c[t];
        w[t] = fc[t] - c[t];
      }
      vol += abs(det3(u, v, w));
    }
  }
  return vol / 6;
}

}  // namespace

Rat hull_volume(const std::vector<RatVec>& points) {
  if (points.empty()) return 0;
  const size_t dim = points.front().size();
  if (dim == 0) return 0;
  if (dim == 1) {
    Rat lo = points.front()[0], hi = lo;
    for (const auto& p : points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return hi - lo;
  }
  if (dim == 2) return polygon_area(points);
  if (dim == 3) return volume3(points);
  throw std::domain_error("hull_volume: supported in dimensions 0..3");
}

}  // namespace adok
