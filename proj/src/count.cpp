#include <adok/core/logreal.hpp>
#include <adok/lattice/count.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace adok {

Int ball_axis_bound(const Rat& w, bool strict) {
  if (w.sign() <= 0) throw std::invalid_argument("ball: positive weights required");
  Rat r = 1 / w;
  Int f = floor_rat(r);
  if (strict && Rat(f) == r) --f;
  return f < 0 ? Int(0) : f;
}

namespace {

Int count_by_walk(const std::vector<Rat>& w, const std::vector<Int>& bound, bool strict) {
  const size_t n = w.size();
  Int total = 0;
  std::function<void(size_t, Rat, Int)> rec = [&](size_t i, Rat remaining, Int mult) {
    if (i == n) {
      total += mult;
      return;
    }
    // t = 0 always fits.
    rec(i + 1, remaining, mult);
    for (Int t = 1; t <= bound[i]; ++t) {
      Rat used = w[i] * Rat(t);
      int cmp = Rat(used - remaining).sign();
      if (strict ? cmp >= 0 : cmp > 0) break;
      rec(i + 1, remaining - used, mult * 2);
    }
  };
  rec(0, Rat(1), Int(1));
  return total;
}

std::optional<Int> count_by_dp(const std::vector<Rat>& w, bool strict,
                               const CountLimits& limits) {
  Int D = 1;
  for (const auto& wi : w) D = boost::multiprecision::lcm(D, den(wi));
  if (D > Int(limits.dp_capacity_limit)) return std::nullopt;
  unsigned long long cap = D.convert_to<unsigned long long>();
  if (strict) {
    if (cap == 0) return Int(1);
    cap -= 1;  // sum of scaled costs <= D - 1
  }
  if (w.size() * (cap + 1) > limits.dp_ops_limit) return std::nullopt;
  std::vector<Int> f(cap + 1, Int(0));
  f[0] = 1;
  std::vector<Int> s(cap + 1);
  for (const auto& wi : w) {
    Int ci = num(wi) * (D / den(wi));
    if (ci > Int(cap)) continue;  // dead coordinate
    unsigned long long c = ci.convert_to<unsigned long long>();
    // s[j] = sum_{t>=0} f[j - t*c]; g[j] = 2*s[j] - f[j].
    for (unsigned long long j = 0; j <= cap; ++j)
      s[j] = j >= c ? Int(f[j] + s[j - c]) : f[j];
    for (unsigned long long j = 0; j <= cap; ++j) f[j] = 2 * s[j] - f[j];
  }
  Int total = 0;
  for (unsigned long long j = 0; j <= cap; ++j) total += f[j];
  return total;
}

}  // namespace

CountResult count_weighted_l1(const BallSpec& ball, const CountLimits& limits) {
  CountResult out;
  const size_t n = ball.weights.size();
  std::vector<Int> bound(n);
  Int box = 1;
  bool box_small = true;
  for (size_t i = 0; i < n; ++i) {
    bound[i] = ball_axis_bound(ball.weights[i], ball.strict);
    if (bound[i] > 0) ++out.active_rank;
    box *= 2 * bound[i] + 1;
    if (box > Int(limits.enum_limit)) box_small = false;
  }
  if (out.active_rank == 0) {
    out.exact = 1;
    out.log_count = Interval::exact(0.0);
    return out;
  }
  if (box_small) {
    out.exact = count_by_walk(ball.weights, bound, ball.strict);
  } else {
    out.exact = count_by_dp(ball.weights, ball.strict, limits);
  }
  if (out.exact) {
    out.log_count = log_interval(*out.exact);
    return out;
  }

  // Certified interval: inscribed box with per-axis radius ~ R_i / N_active
  // inside, circumscribed axis box outside.
  Interval lo_log = Interval::exact(0.0), hi_log = Interval::exact(0.0);
  Rat budget = 0;
  std::vector<Int> small(n, Int(0));
  Rat nact = Rat(static_cast<long>(out.active_rank));
  for (size_t i = 0; i < n; ++i) {
    if (bound[i] == 0) continue;
    Rat r = 1 / ball.weights[i];
    small[i] = floor_rat(r / nact);
    budget += ball.weights[i] * Rat(small[i]);
  }
  // Trim until the inscribed box provably fits.
  while (ball.strict ? budget >= 1 : budget > 1) {
    size_t big = n;
    for (size_t i = 0; i < n; ++i)
      if (small[i] > 0 && (big == n || small[i] > small[big])) big = i;
    if (big == n) break;
    budget -= ball.weights[big];
    small[big] -= 1;
  }
  for (size_t i = 0; i < n; ++i) {
    if (bound[i] == 0) continue;
    if (small[i] > 0) lo_log += log_interval(2 * small[i] + 1);
    hi_log += log_interval(2 * bound[i] + 1);
  }
  // The longest axis segment is also inside the ball.
  Int bmax = *std::max_element(bound.begin(), bound.end());
  Interval axis = log_interval(2 * bmax + 1);
  if (axis.lo > lo_log.lo) lo_log = axis;
  out.log_count = {lo_log.lo, hi_log.hi};
  return out;
}

std::vector<std::vector<long>> enumerate_ball(const BallSpec& ball, unsigned long long limit) {
  const size_t n = ball.weights.size();
  std::vector<Int> bound(n);
  for (size_t i = 0; i < n; ++i) bound[i] = ball_axis_bound(ball.weights[i], ball.strict);
  std::vector<std::vector<long>> out;
  std::vector<long> cur(n, 0);
  std::function<void(size_t, Rat)> rec = [&](size_t i, Rat remaining) {
    if (i == n) {
      if (out.size() >= limit) throw std::domain_error("enumerate_ball: too many points");
      out.push_back(cur);
      return;
    }
    cur[i] = 0;
    rec(i + 1, remaining);
    for (Int t = 1; t <= bound[i]; ++t) {
      Rat used = ball.weights[i] * Rat(t);
      int cmp = Rat(used - remaining).sign();
      if (ball.strict ? cmp >= 0 : cmp > 0) break;
      cur[i] = t.convert_to<long>();
      rec(i + 1, remaining - used);
      cur[i] = -cur[i];
      rec(i + 1, remaining - used);
    }
    cur[i] = 0;
  };
  rec(0, Rat(1));
  return out;
}

}  // namespace adok
