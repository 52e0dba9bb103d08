#include <adok/core/logreal.hpp>

#include <mpfr.h>

#include <cctype>
#include <sstream>

namespace adok {

namespace {

// Evaluates c0 + sum c_p log(p) as an enclosure at the given precision.
struct MpfrIv {
  mpfr_t lo, hi;
  explicit MpfrIv(mpfr_prec_t prec) {
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
  }
  ~MpfrIv() {
    mpfr_clear(lo);
    mpfr_clear(hi);
  }
  MpfrIv(const MpfrIv&) = delete;
};

void eval_enclosure(const Rat& c0, const std::map<long, Rat>& logs, mpfr_prec_t prec,
                    MpfrIv& acc) {
  mpfr_set_q(acc.lo, c0.backend().data(), MPFR_RNDD);
  mpfr_set_q(acc.hi, c0.backend().data(), MPFR_RNDU);
  mpfr_t lgl, lgu, tl, tu;
  mpfr_inits2(prec, lgl, lgu, tl, tu, (mpfr_ptr) nullptr);
  for (const auto& [p, c] : logs) {
    mpfr_set_ui(lgl, static_cast<unsigned long>(p), MPFR_RNDD);
    mpfr_log(lgl, lgl, MPFR_RNDD);
    mpfr_set_ui(lgu, static_cast<unsigned long>(p), MPFR_RNDU);
    mpfr_log(lgu, lgu, MPFR_RNDU);
    if (c.sign() >= 0) {
      mpfr_mul_q(tl, lgl, c.backend().data(), MPFR_RNDD);
      mpfr_mul_q(tu, lgu, c.backend().data(), MPFR_RNDU);
    } else {
      mpfr_mul_q(tl, lgu, c.backend().data(), MPFR_RNDD);
      mpfr_mul_q(tu, lgl, c.backend().data(), MPFR_RNDU);
    }
    mpfr_add(acc.lo, acc.lo, tl, MPFR_RNDD);
    mpfr_add(acc.hi, acc.hi, tu, MPFR_RNDU);
  }
  mpfr_clears(lgl, lgu, tl, tu, (mpfr_ptr) nullptr);
}

}  // namespace

void LogReal::prune() {
  for (auto it = logs_.begin(); it != logs_.end();) {
    if (it->second == 0)
      it = logs_.erase(it);
    else
      ++it;
  }
}

LogReal LogReal::log_prime(long p) {
  if (!is_prime(p)) throw std::domain_error("log_prime: not a prime: " + std::to_string(p));
  LogReal x;
  x.logs_[p] = 1;
  return x;
}

LogReal LogReal::log_of(const Rat& q) {
  if (q.sign() <= 0) throw std::domain_error("log_of: positive rational required");
  LogReal x;
  for (const auto& [p, e] : factor(num(q))) x.logs_[p] += e;
  for (const auto& [p, e] : factor(den(q))) x.logs_[p] -= e;
  x.prune();
  return x;
}

LogReal LogReal::operator+(const LogReal& o) const {
  LogReal r = *this;
  r.c0_ += o.c0_;
  for (const auto& [p, c] : o.logs_) r.logs_[p] += c;
  r.prune();
  return r;
}

LogReal LogReal::operator-(const LogReal& o) const { return *this + (-o); }

LogReal LogReal::operator-() const {
  LogReal r;
  r.c0_ = -c0_;
  for (const auto& [p, c] : logs_) r.logs_[p] = -c;
  return r;
}

LogReal LogReal::operator*(const Rat& s) const {
  LogReal r;
  if (s == 0) return r;
  r.c0_ = c0_ * s;
  for (const auto& [p, c] : logs_) r.logs_[p] = c * s;
  return r;
}

int LogReal::sign() const {
  if (logs_.empty()) return c0_.sign();
  for (mpfr_prec_t prec = 64; prec <= 1 << 14; prec *= 2) {
    MpfrIv acc(prec);
    eval_enclosure(c0_, logs_, prec, acc);
    if (mpfr_sgn(acc.lo) > 0) return 1;
    if (mpfr_sgn(acc.hi) < 0) return -1;
  }
  // Nonzero coefficient vectors evaluate to a nonzero real (the logs of the
  // primes together with 1 are linearly independent over Q), so the loop
  // above must separate from zero.
  throw std::logic_error("LogReal::sign: precision exhausted on " + str());
}

Int LogReal::floor_div_log(long p) const {
  LogReal lp = log_prime(p);
  Interval iv = to_interval();
  Interval lpv = lp.to_interval();
  Int k(static_cast<long long>(std::floor(iv.mid() / lpv.mid())));
  // Certify k*log(p) <= x < (k+1)*log(p) by exact sign tests.
  while ((*this - lp * Rat(k)).sign() < 0) --k;
  while ((*this - lp * Rat(k + 1)).sign() >= 0) ++k;
  return k;
}

Interval LogReal::to_interval() const {
  MpfrIv acc(128);
  eval_enclosure(c0_, logs_, 128, acc);
  return {mpfr_get_d(acc.lo, MPFR_RNDD), mpfr_get_d(acc.hi, MPFR_RNDU)};
}

std::string LogReal::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (c0_ != 0) {
    os << rat_to_string(c0_);
    first = false;
  }
  for (const auto& [p, c] : logs_) {
    if (!first && c.sign() > 0) os << "+";
    if (c == 1) {
    } else if (c == -1) {
      os << "-";
    } else {
      os << rat_to_string(c) << "*";
    }
    os << "log(" << p << ")";
    first = false;
  }
  return os.str();
}

LogReal LogReal::parse(const std::string& s) {
  // Grammar: term ( ('+'|'-') term )*, term = rational | [rational'*'] 'log(' int ')'.
  LogReal out;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip_ws();
  if (i == s.size()) throw std::invalid_argument("malformed value: empty string");
  bool first = true;
  while (true) {
    skip_ws();
    if (i == s.size()) break;
    int sgn = 1;
    if (s[i] == '+' || s[i] == '-') {
      sgn = s[i] == '-' ? -1 : 1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw std::invalid_argument("malformed value: '" + s + "'");
    }
    first = false;
    // Optional rational prefix.
    size_t j = i;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
    Rat coeff = 1;
    bool have_coeff = j > i;
    if (have_coeff) {
      coeff = rat_from_string(s.substr(i, j - i));
      i = j;
      skip_ws();
    }
    if (i < s.size() && (s[i] == '*' || s[i] == 'l')) {
      if (s[i] == '*') {
        ++i;
        skip_ws();
      }
      if (s.compare(i, 4, "log(") != 0)
        throw std::invalid_argument("malformed value: '" + s + "'");
      i += 4;
      size_t close = s.find(')', i);
      if (close == std::string::npos)
        throw std::invalid_argument("malformed value: '" + s + "'");
      Rat arg = rat_from_string(s.substr(i, close - i));
      i = close + 1;
      out += LogReal::log_of(arg) * (coeff * sgn);
    } else {
      if (!have_coeff) throw std::invalid_argument("malformed value: '" + s + "'");
      out += LogReal(coeff * sgn);
    }
  }
  return out;
}

Interval log_interval(const Int& z) {
  if (z <= 0) throw std::domain_error("log_interval: positive input required");
  mpfr_t lo, hi;
  mpfr_inits2(128, lo, hi, (mpfr_ptr) nullptr);
  mpfr_set_z(lo, z.backend().data(), MPFR_RNDD);
  mpfr_log(lo, lo, MPFR_RNDD);
  mpfr_set_z(hi, z.backend().data(), MPFR_RNDU);
  mpfr_log(hi, hi, MPFR_RNDU);
  Interval out{mpfr_get_d(lo, MPFR_RNDD), mpfr_get_d(hi, MPFR_RNDU)};
  mpfr_clears(lo, hi, (mpfr_ptr) nullptr);
  return out;
}

Interval log_interval_rat(const Rat& q) {
  return log_interval(num(q)) - log_interval(den(q));
}

}  // namespace adok
