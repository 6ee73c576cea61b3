#include "adelic/numeric/log_scale.hpp"

#include <sstream>

#include "adelic/errors.hpp"
#include "adelic/numeric/integers.hpp"

namespace adelic {

LogLinear LogLinear::log_of(const mpz_class& n) {
  if (n <= 0) throw InvalidArgument("log of a nonpositive integer");
  LogLinear r;
  if (n == 1) return r;
  for (const auto& [p, e] : factor_integer(n)) r.terms_[p] += e;
  return r;
}

LogLinear LogLinear::log_of(const mpq_class& q) {
  if (q <= 0) throw InvalidArgument("log of a nonpositive rational");
  return log_of(q.get_num()) - log_of(q.get_den());
}

LogLinear LogLinear::from_interval(const Interval& r) {
  LogLinear out;
  out.rem_ = r;
  return out;
}

LogLinear LogLinear::rational(const mpq_class& q) {
  LogLinear out;
  out.const_ = q;
  return out;
}

bool LogLinear::is_exact() const { return rem_.is_point() && rem_.contains(mpq_class(0)); }

Interval LogLinear::eval(mpfr_prec_t prec) const {
  Interval acc(const_, prec);
  for (const auto& [k, c] : terms_) acc += Interval(c, prec) * Interval::log_of(k, prec);
  acc += rem_;
  return acc;
}

LogLinear& LogLinear::operator+=(const LogLinear& o) {
  for (const auto& [k, c] : o.terms_) {
    mpq_class& slot = terms_[k];
    slot += c;
    if (slot == 0) terms_.erase(k);
  }
  const_ += o.const_;
  rem_ += o.rem_;
  return *this;
}

LogLinear& LogLinear::operator-=(const LogLinear& o) { return *this += -o; }

LogLinear& LogLinear::operator*=(const mpq_class& q) {
  if (q == 0) {
    *this = LogLinear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= q;
  const_ *= q;
  rem_ *= Interval(q, rem_.prec());
  return *this;
}

LogLinear LogLinear::operator-() const {
  LogLinear r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  r.const_ = -const_;
  r.rem_ = -rem_;
  return r;
}

LogLinear LogLinear::scaled(const Interval& f, mpfr_prec_t prec) const {
  return from_interval(eval(prec) * f);
}

std::string LogLinear::to_string(int digits) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    os << c.get_str() << "*log(" << k.get_str() << ")";
    first = false;
  }
  if (const_ != 0) {
    if (!first) os << " + ";
    os << const_.get_str();
    first = false;
  }
  if (!is_exact()) {
    if (!first) os << " + ";
    os << "[" << rem_.to_string(digits) << "]";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

int compare(const LogLinear& a, const LogLinear& b, mpfr_prec_t start_prec, mpfr_prec_t max_prec) {
  LogLinear d = a - b;
  if (d.terms().empty() && d.is_exact()) return d.constant() > 0 ? 1 : (d.constant() < 0 ? -1 : 0);
  for (mpfr_prec_t prec = start_prec; prec <= max_prec; prec *= 2) {
    Interval v = d.eval(prec);
    if (v.is_positive()) return 1;
    if (v.is_negative()) return -1;
  }
  throw PrecisionExhausted("cannot decide the sign of " + d.to_string());
}

LogScaleReal::LogScaleReal(int sign, LogLinear log_mag)
    : sign_(sign > 0 ? 1 : (sign < 0 ? -1 : 0)), log_mag_(std::move(log_mag)) {
  if (sign_ == 0) log_mag_ = LogLinear();
}

LogScaleReal LogScaleReal::from_integer(const mpz_class& n) {
  if (n == 0) return {};
  return LogScaleReal(sgn(n), LogLinear::log_of(mpz_class(abs(n))));
}

LogScaleReal LogScaleReal::from_rational(const mpq_class& q) {
  if (q == 0) return {};
  return LogScaleReal(sgn(q), LogLinear::log_of(mpq_class(abs(q))));
}

LogScaleReal LogScaleReal::from_interval(const Interval& x) {
  if (x.is_point() && x.contains(mpq_class(0))) return {};
  if (x.contains_zero()) throw PrecisionExhausted("sign of the enclosure is undecided");
  return LogScaleReal(x.is_positive() ? 1 : -1, LogLinear::from_interval(log(abs(x))));
}

Interval LogScaleReal::log_magnitude(mpfr_prec_t prec) const {
  if (sign_ == 0) throw InvalidArgument("log magnitude of zero");
  return log_mag_.eval(prec);
}

Interval LogScaleReal::value(mpfr_prec_t prec) const {
  if (sign_ == 0) return Interval::zero(prec);
  Interval v = exp(log_mag_.eval(prec));
  return sign_ > 0 ? v : -v;
}

LogScaleReal& LogScaleReal::operator*=(const LogScaleReal& o) {
  sign_ *= o.sign_;
  if (sign_ == 0) {
    log_mag_ = LogLinear();
  } else {
    log_mag_ += o.log_mag_;
  }
  return *this;
}

LogScaleReal& LogScaleReal::operator/=(const LogScaleReal& o) {
  if (o.sign_ == 0) throw InvalidArgument("division by zero");
  sign_ *= o.sign_;
  if (sign_ != 0) log_mag_ -= o.log_mag_;
  return *this;
}

LogScaleReal LogScaleReal::pow(const mpq_class& q) const {
  if (sign_ == 0) {
    if (q <= 0) throw InvalidArgument("nonpositive power of zero");
    return {};
  }
  if (sign_ < 0 && q != 1) throw InvalidArgument("power of a negative log-scale value");
  return LogScaleReal(sign_, log_mag_ * q);
}

LogScaleReal LogScaleReal::add(const LogScaleReal& a, const LogScaleReal& b, mpfr_prec_t prec) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  int c;
  if (a.sign_ == b.sign_) {
    // Either order gives a valid enclosure; pick the larger midpoint.
    c = a.log_mag_.eval(prec).mid_d() >= b.log_mag_.eval(prec).mid_d() ? 1 : -1;
  } else {
    c = compare(a.log_mag_, b.log_mag_, prec);
  }
  const LogScaleReal& big = c >= 0 ? a : b;
  const LogScaleReal& small = c >= 0 ? b : a;
  if (big.sign_ != small.sign_ && c == 0) return {};
  Interval ratio = exp(small.log_mag_.eval(prec) - big.log_mag_.eval(prec));
  Interval corr = big.sign_ == small.sign_ ? log1p(ratio) : log1p(-ratio);
  return LogScaleReal(big.sign_, big.log_mag_ + LogLinear::from_interval(corr));
}

std::string LogScaleReal::to_string(int digits) const {
  if (sign_ == 0) return "0";
  return std::string(sign_ < 0 ? "-" : "") + "exp(" + log_mag_.eval(256).to_string(digits) + ")";
}

int compare(const LogScaleReal& a, const LogScaleReal& b, mpfr_prec_t start_prec,
            mpfr_prec_t max_prec) {
  if (a.sign() != b.sign()) return a.sign() < b.sign() ? -1 : 1;
  if (a.sign() == 0) return 0;
  int c = compare(a.log_mag(), b.log_mag(), start_prec, max_prec);
  return a.sign() > 0 ? c : -c;
}

LogScaleReal max(const LogScaleReal& a, const LogScaleReal& b) {
  return compare(a, b) >= 0 ? a : b;
}

}  // namespace adelic
