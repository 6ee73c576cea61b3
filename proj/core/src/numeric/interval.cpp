#include "adelic/numeric/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "adelic/errors.hpp"

namespace adelic {

namespace {

// Scratch MPFR variable with RAII.
struct Tmp {
  explicit Tmp(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~Tmp() { mpfr_clear(v); }
  Tmp(const Tmp&) = delete;
  Tmp& operator=(const Tmp&) = delete;
  mpfr_t v;
};

void check_nan(const Interval& x) {
  if (mpfr_nan_p(x.lo()) || mpfr_nan_p(x.hi())) {
    throw PrecisionExhausted("interval operation produced NaN");
  }
}

}  // namespace

Interval::Interval(Uninit, mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval Interval::zero(mpfr_prec_t prec) { return Interval(Uninit{}, prec); }

Interval::Interval(long v, mpfr_prec_t prec) : Interval(Uninit{}, prec) {
  mpfr_set_si(lo_, v, MPFR_RNDD);
  mpfr_set_si(hi_, v, MPFR_RNDU);
}

Interval::Interval(const mpz_class& v, mpfr_prec_t prec) : Interval(Uninit{}, prec) {
  mpfr_set_z(lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, v.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const mpq_class& v, mpfr_prec_t prec) : Interval(Uninit{}, prec) {
  mpfr_set_q(lo_, v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, v.get_mpq_t(), MPFR_RNDU);
}

Interval Interval::from_double(double v, mpfr_prec_t prec) {
  Interval r = Interval::zero(prec);
  mpfr_set_d(r.lo_, v, MPFR_RNDD);
  mpfr_set_d(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::from_long_double(long double v, mpfr_prec_t prec) {
  Interval r = Interval::zero(prec);
  mpfr_set_ld(r.lo_, v, MPFR_RNDD);
  mpfr_set_ld(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::from_endpoints(double lo, double hi, mpfr_prec_t prec) {
  if (!(lo <= hi)) throw InvalidArgument("interval endpoints out of order");
  Interval r = Interval::zero(prec);
  mpfr_set_d(r.lo_, lo, MPFR_RNDD);
  mpfr_set_d(r.hi_, hi, MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r = Interval::zero(std::max(a.prec_, b.prec_));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::from_decimal(const std::string& text, mpfr_prec_t prec) {
  Interval r = Interval::zero(prec);
  char* end = nullptr;
  mpfr_strtofr(r.lo_, text.c_str(), &end, 10, MPFR_RNDD);
  if (text.empty() || end == text.c_str() || *end != '\0') {
    throw ParseError("not a decimal number: '" + text + "'");
  }
  mpfr_strtofr(r.hi_, text.c_str(), &end, 10, MPFR_RNDU);
  return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r = Interval::zero(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::euler_e(mpfr_prec_t prec) { return exp(Interval(1L, prec)); }

Interval Interval::log_of(const mpz_class& v, mpfr_prec_t prec) {
  return log(Interval(v, prec));
}

Interval Interval::log_of(const mpq_class& v, mpfr_prec_t prec) {
  return log(Interval(v, prec));
}

Interval::Interval(const Interval& other) : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other) {}

Interval& Interval::operator=(const Interval& other) {
  if (this == &other) return *this;
  if (prec_ != other.prec_) {
    prec_ = other.prec_;
    mpfr_set_prec(lo_, prec_);
    mpfr_set_prec(hi_, prec_);
  }
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  if (this != &other) {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    std::swap(prec_, other.prec_);
  }
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::with_prec(mpfr_prec_t prec) const {
  Interval r = Interval::zero(prec);
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

double Interval::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid_d() const {
  Tmp m(prec_ + 1);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return mpfr_get_d(m.v, MPFR_RNDN);
}

long double Interval::mid_ld() const {
  Tmp m(prec_ + 1);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return mpfr_get_ld(m.v, MPFR_RNDN);
}

double Interval::width_d() const {
  Tmp w(prec_);
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

long Interval::accuracy_bits() const {
  if (is_point()) return std::numeric_limits<long>::max();
  Tmp w(64), m(64);
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  mpfr_abs(m.v, lo_, MPFR_RNDN);
  Tmp m2(64);
  mpfr_abs(m2.v, hi_, MPFR_RNDN);
  mpfr_max(m.v, m.v, m2.v, MPFR_RNDN);
  if (mpfr_zero_p(m.v) || !mpfr_number_p(w.v)) return 0;
  long ew = mpfr_get_exp(w.v);
  long em = mpfr_get_exp(m.v);
  return em - ew;
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Interval::contains(const mpq_class& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& o) const {
  return mpfr_lessequal_p(lo_, o.lo_) && mpfr_greaterequal_p(hi_, o.hi_);
}

bool Interval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::is_negative() const { return mpfr_sgn(hi_) < 0; }
bool Interval::is_nonnegative() const { return mpfr_sgn(lo_) >= 0; }
bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

bool Interval::overlaps(const Interval& o) const {
  return mpfr_lessequal_p(lo_, o.hi_) && mpfr_lessequal_p(o.lo_, hi_);
}

mpz_class Interval::unique_integer() const {
  check_nan(*this);
  mpz_class a, b;
  Tmp t(prec_);
  mpfr_ceil(t.v, lo_);
  mpfr_get_z(a.get_mpz_t(), t.v, MPFR_RNDN);
  mpfr_floor(t.v, hi_);
  mpfr_get_z(b.get_mpz_t(), t.v, MPFR_RNDN);
  if (a != b) throw PrecisionExhausted("interval does not isolate one integer");
  return a;
}

mpz_class Interval::floor_exact() const {
  check_nan(*this);
  mpz_class a, b;
  Tmp t(prec_);
  mpfr_floor(t.v, lo_);
  mpfr_get_z(a.get_mpz_t(), t.v, MPFR_RNDN);
  mpfr_floor(t.v, hi_);
  mpfr_get_z(b.get_mpz_t(), t.v, MPFR_RNDN);
  if (a != b) throw PrecisionExhausted("floor is not constant on the enclosure");
  return a;
}

Interval Interval::operator-() const {
  Interval r = Interval::zero(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

namespace {

void raise_to(mpfr_prec_t& prec, mpfr_t lo, mpfr_t hi, mpfr_prec_t target) {
  if (target > prec) {
    mpfr_prec_round(lo, target, MPFR_RNDD);
    mpfr_prec_round(hi, target, MPFR_RNDU);
    prec = target;
  }
}

}  // namespace

Interval& Interval::operator+=(const Interval& o) {
  if (this == &o) return *this += Interval(o);
  raise_to(prec_, lo_, hi_, o.prec_);
  mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  if (this == &o) return *this -= Interval(o);
  raise_to(prec_, lo_, hi_, o.prec_);
  mpfr_sub(lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(hi_, hi_, o.lo_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  if (this == &o) {
    *this = sqr(*this);
    return *this;
  }
  mpfr_prec_t p = std::max(prec_, o.prec_);
  Tmp a(p), b(p), c(p), d(p), lo(p), hi(p);
  mpfr_mul(a.v, lo_, o.lo_, MPFR_RNDD);
  mpfr_mul(b.v, lo_, o.hi_, MPFR_RNDD);
  mpfr_mul(c.v, hi_, o.lo_, MPFR_RNDD);
  mpfr_mul(d.v, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(lo.v, a.v, b.v, MPFR_RNDD);
  mpfr_min(lo.v, lo.v, c.v, MPFR_RNDD);
  mpfr_min(lo.v, lo.v, d.v, MPFR_RNDD);
  mpfr_mul(a.v, lo_, o.lo_, MPFR_RNDU);
  mpfr_mul(b.v, lo_, o.hi_, MPFR_RNDU);
  mpfr_mul(c.v, hi_, o.lo_, MPFR_RNDU);
  mpfr_mul(d.v, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(hi.v, a.v, b.v, MPFR_RNDU);
  mpfr_max(hi.v, hi.v, c.v, MPFR_RNDU);
  mpfr_max(hi.v, hi.v, d.v, MPFR_RNDU);
  raise_to(prec_, lo_, hi_, p);
  mpfr_set(lo_, lo.v, MPFR_RNDD);
  mpfr_set(hi_, hi.v, MPFR_RNDU);
  check_nan(*this);
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  if (o.contains_zero()) throw PrecisionExhausted("division by an interval containing 0");
  if (this == &o) return *this /= Interval(o);
  mpfr_prec_t p = std::max(prec_, o.prec_);
  Tmp a(p), b(p), c(p), d(p), lo(p), hi(p);
  mpfr_div(a.v, lo_, o.lo_, MPFR_RNDD);
  mpfr_div(b.v, lo_, o.hi_, MPFR_RNDD);
  mpfr_div(c.v, hi_, o.lo_, MPFR_RNDD);
  mpfr_div(d.v, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(lo.v, a.v, b.v, MPFR_RNDD);
  mpfr_min(lo.v, lo.v, c.v, MPFR_RNDD);
  mpfr_min(lo.v, lo.v, d.v, MPFR_RNDD);
  mpfr_div(a.v, lo_, o.lo_, MPFR_RNDU);
  mpfr_div(b.v, lo_, o.hi_, MPFR_RNDU);
  mpfr_div(c.v, hi_, o.lo_, MPFR_RNDU);
  mpfr_div(d.v, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(hi.v, a.v, b.v, MPFR_RNDU);
  mpfr_max(hi.v, hi.v, c.v, MPFR_RNDU);
  mpfr_max(hi.v, hi.v, d.v, MPFR_RNDU);
  raise_to(prec_, lo_, hi_, p);
  mpfr_set(lo_, lo.v, MPFR_RNDD);
  mpfr_set(hi_, hi.v, MPFR_RNDU);
  return *this;
}

Interval Interval::mid() const {
  Interval r = Interval::zero(prec_ + 1);
  mpfr_add(r.lo_, lo_, hi_, MPFR_RNDN);  // exact at prec + 1
  mpfr_div_2ui(r.lo_, r.lo_, 1, MPFR_RNDN);
  mpfr_set(r.hi_, r.lo_, MPFR_RNDN);
  return r;
}

double Interval::rad_d() const {
  Interval m = mid();
  Tmp a(prec_ + 1), b(prec_ + 1);
  mpfr_sub(a.v, m.lo_, lo_, MPFR_RNDU);
  mpfr_sub(b.v, hi_, m.lo_, MPFR_RNDU);
  mpfr_max(a.v, a.v, b.v, MPFR_RNDU);
  return mpfr_get_d(a.v, MPFR_RNDU);
}

std::string Interval::to_string(int digits) const {
  Interval m = mid();
  char* buf = nullptr;
  std::string fmt = "%." + std::to_string(digits) + "Rg";
  mpfr_asprintf(&buf, fmt.c_str(), m.lo_);
  std::string out(buf);
  mpfr_free_str(buf);
  double r = rad_d();
  if (r != 0.0) {
    std::ostringstream os;
    os.precision(2);
    os << " +/- " << r;
    out += os.str();
  }
  return out;
}

Interval sqr(const Interval& x) {
  Interval r = Interval::zero(x.prec_);
  if (x.contains_zero()) {
    Tmp a(x.prec_), b(x.prec_);
    mpfr_sqr(a.v, x.lo_, MPFR_RNDU);
    mpfr_sqr(b.v, x.hi_, MPFR_RNDU);
    mpfr_set_zero(r.lo_, 1);
    mpfr_max(r.hi_, a.v, b.v, MPFR_RNDU);
  } else if (x.is_positive()) {
    mpfr_sqr(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_sqr(r.hi_, x.hi_, MPFR_RNDU);
  } else {
    mpfr_sqr(r.lo_, x.hi_, MPFR_RNDD);
    mpfr_sqr(r.hi_, x.lo_, MPFR_RNDU);
  }
  return r;
}

Interval sqrt(const Interval& x) {
  if (x.is_negative()) throw InvalidArgument("sqrt of a negative interval");
  Interval r = Interval::zero(x.prec_);
  if (mpfr_sgn(x.lo_) < 0) {
    mpfr_set_zero(r.lo_, 1);
  } else {
    mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
  }
  mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval log(const Interval& x) {
  if (mpfr_sgn(x.hi_) <= 0) throw InvalidArgument("log of a nonpositive interval");
  if (mpfr_sgn(x.lo_) <= 0) throw PrecisionExhausted("log argument not separated from 0");
  Interval r = Interval::zero(x.prec_);
  mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval log1p(const Interval& x) {
  if (mpfr_cmp_si(x.hi_, -1) <= 0) throw InvalidArgument("log1p of an interval below -1");
  if (mpfr_cmp_si(x.lo_, -1) <= 0) throw PrecisionExhausted("log1p argument not separated from -1");
  Interval r = Interval::zero(x.prec_);
  mpfr_log1p(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_log1p(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& x) {
  Interval r = Interval::zero(x.prec_);
  mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval abs(const Interval& x) {
  if (x.is_nonnegative()) return x;
  if (x.is_negative()) return -x;
  Interval r = Interval::zero(x.prec_);
  Tmp a(x.prec_);
  mpfr_neg(a.v, x.lo_, MPFR_RNDU);
  mpfr_set_zero(r.lo_, 1);
  mpfr_max(r.hi_, a.v, x.hi_, MPFR_RNDU);
  return r;
}

Interval max(const Interval& a, const Interval& b) {
  Interval r = Interval::zero(std::max(a.prec_, b.prec_));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval min(const Interval& a, const Interval& b) {
  Interval r = Interval::zero(std::max(a.prec_, b.prec_));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval pow(const Interval& x, long k) {
  if (k < 0) return Interval(1L, x.prec()) / pow(x, -k);
  Interval result(1L, x.prec());
  Interval base = x;
  bool first = true;
  while (k > 0) {
    if (k & 1) {
      result = first ? base : result * base;
      first = false;
    }
    k >>= 1;
    if (k > 0) base = sqr(base);
  }
  return result;
}

Interval pow(const Interval& x, const mpq_class& q) {
  if (q == 0) return Interval(1L, x.prec());
  return exp(Interval(q, x.prec()) * log(x));
}

Interval atan2(const Interval& y, const Interval& x) {
  mpfr_prec_t p = std::max(x.prec_, y.prec_);
  if (x.contains_zero() && y.contains_zero()) {
    throw PrecisionExhausted("argument of a box containing 0");
  }
  if (mpfr_sgn(y.lo_) < 0 && mpfr_sgn(y.hi_) >= 0 && mpfr_sgn(x.lo_) < 0) {
    throw PrecisionExhausted("box meets the branch cut of arg");
  }
  Interval r = Interval::zero(p);
  Tmp t(p);
  bool first = true;
  for (const __mpfr_struct* yy : {y.lo_, y.hi_}) {
    for (const __mpfr_struct* xx : {x.lo_, x.hi_}) {
      mpfr_atan2(t.v, yy, xx, MPFR_RNDD);
      if (first || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
      mpfr_atan2(t.v, yy, xx, MPFR_RNDU);
      if (first || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval cos(const Interval& x) {
  mpfr_prec_t p = x.prec_;
  Interval pi = Interval::pi(p);
  Interval minus_one_to_one = Interval::hull(Interval(-1L, p), Interval(1L, p));
  if (x.width_d() >= 3.0) return minus_one_to_one;
  Interval r = Interval::zero(p);
  Tmp a(p), b(p);
  mpfr_cos(a.v, x.lo_, MPFR_RNDD);
  mpfr_cos(b.v, x.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, a.v, b.v, MPFR_RNDD);
  mpfr_cos(a.v, x.lo_, MPFR_RNDU);
  mpfr_cos(b.v, x.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, a.v, b.v, MPFR_RNDU);
  // Extrema of cos sit at k*pi; include any that may lie in x.
  double k0 = std::floor(x.lo_d() / 3.141592653589793) - 1;
  for (double k = k0; k <= k0 + 3; k += 1) {
    Interval kp = Interval(static_cast<long>(k), p) * pi;
    if (!kp.overlaps(x)) continue;
    if (static_cast<long>(k) % 2 == 0) {
      mpfr_set_si(r.hi_, 1, MPFR_RNDU);
    } else {
      mpfr_set_si(r.lo_, -1, MPFR_RNDD);
    }
  }
  if (mpfr_cmp_si(r.lo_, -1) < 0) mpfr_set_si(r.lo_, -1, MPFR_RNDD);
  if (mpfr_cmp_si(r.hi_, 1) > 0) mpfr_set_si(r.hi_, 1, MPFR_RNDU);
  return r;
}

Interval sin(const Interval& x) {
  Interval half_pi = Interval::pi(x.prec_) / Interval(2L, x.prec_);
  return cos(x - half_pi);
}

bool certainly_less(const Interval& a, const Interval& b) {
  return mpfr_less_p(a.hi(), b.lo()) != 0;
}

bool certainly_leq(const Interval& a, const Interval& b) {
  return mpfr_lessequal_p(a.hi(), b.lo()) != 0;
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << x.to_string(os.precision() > 0 ? static_cast<int>(os.precision()) : 20);
}

Interval ComplexInterval::abs() const { return sqrt(norm2()); }

ComplexInterval& ComplexInterval::operator+=(const ComplexInterval& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ComplexInterval& ComplexInterval::operator-=(const ComplexInterval& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ComplexInterval& ComplexInterval::operator*=(const ComplexInterval& o) {
  Interval r = re * o.re - im * o.im;
  Interval i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

ComplexInterval& ComplexInterval::operator/=(const ComplexInterval& o) {
  Interval d = o.norm2();
  Interval r = (re * o.re + im * o.im) / d;
  Interval i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string ComplexInterval::to_string(int digits) const {
  return "(" + re.to_string(digits) + ") + i(" + im.to_string(digits) + ")";
}

ComplexInterval log(const ComplexInterval& z) {
  return {log(z.norm2()) / Interval(2L, z.prec()), atan2(z.im, z.re)};
}

ComplexInterval exp(const ComplexInterval& z) {
  Interval m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

}  // namespace adelic
