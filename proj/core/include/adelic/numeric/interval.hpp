#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <iosfwd>
#include <string>

namespace adelic {

// Closed real interval [lo, hi] with MPFR endpoints and outward rounding.
// Every operation returns an enclosure of the exact result. The precision of
// a result is the larger of the operands' precisions.
class Interval {
 public:
  static constexpr mpfr_prec_t kDefaultPrec = 128;

  Interval() : Interval(0L, kDefaultPrec) {}
  // The point 0 at the given precision.
  static Interval zero(mpfr_prec_t prec);
  Interval(long v, mpfr_prec_t prec = kDefaultPrec);  // NOLINT: implicit on purpose
  Interval(const mpz_class& v, mpfr_prec_t prec = kDefaultPrec);
  Interval(const mpq_class& v, mpfr_prec_t prec = kDefaultPrec);
  static Interval from_double(double v, mpfr_prec_t prec = kDefaultPrec);
  static Interval from_long_double(long double v, mpfr_prec_t prec = kDefaultPrec);
  static Interval hull(const Interval& a, const Interval& b);
  static Interval from_endpoints(double lo, double hi, mpfr_prec_t prec = kDefaultPrec);
  // Encloses a decimal literal such as "1.4142" or "-3e-5".
  static Interval from_decimal(const std::string& text, mpfr_prec_t prec = kDefaultPrec);
  static Interval pi(mpfr_prec_t prec);
  static Interval euler_e(mpfr_prec_t prec);
  static Interval log_of(const mpz_class& v, mpfr_prec_t prec);
  static Interval log_of(const mpq_class& v, mpfr_prec_t prec);

  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  mpfr_prec_t prec() const { return prec_; }
  Interval with_prec(mpfr_prec_t prec) const;

  const __mpfr_struct* lo() const { return lo_; }
  const __mpfr_struct* hi() const { return hi_; }
  double lo_d() const;
  double hi_d() const;
  double mid_d() const;
  long double mid_ld() const;
  // Width hi - lo rounded up.
  double width_d() const;
  // Relative width measured in bits of agreement (large is tight).
  long accuracy_bits() const;

  bool contains_zero() const;
  bool contains(const mpq_class& q) const;
  bool contains(const Interval& other) const;
  bool is_positive() const;      // lo > 0
  bool is_negative() const;      // hi < 0
  bool is_nonnegative() const;   // lo >= 0
  bool is_point() const;
  bool overlaps(const Interval& other) const;

  // Unique integer inside the interval; throws PrecisionExhausted when the
  // interval does not pin one down.
  mpz_class unique_integer() const;
  // floor(x) when it is constant on the interval.
  mpz_class floor_exact() const;

  Interval operator-() const;
  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }

  // Midpoint-radius view.
  Interval mid() const;
  double rad_d() const;

  std::string to_string(int digits = 20) const;

 private:
  struct Uninit {};
  Interval(Uninit, mpfr_prec_t prec);
  friend Interval sqr(const Interval&);
  friend Interval sqrt(const Interval&);
  friend Interval log(const Interval&);
  friend Interval log1p(const Interval&);
  friend Interval exp(const Interval&);
  friend Interval abs(const Interval&);
  friend Interval max(const Interval&, const Interval&);
  friend Interval min(const Interval&, const Interval&);
  friend Interval atan2(const Interval& y, const Interval& x);
  friend Interval cos(const Interval&);
  friend Interval sin(const Interval&);

  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

Interval sqr(const Interval& x);
Interval sqrt(const Interval& x);
Interval log(const Interval& x);
Interval log1p(const Interval& x);
Interval exp(const Interval& x);
Interval abs(const Interval& x);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);
Interval pow(const Interval& x, long k);
// x^q for x > 0.
Interval pow(const Interval& x, const mpq_class& q);
// Angle of (x, y); the box must not meet the closed negative real axis
// unless it is a single point there.
Interval atan2(const Interval& y, const Interval& x);
Interval cos(const Interval& x);
Interval sin(const Interval& x);

// a < b for every pair of points.
bool certainly_less(const Interval& a, const Interval& b);
bool certainly_leq(const Interval& a, const Interval& b);

std::ostream& operator<<(std::ostream& os, const Interval& x);

class ComplexInterval {
 public:
  ComplexInterval() = default;
  explicit ComplexInterval(mpfr_prec_t prec) : re(Interval::zero(prec)), im(Interval::zero(prec)) {}
  ComplexInterval(Interval r) : re(std::move(r)), im(Interval::zero(re.prec())) {}  // NOLINT
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  Interval re;
  Interval im;

  mpfr_prec_t prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
  ComplexInterval conj() const { return {re, -im}; }
  Interval norm2() const { return sqr(re) + sqr(im); }
  Interval abs() const;
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }

  ComplexInterval operator-() const { return {-re, -im}; }
  ComplexInterval& operator+=(const ComplexInterval& o);
  ComplexInterval& operator-=(const ComplexInterval& o);
  ComplexInterval& operator*=(const ComplexInterval& o);
  ComplexInterval& operator/=(const ComplexInterval& o);
  friend ComplexInterval operator+(ComplexInterval a, const ComplexInterval& b) { return a += b; }
  friend ComplexInterval operator-(ComplexInterval a, const ComplexInterval& b) { return a -= b; }
  friend ComplexInterval operator*(ComplexInterval a, const ComplexInterval& b) { return a *= b; }
  friend ComplexInterval operator/(ComplexInterval a, const ComplexInterval& b) { return a /= b; }

  std::string to_string(int digits = 20) const;
};

// Principal logarithm log|z| + i arg(z).
ComplexInterval log(const ComplexInterval& z);
ComplexInterval exp(const ComplexInterval& z);

}  // namespace adelic
