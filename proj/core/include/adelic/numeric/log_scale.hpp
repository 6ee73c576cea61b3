#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

#include "adelic/numeric/interval.hpp"

namespace adelic {

// A real number of the form  sum_k c_k log k + q + r  with integer keys
// k > 1, exact rational coefficients c_k, a rational constant q and an
// interval remainder r. Keys are primes except for cofactors the factorizer
// could not split. The value is exact when r is the point 0.
class LogLinear {
 public:
  LogLinear() = default;
  static LogLinear log_of(const mpz_class& n);   // n > 0
  static LogLinear log_of(const mpq_class& q);   // q > 0
  static LogLinear log_of(long n) { return log_of(mpz_class(n)); }
  static LogLinear from_interval(const Interval& r);
  static LogLinear rational(const mpq_class& q);

  const std::map<mpz_class, mpq_class>& terms() const { return terms_; }
  const mpq_class& constant() const { return const_; }
  const Interval& remainder() const { return rem_; }
  bool is_exact() const;
  bool is_exact_zero() const { return terms_.empty() && const_ == 0 && is_exact(); }

  Interval eval(mpfr_prec_t prec) const;

  LogLinear& operator+=(const LogLinear& o);
  LogLinear& operator-=(const LogLinear& o);
  LogLinear& operator*=(const mpq_class& q);
  LogLinear operator-() const;
  friend LogLinear operator+(LogLinear a, const LogLinear& b) { return a += b; }
  friend LogLinear operator-(LogLinear a, const LogLinear& b) { return a -= b; }
  friend LogLinear operator*(LogLinear a, const mpq_class& q) { return a *= q; }
  friend LogLinear operator*(const mpq_class& q, LogLinear a) { return a *= q; }

  // Multiplication by a non-rational factor folds everything into the remainder.
  LogLinear scaled(const Interval& f, mpfr_prec_t prec) const;

  std::string to_string(int digits = 20) const;

 private:
  std::map<mpz_class, mpq_class> terms_;
  mpq_class const_ = 0;
  Interval rem_{0L, 64};
};

// Sign of a - b, raising the working precision until the enclosure separates
// from 0. Exact equal values return 0 without any numerics. Throws
// PrecisionExhausted if max_prec is reached.
int compare(const LogLinear& a, const LogLinear& b, mpfr_prec_t start_prec = 128,
            mpfr_prec_t max_prec = 4096);

// sign * exp(log_mag). Used for quantities such as (6n)^{203 n^2} that
// overflow every hardware float; products and rational powers stay exact on
// the log side, sums are evaluated numerically at the working precision.
class LogScaleReal {
 public:
  LogScaleReal() = default;  // zero
  LogScaleReal(int sign, LogLinear log_mag);
  static LogScaleReal from_integer(const mpz_class& n);
  static LogScaleReal from_rational(const mpq_class& q);
  static LogScaleReal from_interval(const Interval& x);  // x must not straddle 0
  static LogScaleReal exp_of(const LogLinear& l) { return LogScaleReal(1, l); }

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  const LogLinear& log_mag() const { return log_mag_; }
  Interval log_magnitude(mpfr_prec_t prec) const;
  Interval value(mpfr_prec_t prec) const;

  LogScaleReal operator-() const { return LogScaleReal(-sign_, log_mag_); }
  LogScaleReal& operator*=(const LogScaleReal& o);
  LogScaleReal& operator/=(const LogScaleReal& o);
  friend LogScaleReal operator*(LogScaleReal a, const LogScaleReal& b) { return a *= b; }
  friend LogScaleReal operator/(LogScaleReal a, const LogScaleReal& b) { return a /= b; }
  LogScaleReal pow(const mpq_class& q) const;

  // Sums are computed at `prec` bits on the log side.
  static LogScaleReal add(const LogScaleReal& a, const LogScaleReal& b, mpfr_prec_t prec = 256);
  static LogScaleReal sub(const LogScaleReal& a, const LogScaleReal& b, mpfr_prec_t prec = 256) {
    return add(a, -b, prec);
  }
  friend LogScaleReal operator+(const LogScaleReal& a, const LogScaleReal& b) { return add(a, b); }
  friend LogScaleReal operator-(const LogScaleReal& a, const LogScaleReal& b) { return sub(a, b); }

  std::string to_string(int digits = 20) const;

 private:
  int sign_ = 0;
  LogLinear log_mag_;
};

int compare(const LogScaleReal& a, const LogScaleReal& b, mpfr_prec_t start_prec = 128,
            mpfr_prec_t max_prec = 4096);
LogScaleReal max(const LogScaleReal& a, const LogScaleReal& b);

}  // namespace adelic
