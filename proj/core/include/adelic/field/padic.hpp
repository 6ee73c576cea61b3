#pragma once

#include <gmpxx.h>

#include <string>

namespace adelic {

// Element of Q_p known modulo p^N (absolute precision N):
// value = p^v * u with u a unit modulo p^(N - v). Zero at this precision is
// stored with v = N and u = 0.
class PadicNumber {
 public:
  PadicNumber(const mpz_class& p, long precision);  // zero
  static PadicNumber from_rational(const mpq_class& q, const mpz_class& p, long precision);

  const mpz_class& prime() const { return p_; }
  long precision() const { return n_; }
  long valuation() const { return v_; }
  const mpz_class& unit() const { return u_; }
  bool is_zero() const { return v_ >= n_; }

  // Value as a rational p^v * u (u in [0, p^(N-v))).
  mpq_class to_rational() const;
  // True if the two agree modulo p^min(N, N').
  bool congruent(const PadicNumber& o) const;

  PadicNumber operator-() const;
  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);

  std::string to_string() const;

 private:
  static PadicNumber normalized(const mpz_class& p, long precision, long v, mpz_class w);
  mpz_class p_;
  long n_;
  long v_;
  mpz_class u_;
};

// exp on the disc |z|_p < p^(-1/(p-1)); throws OutsideConvergenceDomain.
PadicNumber padic_exp(const PadicNumber& z);
// log on |u - 1|_p < p^(-1/(p-1)); throws OutsideConvergenceDomain.
PadicNumber padic_log(const PadicNumber& u);
// Smallest valuation accepted by padic_exp: 1 for odd p, 2 for p = 2.
long padic_exp_min_valuation(const mpz_class& p);

}  // namespace adelic
