#include "adelic/field/padic.hpp"

#include <algorithm>
#include <cmath>

#include "adelic/errors.hpp"
#include "adelic/numeric/integers.hpp"

namespace adelic {

namespace {

mpz_class pow_p(const mpz_class& p, long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::max(0L, e)));
  return r;
}

mpz_class mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw InvalidArgument("not invertible modulo p^k");
  }
  return r;
}

}  // namespace

PadicNumber::PadicNumber(const mpz_class& p, long precision) : p_(p), n_(precision), v_(precision), u_(0) {
  if (!is_probable_prime(p)) throw InvalidArgument("p-adic base must be prime");
}

PadicNumber PadicNumber::normalized(const mpz_class& p, long precision, long v, mpz_class w) {
  PadicNumber r(p, precision);
  if (v >= precision) return r;
  w = mod(w, pow_p(p, precision - v));
  if (w == 0) return r;
  long t = adelic::valuation(w, p);
  r.v_ = v + t;
  r.u_ = mod(w / pow_p(p, t), pow_p(p, precision - r.v_));
  return r;
}

PadicNumber PadicNumber::from_rational(const mpq_class& q, const mpz_class& p, long precision) {
  if (q == 0) return PadicNumber(p, precision);
  long v = adelic::valuation(q, p);
  mpq_class unit_part = q;
  if (v > 0) unit_part /= mpq_class(pow_p(p, v));
  if (v < 0) unit_part *= mpq_class(pow_p(p, -v));
  if (v >= precision) return PadicNumber(p, precision);
  mpz_class m = pow_p(p, precision - v);
  mpz_class w = mod(unit_part.get_num() * inv_mod(unit_part.get_den(), m), m);
  return normalized(p, precision, v, w);
}

mpq_class PadicNumber::to_rational() const {
  if (is_zero()) return 0;
  mpq_class r(u_);
  if (v_ >= 0) return r * mpq_class(pow_p(p_, v_));
  return r / mpq_class(pow_p(p_, -v_));
}

bool PadicNumber::congruent(const PadicNumber& o) const {
  return (*this - o).is_zero();
}

PadicNumber PadicNumber::operator-() const {
  if (is_zero()) return *this;
  return normalized(p_, n_, v_, -u_);
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) throw InvalidArgument("p-adic numbers over different primes");
  long n = std::min(a.n_, b.n_);
  long m = std::min(a.v_, b.v_);
  if (m >= n) return PadicNumber(a.p_, n);
  mpz_class w = 0;
  if (!a.is_zero()) w += a.u_ * pow_p(a.p_, a.v_ - m);
  if (!b.is_zero()) w += b.u_ * pow_p(b.p_, b.v_ - m);
  return PadicNumber::normalized(a.p_, n, m, w);
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) throw InvalidArgument("p-adic numbers over different primes");
  long n = std::min(a.n_ + b.v_, b.n_ + a.v_);
  if (a.is_zero() || b.is_zero()) return PadicNumber(a.p_, n);
  return PadicNumber::normalized(a.p_, n, a.v_ + b.v_, a.u_ * b.u_);
}

std::string PadicNumber::to_string() const {
  if (is_zero()) return "O(" + p_.get_str() + "^" + std::to_string(n_) + ")";
  return p_.get_str() + "^" + std::to_string(v_) + " * " + u_.get_str() + " + O(" + p_.get_str() +
         "^" + std::to_string(n_) + ")";
}

long padic_exp_min_valuation(const mpz_class& p) { return p == 2 ? 2 : 1; }

PadicNumber padic_exp(const PadicNumber& z) {
  const mpz_class& p = z.prime();
  long n = z.precision();
  if (!z.is_zero() && z.valuation() < padic_exp_min_valuation(p)) {
    throw OutsideConvergenceDomain("exp needs |z|_p < p^(-1/(p-1)); valuation is " +
                                   std::to_string(z.valuation()));
  }
  if (n <= 0) return PadicNumber(p, n);
  mpz_class modulus = pow_p(p, n);
  mpz_class sum = 1;
  if (!z.is_zero()) {
    // Term i is p^(i v - v_p(i!)) u^i / (i!/p^{v_p(i!)}), whose valuation is
    // at least i (v - 1/(p-1)) + 1/(p-1).
    double pm1 = mpz_get_d(p.get_mpz_t()) - 1.0;
    long v = z.valuation();
    mpz_class unit_pow = 1;
    mpz_class fact_unit = 1;
    long fact_val = 0;
    for (long i = 1;; ++i) {
      double lower = static_cast<double>(i) * (v - 1.0 / pm1) + 1.0 / pm1;
      if (lower >= n + 1) break;
      long vi = adelic::valuation(mpz_class(i), p);
      mpz_class i_unit = mpz_class(i) / pow_p(p, vi);
      fact_val += vi;
      fact_unit = mod(fact_unit * i_unit, modulus);
      unit_pow = mod(unit_pow * z.unit(), modulus);
      long e = i * v - fact_val;
      if (e >= n) continue;
      sum += pow_p(p, e) * unit_pow * inv_mod(fact_unit, modulus);
      sum = mod(sum, modulus);
    }
  }
  return PadicNumber::from_rational(mpq_class(sum), p, n);
}

PadicNumber padic_log(const PadicNumber& u) {
  const mpz_class& p = u.prime();
  long n = u.precision();
  PadicNumber w = u - PadicNumber::from_rational(1, p, n);
  if (!w.is_zero() && w.valuation() < padic_exp_min_valuation(p)) {
    throw OutsideConvergenceDomain("log needs |u - 1|_p < p^(-1/(p-1)); valuation of u - 1 is " +
                                   std::to_string(w.valuation()));
  }
  if (w.is_zero()) return PadicNumber(p, w.precision());
  long a = w.valuation();
  long nn = w.precision();
  mpz_class modulus = pow_p(p, nn);
  double logp = std::log(mpz_get_d(p.get_mpz_t()));
  mpz_class sum = 0;
  mpz_class unit_pow = 1;
  for (long i = 1;; ++i) {
    // valuation of w^i / i is at least i a - log_p(i)
    double lower = static_cast<double>(i) * a - std::log(static_cast<double>(i)) / logp;
    if (i >= 2 && lower >= nn + 1) break;
    unit_pow = mod(unit_pow * w.unit(), modulus);
    long vi = adelic::valuation(mpz_class(i), p);
    long e = i * a - vi;
    if (e >= nn) continue;
    mpz_class i_unit = mpz_class(i) / pow_p(p, vi);
    mpz_class term = pow_p(p, e) * unit_pow * inv_mod(i_unit, modulus);
    if (i % 2 == 0) term = -term;
    sum = mod(sum + term, modulus);
  }
  return PadicNumber::from_rational(mpq_class(sum), p, nn);
}

}  // namespace adelic
