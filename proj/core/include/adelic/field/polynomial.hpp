#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace adelic {

// Dense polynomials, coefficient i is the coefficient of x^i.
using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;
using FpPoly = std::vector<std::uint64_t>;

// Parses an integer polynomial in x such as "x^2+1" or "x^3 - 2*x + 5".
ZPoly parse_zpoly(const std::string& text);
std::string zpoly_to_string(const ZPoly& f);

int degree(const ZPoly& f);
int degree(const QPoly& f);
int degree(const FpPoly& f);
void trim(ZPoly& f);
void trim(QPoly& f);
void trim(FpPoly& f);

ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b);
// Remainder of a modulo the monic polynomial g.
ZPoly zpoly_rem_monic(const ZPoly& a, const ZPoly& g);
// Exact quotient a / b over Z; returns false if b does not divide a.
bool zpoly_divides(const ZPoly& b, const ZPoly& a, ZPoly* quotient);
ZPoly zpoly_mod(const ZPoly& a, const mpz_class& m);

QPoly qpoly_mul(const QPoly& a, const QPoly& b);
QPoly qpoly_rem_monic(const QPoly& a, const ZPoly& g);

// Arithmetic over F_p for primes p < 2^63.
class Fp {
 public:
  explicit Fp(std::uint64_t p) : p_(p) {}
  std::uint64_t p() const { return p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t reduce(const mpz_class& a) const;

  FpPoly from_z(const ZPoly& f) const;
  FpPoly add(const FpPoly& a, const FpPoly& b) const;
  FpPoly sub(const FpPoly& a, const FpPoly& b) const;
  FpPoly mul(const FpPoly& a, const FpPoly& b) const;
  FpPoly scale(const FpPoly& a, std::uint64_t c) const;
  void divmod(const FpPoly& a, const FpPoly& b, FpPoly* q, FpPoly* r) const;
  FpPoly rem(const FpPoly& a, const FpPoly& b) const;
  FpPoly monic(const FpPoly& a) const;
  FpPoly gcd(FpPoly a, FpPoly b) const;
  // s*a + t*b = gcd (monic).
  FpPoly ext_gcd(const FpPoly& a, const FpPoly& b, FpPoly* s, FpPoly* t) const;
  FpPoly derivative(const FpPoly& a) const;
  FpPoly powmod(const FpPoly& base, const mpz_class& e, const FpPoly& mod) const;

  bool is_squarefree(const FpPoly& f) const;
  // Monic irreducible factors of a monic squarefree polynomial, sorted by
  // degree and then by coefficients from the top down. Deterministic.
  std::vector<FpPoly> factor_squarefree(const FpPoly& f) const;

 private:
  std::vector<FpPoly> equal_degree(const FpPoly& f, int d) const;
  std::uint64_t p_;
};

// Lifts the monic factor g of f mod p (f monic over Z, f mod p squarefree)
// to the unique monic factor of f modulo p^k congruent to g.
ZPoly hensel_lift(const ZPoly& f, const FpPoly& g, std::uint64_t p, long k);

}  // namespace adelic
