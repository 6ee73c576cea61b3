#pragma once

#include <gmpxx.h>

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "adelic/field/polynomial.hpp"
#include "adelic/numeric/interval.hpp"
#include "adelic/numeric/log_scale.hpp"

namespace adelic {

class PadicNumber;

struct PrecisionContext {
  long arch_bits = 128;     // working precision of interval arithmetic
  long padic_digits = 30;   // absolute p-adic precision N
  void validate() const;
};

// Power-basis coordinates over Q; coeffs.size() equals the field degree.
struct FieldElement {
  std::vector<mpq_class> coeffs;
};

enum class PlaceKind { Real, Complex, Finite };

struct Place {
  PlaceKind kind = PlaceKind::Real;
  std::string label;      // "inf0", "inf1", ... or "p:i"
  int local_degree = 1;   // n_v
  int index = 0;          // position among archimedean places / places above p
  mpz_class p;            // residue prime (finite places)
  FpPoly factor;          // irreducible factor of the defining polynomial mod p

  bool is_archimedean() const { return kind != PlaceKind::Finite; }
};

// |x|_v. At finite places the value is exactly p^exponent.
struct AbsValue {
  bool is_zero = false;
  Interval value;
  bool exact = false;
  mpz_class p;
  mpq_class exponent;

  // log |x|_v; exact on finite places.
  LogLinear log() const;
};

// Number field Q[x]/(f) with f monic, integral and irreducible. Degree-1
// fields are Q. Immutable; copies share the underlying data.
class NumberField {
 public:
  static constexpr int kMaxDegree = 8;

  explicit NumberField(const ZPoly& f);
  static NumberField parse(const std::string& poly_text);
  static NumberField rationals();

  int degree() const;
  const ZPoly& poly() const;
  std::string poly_string() const;
  bool is_q() const { return degree() == 1; }
  bool operator==(const NumberField& o) const { return poly() == o.poly(); }
  bool operator!=(const NumberField& o) const { return !(*this == o); }

  // Elements.
  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_rational(const mpq_class& q) const;
  FieldElement generator() const;
  FieldElement from_coeffs(std::vector<mpq_class> coeffs) const;
  // "[1/2, 3]" (power-basis coordinates) or a bare rational "3/2".
  FieldElement parse_element(const std::string& text) const;
  std::string to_string(const FieldElement& x) const;

  bool is_zero(const FieldElement& x) const;
  bool equal(const FieldElement& a, const FieldElement& b) const;
  bool is_rational(const FieldElement& x) const;
  mpq_class rational_value(const FieldElement& x) const;

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement inv(const FieldElement& a) const;
  FieldElement div(const FieldElement& a, const FieldElement& b) const;
  FieldElement pow(const FieldElement& a, long k) const;

  // Matrix of multiplication by x on the power basis (column j = x * theta^j).
  std::vector<std::vector<mpq_class>> multiplication_matrix(const FieldElement& x) const;
  mpq_class norm(const FieldElement& x) const;
  // x = A(theta) / d with A integral and d > 0 minimal.
  void split_denominator(const FieldElement& x, ZPoly* numerator, mpz_class* d) const;

  // Archimedean places: real roots ascending, then one root per conjugate
  // pair (positive imaginary part) ordered by (re, im).
  std::vector<Place> archimedean_places() const;
  ComplexInterval root(const Place& v, mpfr_prec_t prec) const;
  // Enclosures of all D roots (real ones first, then the upper roots, then
  // their conjugates in the same order).
  std::vector<ComplexInterval> all_roots(mpfr_prec_t prec) const;
  ComplexInterval embed(const FieldElement& x, const Place& v, mpfr_prec_t prec) const;

  // Finite places above p. Throws RamifiedOrNonMonogenic unless f mod p is
  // squarefree.
  std::vector<Place> places_above(const mpz_class& p) const;
  long valuation(const FieldElement& x, const Place& v) const;
  // Rational primes below the finite places where |x|_v != 1.
  std::set<mpz_class> finite_support(const FieldElement& x) const;
  // Image of x in k_v = Q_p, for places with n_v = 1.
  PadicNumber to_padic(const FieldElement& x, const Place& v, long digits) const;

  AbsValue abs_value(const FieldElement& x, const Place& v, const PrecisionContext& ctx) const;

  std::vector<Place> enumerate_places(unsigned long prime_bound) const;
  // Like enumerate_places but skips primes where construction is unsupported.
  std::vector<Place> enumerate_places_lenient(unsigned long prime_bound,
                                              std::vector<unsigned long>* skipped) const;
  // Resolves "inf0", "5:1" and the like.
  Place place(const std::string& label) const;

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

}  // namespace adelic
