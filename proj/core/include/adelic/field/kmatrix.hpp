#pragma once

#include <vector>

#include "adelic/field/number_field.hpp"
#include "adelic/numeric/interval_matrix.hpp"
#include "adelic/numeric/linalg.hpp"

namespace adelic {

using KVector = std::vector<FieldElement>;
using KMatrix = Mat<FieldElement>;

struct KOps {
  using T = FieldElement;
  NumberField field;
  T zero() const { return field.zero(); }
  T one() const { return field.one(); }
  bool is_zero(const T& a) const { return field.is_zero(a); }
  T add(const T& a, const T& b) const { return field.add(a, b); }
  T sub(const T& a, const T& b) const { return field.sub(a, b); }
  T mul(const T& a, const T& b) const { return field.mul(a, b); }
  T div(const T& a, const T& b) const { return field.div(a, b); }
  T neg(const T& a) const { return field.neg(a); }
};

inline ExactLinAlg<KOps> klinalg(const NumberField& k) { return ExactLinAlg<KOps>(KOps{k}); }

KMatrix kmatrix_from_rational(const NumberField& k, const QMatrix& q);
// Rational matrix when every entry is rational (always the case over Q).
bool kmatrix_is_rational(const NumberField& k, const KMatrix& m);
QMatrix kmatrix_to_rational(const NumberField& k, const KMatrix& m);
bool kmatrix_is_diagonal(const NumberField& k, const KMatrix& m);

std::vector<ComplexInterval> embed_vector(const NumberField& k, const KVector& x, const Place& v,
                                          mpfr_prec_t prec);
CMatrix embed_matrix(const NumberField& k, const KMatrix& m, const Place& v, mpfr_prec_t prec);

// Smallest valuation of the entries at a finite place; `all_zero` is set
// when there is no nonzero entry.
long min_valuation(const NumberField& k, const KVector& x, const Place& v, bool* all_zero);

// Row operations from GL_m(O_v) turning an m x r matrix of rank r into
// [N; 0]. Returns N, so |F c|_max = |N c|_max at v for every c.
KMatrix reduce_to_square(const NumberField& k, KMatrix f, const Place& v);

}  // namespace adelic
