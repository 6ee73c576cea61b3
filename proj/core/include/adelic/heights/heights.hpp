#pragma once

#include <vector>

#include "adelic/bundles/bundle.hpp"
#include "adelic/field/number_field.hpp"

namespace adelic {

struct PlaceContribution {
  Place place;
  int local_degree = 1;
  // n_v log max{1, |x|_v} for Weil heights, n_v log ||x||_v for vector heights.
  LogLinear contribution;
};

struct HeightReport {
  // (1/D) * sum of the contributions.
  LogLinear value;
  std::vector<PlaceContribution> per_place;

  Interval enclosure(mpfr_prec_t prec) const { return value.eval(prec); }
};

// h(x) = (1/D) sum_v n_v log max{1, |x|_v}. Finite contributions are exact
// multiples of log p; the archimedean ones are exact when x is rational.
HeightReport weil_height(const FieldElement& x, const NumberField& k, const PrecisionContext& ctx);

// |sum_v n_v log |x|_v| over the archimedean places and the finite support.
Interval product_formula_residual(const FieldElement& x, const NumberField& k, const PrecisionContext& ctx);

// h_E(x) = (1/D) sum_v n_v log ||x||_v, with h_E(0) = 0.
HeightReport vector_height(const KVector& x, const AdelicBundle& e, const PrecisionContext& ctx);

// |h(x^m) - m h(x)| <= tol, retried once at twice the precision.
bool height_scaling_check(const FieldElement& x, const NumberField& k, long m, const PrecisionContext& ctx,
                          double tol = 1e-20);

struct LiouvilleResult {
  bool holds = false;
  LogLinear height;
  LogLinear max_slope;
};

// h_E(x) >= -max_slope(E), decided by separated enclosures (or exactly when
// both sides are exact). Throws InexactMaxSlope for non-diagonal bundles.
LiouvilleResult liouville_check(const KVector& x, const AdelicBundle& e, const PrecisionContext& ctx);

}  // namespace adelic
