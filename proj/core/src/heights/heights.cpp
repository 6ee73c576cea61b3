#include "adelic/heights/heights.hpp"

#include <algorithm>
#include <set>

#include "adelic/errors.hpp"

namespace adelic {

namespace {

// log max{1, |x|_v} at an archimedean place.
LogLinear arch_log_max(const FieldElement& x, const NumberField& k, const Place& v, mpfr_prec_t prec) {
  if (k.is_rational(x)) {
    mpq_class q = abs(k.rational_value(x));
    return q > 1 ? LogLinear::log_of(q) : LogLinear();
  }
  Interval a = k.embed(x, v, prec).abs();
  return LogLinear::from_interval(log(max(Interval(1L, prec), a)));
}

LogLinear arch_log_abs(const FieldElement& x, const NumberField& k, const Place& v, mpfr_prec_t prec) {
  if (k.is_rational(x)) return LogLinear::log_of(abs(k.rational_value(x)));
  return LogLinear::from_interval(log(k.embed(x, v, prec).norm2()) * Interval(mpq_class(1, 2), prec));
}

}  // namespace

HeightReport weil_height(const FieldElement& x, const NumberField& k, const PrecisionContext& ctx) {
  ctx.validate();
  HeightReport r;
  if (k.is_zero(x)) return r;
  LogLinear sum;
  for (const Place& v : k.archimedean_places()) {
    LogLinear c = arch_log_max(x, k, v, ctx.arch_bits) * mpq_class(v.local_degree);
    sum += c;
    r.per_place.push_back({v, v.local_degree, c});
  }
  for (const mpz_class& p : k.finite_support(x)) {
    for (const Place& v : k.places_above(p)) {
      long val = k.valuation(x, v);
      if (val >= 0) continue;
      LogLinear c = LogLinear::log_of(p) * mpq_class(-val * v.local_degree);
      sum += c;
      r.per_place.push_back({v, v.local_degree, c});
    }
  }
  r.value = sum * mpq_class(1, k.degree());
  return r;
}

Interval product_formula_residual(const FieldElement& x, const NumberField& k, const PrecisionContext& ctx) {
  ctx.validate();
  if (k.is_zero(x)) throw InvalidArgument("product formula needs a nonzero element");
  LogLinear sum;
  for (const Place& v : k.archimedean_places()) sum += arch_log_abs(x, k, v, ctx.arch_bits) * mpq_class(v.local_degree);
  for (const mpz_class& p : k.finite_support(x)) {
    for (const Place& v : k.places_above(p)) {
      sum += LogLinear::log_of(p) * mpq_class(-k.valuation(x, v) * v.local_degree);
    }
  }
  return abs(sum.eval(ctx.arch_bits));
}

HeightReport vector_height(const KVector& x, const AdelicBundle& e, const PrecisionContext& ctx) {
  ctx.validate();
  const NumberField& k = e.field();
  if (static_cast<int>(x.size()) != e.dim()) throw DimensionMismatch("vector length differs from bundle dimension");
  HeightReport r;
  if (std::all_of(x.begin(), x.end(), [&](auto& c) { return k.is_zero(c); })) return r;

  std::vector<Place> places = k.archimedean_places();
  std::set<std::string> seen;
  for (auto& [label, s] : e.deviations()) {
    if (!s.place().is_archimedean()) {
      places.push_back(s.place());
      seen.insert(label);
    }
  }
  std::set<mpz_class> primes;
  for (auto& c : x) {
    if (k.is_zero(c)) continue;
    for (auto& p : k.finite_support(c)) primes.insert(p);
  }
  for (auto& p : primes) {
    for (const Place& v : k.places_above(p)) {
      if (seen.insert(v.label).second) places.push_back(v);
    }
  }

  LogLinear sum;
  for (const Place& v : places) {
    LogLinear c = e.log_norm(x, v, ctx) * mpq_class(v.local_degree);
    if (!v.is_archimedean() && c.is_exact_zero()) continue;
    sum += c;
    r.per_place.push_back({v, v.local_degree, c});
  }
  r.value = sum * mpq_class(1, k.degree());
  return r;
}

bool height_scaling_check(const FieldElement& x, const NumberField& k, long m, const PrecisionContext& ctx,
                          double tol) {
  if (m < 0) throw InvalidArgument("height scaling exponent must be nonnegative");
  if (k.is_zero(x)) throw InvalidArgument("height scaling check needs x != 0");
  PrecisionContext c = ctx;
  for (int attempt = 0; attempt < 2; ++attempt) {
    LogLinear lhs = weil_height(k.pow(x, m), k, c).value;
    LogLinear rhs = weil_height(x, k, c).value * mpq_class(m);
    Interval diff = abs((lhs - rhs).eval(c.arch_bits));
    if (mpfr_cmp_d(diff.hi(), tol) <= 0) return true;
    c.arch_bits *= 2;
  }
  return false;
}

LiouvilleResult liouville_check(const KVector& x, const AdelicBundle& e, const PrecisionContext& ctx) {
  MaxSlope ms = max_slope(e, ctx);
  if (!ms.exact) throw InexactMaxSlope("Liouville check needs an exact maximal slope");
  LiouvilleResult r;
  r.height = vector_height(x, e, ctx).value;
  r.max_slope = ms.value;
  r.holds = compare(r.height, -ms.value, ctx.arch_bits) >= 0;
  return r;
}

}  // namespace adelic
