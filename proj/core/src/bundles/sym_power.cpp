#include "adelic/bundles/sym_power.hpp"

#include <limits>
#include <numeric>

#include "adelic/errors.hpp"
#include "adelic/numeric/integers.hpp"

namespace adelic {

namespace {

mpq_class ratio(const mpz_class& a, const mpz_class& b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

int length_of(const MultiIndex& i) { return std::accumulate(i.begin(), i.end(), 0); }

mpz_class index_factorial(const MultiIndex& i) {
  mpz_class f = 1;
  for (int a : i) {
    if (a < 0) throw LengthMismatch("negative exponent in multi-index");
    f *= factorial(a);
  }
  return f;
}

// Shared finite-place branch: max |p_i|_v as an exact power of p.
Interval finite_max(const NumberField& k, const std::vector<FieldElement>& coeffs, const Place& v,
                    const PrecisionContext& ctx) {
  bool zero = false;
  long val = min_valuation(k, coeffs, v, &zero);
  if (zero) return Interval::zero(ctx.arch_bits);
  mpz_class pw;
  mpz_pow_ui(pw.get_mpz_t(), v.p.get_mpz_t(), static_cast<unsigned long>(val < 0 ? -val : val));
  mpq_class q = val >= 0 ? mpq_class(1, pw) : mpq_class(pw);
  q.canonicalize();
  return Interval(q, ctx.arch_bits);
}

}  // namespace

Interval sym_power_norm(const std::map<MultiIndex, ComplexInterval>& coeffs, int ell, mpfr_prec_t prec) {
  Interval sum = Interval::zero(prec);
  mpz_class lf = factorial(ell);
  std::size_t nu = coeffs.empty() ? 0 : coeffs.begin()->first.size();
  for (auto& [i, p] : coeffs) {
    if (length_of(i) != ell) throw LengthMismatch("multi-index length differs from the degree");
    if (i.size() != nu) throw LengthMismatch("multi-indices of different sizes");
    sum += p.norm2() * Interval(ratio(index_factorial(i), lf), prec);
  }
  return sqrt(sum);
}

Interval sym_power_norm(const NumberField& k, const std::map<MultiIndex, FieldElement>& coeffs, int ell,
                        const Place& v, const PrecisionContext& ctx) {
  if (ell < 0) throw LengthMismatch("negative degree");
  if (!v.is_archimedean()) {
    std::vector<FieldElement> c;
    std::size_t nu = coeffs.empty() ? 0 : coeffs.begin()->first.size();
    for (auto& [i, p] : coeffs) {
      if (length_of(i) != ell) throw LengthMismatch("multi-index length differs from the degree");
      if (i.size() != nu) throw LengthMismatch("multi-indices of different sizes");
      c.push_back(p);
    }
    return finite_max(k, c, v, ctx);
  }
  std::map<MultiIndex, ComplexInterval> e;
  for (auto& [i, p] : coeffs) e.emplace(i, k.embed(p, v, ctx.arch_bits));
  return sym_power_norm(e, ell, ctx.arch_bits);
}

MultiNorm multihomogeneous_norm(const NumberField& k, const std::map<BlockIndex, FieldElement>& coeffs,
                                const std::vector<int>& block_dims, const std::vector<int>& degrees,
                                const Place& v, const PrecisionContext& ctx) {
  if (block_dims.size() != degrees.size()) throw LengthMismatch("block dimensions and degrees differ in count");
  const mpfr_prec_t prec = ctx.arch_bits;
  mpz_class denom = 1;
  for (int l : degrees) {
    if (l < 0) throw LengthMismatch("negative block degree");
    denom *= factorial(l);
  }
  for (auto& [idx, p] : coeffs) {
    if (idx.size() != degrees.size()) throw LengthMismatch("wrong number of blocks in index");
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (static_cast<int>(idx[j].size()) != block_dims[j]) throw LengthMismatch("block index has the wrong size");
      if (length_of(idx[j]) != degrees[j]) throw LengthMismatch("block index length differs from its degree");
    }
  }

  MultiNorm out;
  if (!v.is_archimedean()) {
    std::vector<FieldElement> c;
    for (auto& [idx, p] : coeffs) c.push_back(p);
    out.norm = finite_max(k, c, v, ctx);
    out.length = out.norm;
    out.length_bound = out.norm;
    return out;
  }
  Interval sum = Interval::zero(prec), length = Interval::zero(prec);
  for (auto& [idx, p] : coeffs) {
    mpz_class w = 1;
    for (auto& i : idx) w *= index_factorial(i);
    Interval mod2 = k.embed(p, v, prec).norm2();
    sum += mod2 * Interval(ratio(w, denom), prec);
    length += sqrt(mod2);
  }
  out.norm = sqrt(sum);
  out.length = length;
  Interval factor(1L, prec);
  for (std::size_t j = 0; j < degrees.size(); ++j) {
    factor *= pow(Interval(static_cast<long>(block_dims[j]), prec), ratio(degrees[j], 2));
  }
  out.length_bound = out.norm * factor;
  return out;
}

LogLinear sym_max_slope_bound(const AdelicBundle& e, int ell, const PrecisionContext& ctx) {
  if (ell < 1) throw InvalidArgument("symmetric power degree must be at least 1");
  MaxSlope ms = max_slope(e, ctx);
  if (!ms.exact) throw InexactMaxSlope("maximal slope is only a lower bound for this bundle");
  const long nu = e.dim();
  return (ms.value + LogLinear::log_of(nu) * mpq_class(2 * nu)) * mpq_class(ell);
}

}  // namespace adelic
