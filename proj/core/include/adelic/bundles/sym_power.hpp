#pragma once

#include <map>
#include <vector>

#include "adelic/bundles/bundle.hpp"

namespace adelic {

// Multi-index i in N^nu with |i| = ell.
using MultiIndex = std::vector<int>;
// One multi-index per block for multihomogeneous sections.
using BlockIndex = std::vector<MultiIndex>;

// Norm of s = sum_i p_i e^i on Sym^ell of an orthonormal frame:
// archimedean (sum |p_i|^2 i!/ell!)^{1/2}, finite max |p_i|_v.
Interval sym_power_norm(const NumberField& k, const std::map<MultiIndex, FieldElement>& coeffs, int ell,
                        const Place& v, const PrecisionContext& ctx);
// Archimedean formula on already embedded coefficients.
Interval sym_power_norm(const std::map<MultiIndex, ComplexInterval>& coeffs, int ell, mpfr_prec_t prec);

struct MultiNorm {
  Interval norm;
  Interval length;        // sum_i |p_i|_v
  Interval length_bound;  // norm * prod_j nu_j^{ell_j/2} (archimedean); norm at finite places
};

// Block j has dimension block_dims[j] and degree degrees[j]; weights are
// i!/(ell_0! ... ell_n!).
MultiNorm multihomogeneous_norm(const NumberField& k, const std::map<BlockIndex, FieldElement>& coeffs,
                                const std::vector<int>& block_dims, const std::vector<int>& degrees,
                                const Place& v, const PrecisionContext& ctx);

// ell (mu_max + 2 nu log nu). Throws InexactMaxSlope unless max_slope is exact.
LogLinear sym_max_slope_bound(const AdelicBundle& e, int ell, const PrecisionContext& ctx);

}  // namespace adelic
