#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the production algorithms it is checking.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "adelic/numeric/interval.hpp"
#include "adelic/numeric/log_scale.hpp"

namespace oracle {

using DMatrix = std::vector<std::vector<double>>;
using ZMatrix = std::vector<std::vector<mpz_class>>;

// h(q) = log max(|num|, |den|).
adelic::LogLinear rational_height(const mpq_class& q);

// Height of re + i*im through the Mahler measure of its primitive minimal
// polynomial: h = (1/deg) log(c * prod max(1, |root|)).
adelic::Interval gaussian_height(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec);

// vol{x : |M x|_2 <= 1} / vol(unit ball) by uniform sampling in a bounding box.
double mc_volume_ratio(const DMatrix& m, long samples, std::uint64_t seed);

// vol{x : x^2 + alpha^2 |A x|^2 <= 1} / vol(unit ball), sampling the unit ball.
double mc_twisted_ratio(const DMatrix& a, double alpha, long samples, std::uint64_t seed);

// #{y in (Z/p^e)^cols : B y = 0 mod p^e}, by enumeration.
mpz_class lattice_kernel_count(const ZMatrix& b, long p, int e);

// Smallest |t|_2 over tensors t in (C^nu)^{(x) ell} whose image in Sym^ell is
// sum_i p_i e^i, via the normal equations of the position-to-monomial map.
double tensor_quotient_norm(const std::map<std::vector<int>, std::complex<double>>& coeffs, int nu, int ell);

// Smallest sup norm of a nonzero integer solution of a x = 0 with entries in
// [-r, r], or -1 if none exists there.
long brute_min_sup_solution(const std::vector<std::vector<long>>& a, long r);

// Same answer by exhaustive search over the free coordinates of the reduced
// echelon form: a solution is fixed by its free coordinates, so walking them
// over [-r, r]^d and solving for the pivots covers the whole box. Costs
// (2r + 1)^d with d = nu - rank instead of (2r + 1)^nu.
long free_coordinate_min_sup_solution(const std::vector<std::vector<long>>& a, long r);

// Singular values, descending, from a double-precision SVD.
std::vector<double> singular_values(const DMatrix& m);

// Exponents n_1 <= n_2 <= ... of p in the invariant factors of an integer
// matrix, from determinantal divisors: n_1 + ... + n_k is the least p-adic
// valuation of a nonzero k x k minor.
std::vector<long> invariant_factor_exponents(const ZMatrix& m, long p);

// Parameter and bound formulas evaluated directly as MPFR numbers (no
// log-space bookkeeping). log frak_e = log_fe_coeff * log(log_fe_base), or
// just log_fe_coeff when the base is 0.
struct BakerData {
  int n = 1, t = 1, degree = 1, s = 1;
  bool archimedean = true;
  long p = 0;
  mpq_class log_fe_coeff = 1;
  long log_fe_base = 0;
  std::vector<mpq_class> log_a;
  mpq_class log_b = 1;
  bool beta10_nonzero = true;
  std::vector<int> free_family;  // 0-based; empty = all
};

struct BakerDirect {
  mpz_class frak_a;
  mpq_class log_u_minus1, log_u0, log_t_tilde0, log_t_tilde;
  std::vector<mpq_class> log_d_tilde;
  mpq_class log_x_trivial;
};

BakerDirect baker_direct(const BakerData& d);
// log of the magnitude of the principal (203) and reduced (200) bounds.
mpq_class principal_log_magnitude(const BakerData& d);
mpq_class reduit_log_magnitude(const BakerData& d);

// delta_l(h) from prime powers: the exponent of q is the largest sum of
// e_j over at most h powers q^{e_j} with sum q^{e_j} <= l.
mpz_class delta_by_prime_powers(int l, int h);

}  // namespace oracle
