#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "adelic/field/number_field.hpp"
#include "adelic/numeric/log_scale.hpp"

namespace adelic {

// Real inputs are LogLinear values (not log-magnitudes) so that data such as
// log e = 1 or log frak_e = q log p stay exact.
struct BoundInstance {
  int n = 1;
  int t = 1;
  int degree = 1;                  // D = [k : Q]
  bool archimedean = true;         // eps0 = 1
  mpz_class p;                     // residue characteristic, ultrametric only
  LogLinear log_frak_e = LogLinear::rational(1);
  // log min_{i in I} r^2/|u_i|, when known; bounds log_frak_e from above.
  std::optional<LogLinear> log_frak_e_max;
  std::vector<LogLinear> log_a;    // n values
  LogLinear log_b = LogLinear::rational(1);
  int s = 1;
  std::vector<int> free_family;    // I, 0-based; empty means {0, ..., n-1}
  bool beta10_nonzero = true;
  // n = 1, beta_{1,0} = 0 and u_1 a multiple of 2 i pi: the sample points
  // collapse and the parameter choice does not apply.
  bool torsion_degenerate = false;

  int eps0() const { return archimedean ? 1 : 0; }
  std::vector<int> free_indices() const;
  // Structural checks; InvalidArgument or InvalidFrakE.
  void validate() const;
};

// floor((D/log fe) log(e + D/log fe + (1-eps0) log p + sum_log_a)) + 1.
mpz_class compute_frak_a(int degree, const LogLinear& log_frak_e, bool archimedean, const mpz_class& p,
                         const LogLinear& sum_log_a, mpfr_prec_t prec = 256);

struct ParamSet {
  mpz_class c0;        // (6n)^{22n}
  int y = 1;
  mpz_class frak_a;
  mpz_class s0;        // c0 frak_a
  mpz_class s;         // c0^3 frak_a
  LogScaleReal t_tilde0;
  LogScaleReal t_tilde;
  std::vector<LogScaleReal> d_tilde;  // index 0..n
  LogScaleReal d0_denominator;        // log b + D log S + S^y log fe
  LogScaleReal u_minus1;
  LogScaleReal u0;
  bool u0_is_log_p = false;
};

ParamSet compute_params(const BoundInstance& inst, mpfr_prec_t prec = 256);

struct ParamProperties {
  bool degrees_below_t0 = false;     // c0 max{1, D~0/S^{1-y}, D~i} <= T~0
  bool d0_nonzero = false;           // D0 = [x D~0] != 0 and c0 <= max D~j
  bool frak_a_log_bound = false;     // D log a <= 2 a log fe
  bool jet_order_bound = false;      // T log(4 D~0) <= 10 n log(c0) U0 / D
  Interval log_x_trivial;            // log x({0})
  bool x_at_most_one = false;        // log x({0}) <= 1e-12
  bool all() const { return degrees_below_t0 && d0_nonzero && frak_a_log_bound && jet_order_bound && x_at_most_one; }
};

ParamProperties check_param_properties(const ParamSet& ps, const BoundInstance& inst, mpfr_prec_t prec = 256);

// log x({0}) from the definitions: the trivial subgroup has t' = 0,
// lambda' = n, Hilbert-Samuel value 1 and S sample points.
Interval log_x_trivial(const ParamSet& ps, const BoundInstance& inst, mpfr_prec_t prec = 256);
// U_{-1} recovered from the condition x({0}) <= 1: since x scales as 1/U0,
// the critical value is U0 x({0}).
LogScaleReal u_minus1_from_x_condition(const ParamSet& ps, const BoundInstance& inst, mpfr_prec_t prec = 256);

// (n+t)!/t! D0^t prod max{1, D_i}; degrees has n+1 entries.
mpz_class hilbert_samuel_full(int n, int t, const std::vector<mpz_class>& degrees);
// binom(D0+t, t) prod (D_i + 1).
mpz_class dimension_E(int n, int t, const std::vector<mpz_class>& degrees);

// lcm of the products i_1...i_h' with 1 <= h' <= h, i_j >= 1, sum i_j <= l.
// DeskScaleExceeded beyond l = 30 or h = 6.
mpz_class delta_lcm(int l, int h);

enum class BoundKind { Intro, Principal, Reduit };
BoundKind parse_bound_kind(const std::string& s);
std::string to_string(BoundKind k);

struct TheoremBound {
  LogScaleReal value;        // lower bound for log max |Lambda_i|
  LogLinear constant_log;    // c n^2 log(6n), c in {200, 203}
  LogScaleReal factor;       // the winner of the max (or the single factor)
  std::string branch;        // "U", "V", "intro" or "log p"
  bool refined = false;      // the t = 1, beta_{1,0} != 0 replacement was used
  mpz_class frak_a;
};

TheoremBound theorem_bound(BoundKind kind, const BoundInstance& inst, mpfr_prec_t prec = 256);

struct MonotonicityReport {
  bool in_log_b = false;
  bool in_log_a = false;
  bool in_degree = false;
  bool all() const { return in_log_b && in_log_a && in_degree; }
};

// Principal bound magnitude under log b += 1, each log a_j += 1, D += 1.
MonotonicityReport bound_monotonicity_suite(const BoundInstance& inst, mpfr_prec_t prec = 256);

}  // namespace adelic
