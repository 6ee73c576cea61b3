#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "adelic/bundles/bundle.hpp"
#include "adelic/errors.hpp"

namespace adelic {

// Bundle whose norm at v0 is twisted by alpha * a, where a : K^nu -> K^mu is
// written in an orthonormal frame of the target at v0:
//   archimedean  (||x||^2 + ||alpha a(x)||_2^2)^{1/2}
//   finite       max(||x||, ||alpha a(x)||_max)
// and equal to the base norm elsewhere. When the base deviates at v0 it
// must do so through a frame F; the spectrum is then taken of a F^{-1}.
struct TwistedBundle {
  AdelicBundle base;
  Place v0;
  FieldElement alpha;
  KMatrix a;  // mu x nu

  int mu() const { return static_cast<int>(a.size()); }
  void validate() const;
};

// Twisted norm of x at v0.
Interval twisted_norm(const TwistedBundle& tb, const KVector& x, const PrecisionContext& ctx);
// The twisted bundle as an ordinary adelic bundle.
AdelicBundle as_bundle(const TwistedBundle& tb);

struct SingularSpectrum {
  int rho = 0;
  std::vector<Interval> sigma;      // descending, all nonzero
  std::vector<long> valuations;     // finite places: sigma_i = |pi|^{valuations[i]}
  bool finite = false;
};

// Exact rank; archimedean enclosures are refined until each of the rho
// largest singular values is separated from 0. Finite places use
// valuation-pivoted elimination (elementary divisors).
SingularSpectrum singular_spectrum(const NumberField& k, const KMatrix& a, const Place& v0,
                                   const PrecisionContext& ctx);
// Archimedean spectrum of an enclosed matrix. The rank is the number of
// singular values certified nonzero; RankUncertified if any enclosure
// still contains 0.
SingularSpectrum singular_spectrum(const CMatrix& a, const PrecisionContext& ctx);

// slope(E_alpha) - slope(E) = -(n_v0/(nu D)) sum_i log |(1, alpha sigma_i)|_2.
LogLinear slope_difference(const TwistedBundle& tb, const PrecisionContext& ctx);

// Upper bound for the operator norm of a from (E, ||.||_v0) to the target.
Interval operator_norm_bound(const TwistedBundle& tb, const PrecisionContext& ctx);

struct SlopeDifferenceCheck {
  LogLinear value;  // slope_difference
  LogLinear bound;  // -(n_v0 rho/(nu D)) (log|(1,alpha)|_2 + log max{1, opnorm})
  bool holds = false;
};
// `opnorm` must enclose a value at least the true operator norm; its upper
// endpoint is used.
SlopeDifferenceCheck slope_difference_lower_bound(const TwistedBundle& tb, const Interval& opnorm,
                                                  const PrecisionContext& ctx);

// 1 + (nu A)^{mu/(nu-mu)}, A = max |a_ij|. HypothesisViolated unless mu < nu.
Interval classical_siegel_bound(int mu, int nu, const mpz_class& a_max, mpfr_prec_t prec);
// -slope + (1/2)(log nu + log rd_k). rd_k is built in for Q (1) and Q(i) (2).
LogLinear bombieri_vaaler_bound(const AdelicBundle& e, const std::optional<mpq_class>& rd,
                                const PrecisionContext& ctx);
// -slope + (1/2) log nu.
LogLinear absolute_siegel_bound(const AdelicBundle& e, const PrecisionContext& ctx);
// (n_v0 rho/(nu D))(log|(1,alpha)|_2 + log max{1, opnorm}) + (1/2) log nu - slope(E).
LogLinear approx_absolute_siegel_bound(const TwistedBundle& tb, const Interval& opnorm, const PrecisionContext& ctx);

using IntVector = std::vector<mpz_class>;

struct SiegelWitness {
  IntVector x;
  Interval size;   // sup norm (classical, PV) or height (absolute)
  Interval bound;
  bool within_bound = false;
};

// Orders candidate solutions: smaller sup norm, then smaller l1 norm, then
// first nonzero coordinate positive, then lexicographically greater.
bool witness_precedes(const IntVector& a, const IntVector& b);

class SearchBudgetExceeded : public Error {
 public:
  SearchBudgetExceeded(const std::string& what, std::optional<SiegelWitness> best)
      : Error("SearchBudgetExceeded", what), best_(std::move(best)) {}
  const std::optional<SiegelWitness>& best() const { return best_; }

 private:
  std::optional<SiegelWitness> best_;
};

// Smallest nonzero integer solution of a x = 0 under witness_precedes,
// enumerated over a Hermite basis of the integer kernel inside growing
// cubes. `budget` caps the number of enumeration nodes.
SiegelWitness classical_siegel_search(const std::vector<IntVector>& a, long budget = 20'000'000);

struct ApproxSearchOptions {
  bool require_hypothesis = true;
  std::optional<int> rank;  // taken from the singular spectrum when absent
  long budget = 20'000'000;
};

struct ApproxSearchResult {
  SiegelWitness witness;
  bool hypothesis_holds = false;
  int rank = 0;
  Interval row_sum_bound;  // A
};

// (2 mu H A / eps + 1)^{2 rho} < (H + 1)^nu, certified on enclosures.
bool approx_hypothesis_holds(int mu, int nu, int rho, long h, const Interval& a_bound, const Interval& eps);

// Nonzero integer x with max|x_j| <= H and max_i |sum_j a_ij x_j| <= eps, by
// exhaustive search. The witness `size` is the certified residual.
ApproxSearchResult approx_siegel_search(const CMatrix& a, long h, const Interval& eps,
                                        const ApproxSearchOptions& opts = {});

// Primitive integer x with h(x) <= -slope + (1/2) log nu, searched by
// increasing sup norm up to `max_sup`; within the first shell holding a
// witness the smallest height wins. Bundles over Q only.
SiegelWitness absolute_siegel_witness(const AdelicBundle& e, long max_sup, const PrecisionContext& ctx);

}  // namespace adelic
