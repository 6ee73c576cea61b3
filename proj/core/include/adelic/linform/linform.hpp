#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adelic/baker/baker_bound.hpp"
#include "adelic/field/kmatrix.hpp"
#include "adelic/field/number_field.hpp"
#include "adelic/field/padic.hpp"

namespace adelic {

enum class LogKind { Archimedean, Padic };

// Lambda_i = beta_{i,0} + sum_j beta_{i,j} u_j with e^{u_j} = alpha_j.
// Archimedean logarithms are fixed by a branch: u_j = Log alpha_j + 2 i pi m_j
// (principal Log at the embedding v0). p-adic ones are u_j = log_p alpha_j.
struct LinFormInstance {
  NumberField k = NumberField::rationals();
  std::vector<FieldElement> alpha;               // n
  LogKind log_kind = LogKind::Archimedean;
  std::vector<long> branches;                    // archimedean: n entries
  std::vector<std::vector<FieldElement>> beta;   // t rows of n + 1, column 0 is beta_{i,0}
  Place v0;
  std::optional<int> declared_s;
  std::optional<std::vector<int>> declared_I;    // 0-based
  BoundKind kind = BoundKind::Principal;

  int n() const { return static_cast<int>(alpha.size()); }
  int t() const { return static_cast<int>(beta.size()); }
  // Shapes, place kind and e^{u_j} = alpha_j on enclosures (archimedean) or
  // exp(log alpha_j) = alpha_j modulo p^N (p-adic).
  void validate(const PrecisionContext& ctx) const;
};

// The logarithms u_j at v0.
std::vector<ComplexInterval> archimedean_logs(const LinFormInstance& inst, mpfr_prec_t prec);
std::vector<PadicNumber> padic_logs(const LinFormInstance& inst, long digits);

struct LambdaEvaluation {
  std::vector<Interval> abs;           // |Lambda_i|_{v0}
  // p-adic: exact valuations of the Lambda_i that are nonzero at the final
  // precision (|Lambda_i| = p^{-val}); nullopt for those still zero.
  std::vector<std::optional<long>> valuations;
  bool separated = false;              // max |Lambda_i| certified nonzero
  long precision_used = 0;             // bits or p-adic digits
  // p-adic: |u_i| < r^2 for every i (the stronger domain condition).
  bool strong_domain = true;
};

// Refines precision up to 16 times the context's until the maximum is
// separated from 0; an unseparated result is reported, not thrown.
LambdaEvaluation eval_linear_forms(const LinFormInstance& inst, const PrecisionContext& ctx);

enum class HypothesisStatus { Certified, Assumed };
std::string to_string(HypothesisStatus s);

struct HypothesisReport {
  HypothesisStatus status = HypothesisStatus::Assumed;
  int rank = 0;                 // dim of the Q-span of the u_j = dim T_u
  std::vector<int> free_family; // I, 0-based
  int s = 0;                    // dim T_u - dim(W0 cap T_u)
  int beta_rank = 0;            // rank of (beta_{i,j})_{j >= 1} over k
};

// Exact for all-rational alpha: u_j has coordinates (v_q(alpha_j))_q and,
// archimedean, the multiple of i pi; T_u is their row space. Otherwise the
// declared values are echoed.
HypothesisReport certify_hypotheses(const LinFormInstance& inst);

struct VerificationReport {
  LambdaEvaluation lambda;
  LogLinear max_log_lambda;
  BoundInstance bound_instance;
  TheoremBound bound;
  LogScaleReal margin;          // max_log_lambda - bound
  bool pass = false;
  HypothesisReport hypotheses;
};

// The bound data are derived through the heights module: log a_j =
// max{h(alpha_j), eps0 fe |u_j| / D}, log b = D max{1, h(beta_{i,j})};
// fe = e at archimedean places and the largest admissible value,
// min_{i in I} r^2/|u_i|, at finite ones.
BoundInstance derive_bound_instance(const LinFormInstance& inst, const HypothesisReport& hyp,
                                    const PrecisionContext& ctx);

VerificationReport verify_instance(const LinFormInstance& inst, BoundKind kind, const PrecisionContext& ctx);

}  // namespace adelic
