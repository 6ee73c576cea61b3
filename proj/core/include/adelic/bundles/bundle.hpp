#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adelic/field/kmatrix.hpp"
#include "adelic/numeric/log_scale.hpp"

namespace adelic {

// Norm data at one deviating place.
//
// Finite places: ||x||_v = max_i |(F x)_i|_v for an invertible K-matrix F
// (the change of frame to an orthonormal basis). Archimedean places:
// ||x||_v^2 = x^* G x for a Hermitian positive definite G, evaluated at any
// precision; over Q the Gram matrix is also kept exactly.
class NormSpec {
 public:
  using GramFn = std::function<CMatrix(mpfr_prec_t)>;

  static NormSpec finite(const NumberField& k, const Place& v, KMatrix frame);
  // Archimedean norm |F x|_2 from a frame matrix over K.
  static NormSpec archimedean(const NumberField& k, const Place& v, KMatrix frame);
  static NormSpec archimedean_gram(const Place& v, int dim, GramFn gram, std::optional<QMatrix> exact,
                                   bool diagonal);

  const Place& place() const { return place_; }
  int dim() const { return dim_; }
  bool diagonal() const { return diagonal_; }

  // Finite places, and archimedean specs built from a frame.
  const std::optional<KMatrix>& frame() const { return frame_; }
  // Archimedean only.
  CMatrix gram(mpfr_prec_t prec) const;
  const std::optional<QMatrix>& exact_gram() const { return exact_gram_; }

 private:
  Place place_;
  int dim_ = 0;
  bool diagonal_ = false;
  std::optional<KMatrix> frame_;
  GramFn gram_;
  std::optional<QMatrix> exact_gram_;
};

// Adelic hermitian bundle (K^dim, (||.||_v)_v): standard |.|_2 at every place
// except the finitely many listed deviations.
class AdelicBundle {
 public:
  AdelicBundle(NumberField k, int dim);
  AdelicBundle(NumberField k, int dim, const std::vector<NormSpec>& deviations);

  const NumberField& field() const { return k_; }
  int dim() const { return dim_; }
  // Keyed by place label.
  const std::map<std::string, NormSpec>& deviations() const { return dev_; }
  const NormSpec* deviation(const Place& v) const;
  bool is_standard() const { return dev_.empty(); }
  // Every deviation is diagonal in the reference basis.
  bool is_diagonal() const;

  // log ||x||_v; exact at finite places and, over Q, at the real place.
  LogLinear log_norm(const KVector& x, const Place& v, const PrecisionContext& ctx) const;
  Interval norm(const KVector& x, const Place& v, const PrecisionContext& ctx) const;

 private:
  NumberField k_;
  int dim_;
  std::map<std::string, NormSpec> dev_;
};

// Normalized Arakelov degree -(1/D) sum_v n_v log|det|_v, with
// log|det|_v = (1/2) log det G at archimedean places. Exact over Q.
LogLinear degree(const AdelicBundle& e, const PrecisionContext& ctx);
// degree / dim; throws ZeroBundle for dim 0 (the slope is -infinity there).
LogLinear slope(const AdelicBundle& e, const PrecisionContext& ctx);

struct MaxSlope {
  LogLinear value;
  bool exact = false;
  // Basis (as columns of a dim x r matrix) of the subspace realizing `value`.
  KMatrix witness;
};

// Exact for diagonal bundles (the maximum of the line degrees). Otherwise the
// largest slope over coordinate subspaces and the lines spanned by columns
// of the inverse deviation frames, which is a lower bound.
MaxSlope max_slope(const AdelicBundle& e, const PrecisionContext& ctx);

// Degrees of the coordinate lines of a diagonal bundle.
std::vector<LogLinear> line_degrees(const AdelicBundle& e, const PrecisionContext& ctx);

AdelicBundle dual(const AdelicBundle& e);
AdelicBundle direct_sum(const AdelicBundle& a, const AdelicBundle& b);
// Sub-bundle spanned by `vectors`; its coordinates are those of the first
// linearly independent subfamily. Throws NotASubspace on length mismatch.
AdelicBundle sub(const AdelicBundle& e, const std::vector<KVector>& vectors);
// Quotient by the span of `vectors`, in coordinates y = C^T x where the
// columns of C (see quotient_map) span the annihilator of the subspace.
AdelicBundle quotient(const AdelicBundle& e, const std::vector<KVector>& vectors);
KMatrix quotient_map(const AdelicBundle& e, const std::vector<KVector>& vectors);
// Columns of the returned dim x r matrix are the basis `sub` uses.
KMatrix independent_columns(const NumberField& k, int dim, const std::vector<KVector>& vectors);

}  // namespace adelic
