#include "adelic/field/kmatrix.hpp"

#include <limits>

#include "adelic/errors.hpp"

namespace adelic {

KMatrix kmatrix_from_rational(const NumberField& k, const QMatrix& q) {
  KMatrix m;
  for (auto& row : q) {
    KVector r;
    for (auto& x : row) r.push_back(k.from_rational(x));
    m.push_back(std::move(r));
  }
  return m;
}

bool kmatrix_is_rational(const NumberField& k, const KMatrix& m) {
  for (auto& row : m) {
    for (auto& x : row) {
      if (!k.is_rational(x)) return false;
    }
  }
  return true;
}

QMatrix kmatrix_to_rational(const NumberField& k, const KMatrix& m) {
  QMatrix q;
  for (auto& row : m) {
    std::vector<mpq_class> r;
    for (auto& x : row) r.push_back(k.rational_value(x));
    q.push_back(std::move(r));
  }
  return q;
}

bool kmatrix_is_diagonal(const NumberField& k, const KMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (i != j && !k.is_zero(m[i][j])) return false;
    }
  }
  return true;
}

std::vector<ComplexInterval> embed_vector(const NumberField& k, const KVector& x, const Place& v,
                                          mpfr_prec_t prec) {
  std::vector<ComplexInterval> out;
  out.reserve(x.size());
  for (auto& e : x) out.push_back(k.embed(e, v, prec));
  return out;
}

CMatrix embed_matrix(const NumberField& k, const KMatrix& m, const Place& v, mpfr_prec_t prec) {
  CMatrix out;
  for (auto& row : m) out.push_back(embed_vector(k, row, v, prec));
  return out;
}

long min_valuation(const NumberField& k, const KVector& x, const Place& v, bool* all_zero) {
  long best = std::numeric_limits<long>::max();
  bool zero = true;
  for (auto& e : x) {
    if (k.is_zero(e)) continue;
    zero = false;
    best = std::min(best, k.valuation(e, v));
  }
  if (all_zero) *all_zero = zero;
  return best;
}

KMatrix reduce_to_square(const NumberField& k, KMatrix f, const Place& v) {
  const std::size_t m = f.size();
  const std::size_t r = m == 0 ? 0 : f[0].size();
  if (r > m) throw NotASubspace("more columns than rows");
  for (std::size_t j = 0; j < r; ++j) {
    std::size_t piv = m;
    long best = 0;
    for (std::size_t i = j; i < m; ++i) {
      if (k.is_zero(f[i][j])) continue;
      long val = k.valuation(f[i][j], v);
      if (piv == m || val < best) {
        piv = i;
        best = val;
      }
    }
    if (piv == m) throw NotASubspace("columns are linearly dependent");
    std::swap(f[piv], f[j]);
    for (std::size_t i = j + 1; i < m; ++i) {
      if (k.is_zero(f[i][j])) continue;
      FieldElement lambda = k.div(f[i][j], f[j][j]);
      for (std::size_t l = j; l < r; ++l) f[i][l] = k.sub(f[i][l], k.mul(lambda, f[j][l]));
    }
  }
  f.resize(r);
  return f;
}

}  // namespace adelic
