#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace adelic {

template <class T>
using Mat = std::vector<std::vector<T>>;

// Exact Gaussian elimination over a field described by an Ops policy:
//   T zero(), T one(), bool is_zero(const T&), add, sub, mul, div, neg.
template <class Ops>
class ExactLinAlg {
 public:
  using T = typename Ops::T;
  explicit ExactLinAlg(Ops ops) : ops_(std::move(ops)) {}
  const Ops& ops() const { return ops_; }

  Mat<T> zeros(std::size_t r, std::size_t c) const {
    return Mat<T>(r, std::vector<T>(c, ops_.zero()));
  }
  Mat<T> identity(std::size_t n) const {
    Mat<T> m = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = ops_.one();
    return m;
  }
  static std::size_t cols(const Mat<T>& m) { return m.empty() ? 0 : m[0].size(); }

  Mat<T> transpose(const Mat<T>& m) const {
    Mat<T> t = zeros(cols(m), m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    }
    return t;
  }

  Mat<T> mul(const Mat<T>& a, const Mat<T>& b) const {
    std::size_t n = a.size(), k = cols(a), m = cols(b);
    if (k != b.size()) throw std::invalid_argument("matrix shapes do not match");
    Mat<T> r = zeros(n, m);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < k; ++l) {
        if (ops_.is_zero(a[i][l])) continue;
        for (std::size_t j = 0; j < m; ++j) r[i][j] = ops_.add(r[i][j], ops_.mul(a[i][l], b[l][j]));
      }
    }
    return r;
  }

  std::vector<T> apply(const Mat<T>& a, const std::vector<T>& x) const {
    if (cols(a) != x.size()) throw std::invalid_argument("matrix/vector shapes do not match");
    std::vector<T> r(a.size(), ops_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (!ops_.is_zero(a[i][j]) && !ops_.is_zero(x[j])) r[i] = ops_.add(r[i], ops_.mul(a[i][j], x[j]));
      }
    }
    return r;
  }

  // Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref(Mat<T>& m) const {
    std::vector<std::size_t> pivots;
    std::size_t rows = m.size(), c = cols(m), r = 0;
    for (std::size_t j = 0; j < c && r < rows; ++j) {
      std::size_t piv = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (!ops_.is_zero(m[i][j])) {
          piv = i;
          break;
        }
      }
      if (piv == rows) continue;
      std::swap(m[r], m[piv]);
      T inv = ops_.div(ops_.one(), m[r][j]);
      for (std::size_t l = j; l < c; ++l) m[r][l] = ops_.mul(m[r][l], inv);
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == r || ops_.is_zero(m[i][j])) continue;
        T f = m[i][j];
        for (std::size_t l = j; l < c; ++l) m[i][l] = ops_.sub(m[i][l], ops_.mul(f, m[r][l]));
      }
      pivots.push_back(j);
      ++r;
    }
    return pivots;
  }

  std::size_t rank(Mat<T> m) const { return rref(m).size(); }

  T det(Mat<T> m) const {
    std::size_t n = m.size();
    if (n != cols(m) && n != 0) throw std::invalid_argument("det of a non-square matrix");
    T d = ops_.one();
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t piv = n;
      for (std::size_t i = j; i < n; ++i) {
        if (!ops_.is_zero(m[i][j])) {
          piv = i;
          break;
        }
      }
      if (piv == n) return ops_.zero();
      if (piv != j) {
        std::swap(m[piv], m[j]);
        d = ops_.neg(d);
      }
      d = ops_.mul(d, m[j][j]);
      T inv = ops_.div(ops_.one(), m[j][j]);
      for (std::size_t i = j + 1; i < n; ++i) {
        if (ops_.is_zero(m[i][j])) continue;
        T f = ops_.mul(m[i][j], inv);
        for (std::size_t l = j; l < n; ++l) m[i][l] = ops_.sub(m[i][l], ops_.mul(f, m[j][l]));
      }
    }
    return d;
  }

  // Throws std::domain_error if singular.
  Mat<T> inverse(const Mat<T>& m) const {
    std::size_t n = m.size();
    Mat<T> aug = zeros(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
      aug[i][n + i] = ops_.one();
    }
    auto piv = rref(aug);
    if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) throw std::domain_error("singular matrix");
    Mat<T> inv = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    }
    return inv;
  }

  // Basis of the right kernel {x : m x = 0}, returned as columns of a
  // cols(m) x k matrix.
  Mat<T> kernel(Mat<T> m, std::size_t ncols) const {
    auto piv = rref(m);
    std::vector<bool> is_piv(ncols, false);
    for (auto j : piv) is_piv[j] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (!is_piv[j]) free_cols.push_back(j);
    }
    Mat<T> basis = zeros(ncols, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      std::size_t f = free_cols[k];
      basis[f][k] = ops_.one();
      for (std::size_t r = 0; r < piv.size(); ++r) basis[piv[r]][k] = ops_.neg(m[r][f]);
    }
    return basis;
  }

 private:
  Ops ops_;
};

struct QOps {
  using T = mpq_class;
  T zero() const { return 0; }
  T one() const { return 1; }
  bool is_zero(const T& a) const { return a == 0; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T div(const T& a, const T& b) const { return a / b; }
  T neg(const T& a) const { return -a; }
};

using QMatrix = Mat<mpq_class>;
inline ExactLinAlg<QOps> qlinalg() { return ExactLinAlg<QOps>(QOps{}); }

}  // namespace adelic
