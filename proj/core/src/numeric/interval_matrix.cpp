#include "adelic/numeric/interval_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "adelic/errors.hpp"

namespace adelic {

namespace {

mpfr_prec_t max_prec(const CMatrix& a) {
  mpfr_prec_t p = Interval::kDefaultPrec;
  for (auto& row : a) {
    for (auto& z : row) p = std::max(p, z.prec());
  }
  return p;
}

// Lower bound of |z| compared through MPFR; larger means a safer pivot.
bool better_pivot(const ComplexInterval& a, const ComplexInterval& b) {
  Interval ma = a.norm2(), mb = b.norm2();
  return mpfr_cmp(ma.lo(), mb.lo()) > 0;
}

bool certainly_nonzero(const ComplexInterval& z) { return z.norm2().is_positive(); }

using LDMatrix = std::vector<std::vector<long double>>;

// Cyclic Jacobi on a real symmetric matrix; returns the rotation product.
LDMatrix jacobi_vectors(LDMatrix a) {
  const std::size_t n = a.size();
  LDMatrix v(n, std::vector<long double>(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0L;
  long double scale = 0;
  for (auto& row : a) {
    for (long double x : row) scale = std::max(scale, std::fabs(x));
  }
  if (scale == 0) return v;
  for (int sweep = 0; sweep < 60; ++sweep) {
    long double off = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off = std::max(off, std::fabs(a[i][j]));
    }
    if (off <= scale * 1e-30L) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0) continue;
        long double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        long double t = (theta >= 0 ? 1.0L : -1.0L) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        long double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          long double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          long double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          long double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  return v;
}

}  // namespace

CMatrix cmat_zeros(std::size_t rows, std::size_t cols, mpfr_prec_t prec) {
  return CMatrix(rows, std::vector<ComplexInterval>(cols, ComplexInterval(prec)));
}

CMatrix cmat_identity(std::size_t n, mpfr_prec_t prec) {
  CMatrix m = cmat_zeros(n, n, prec);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = ComplexInterval(Interval(1L, prec));
  return m;
}

CMatrix cmat_from_rational(const QMatrix& q, mpfr_prec_t prec) {
  CMatrix m;
  for (auto& row : q) {
    std::vector<ComplexInterval> r;
    for (auto& x : row) r.emplace_back(Interval(x, prec));
    m.push_back(std::move(r));
  }
  return m;
}

CMatrix adjoint(const CMatrix& a) { return conj(transpose(a)); }

CMatrix transpose(const CMatrix& a) {
  std::size_t r = a.size(), c = a.empty() ? 0 : a[0].size();
  CMatrix t(c, std::vector<ComplexInterval>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) t[j][i] = a[i][j];
  }
  return t;
}

CMatrix conj(const CMatrix& a) {
  CMatrix t = a;
  for (auto& row : t) {
    for (auto& z : row) z = z.conj();
  }
  return t;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  std::size_t n = a.size(), k = a.empty() ? 0 : a[0].size(), m = b.empty() ? 0 : b[0].size();
  if (k != b.size()) throw DimensionMismatch("matrix product shapes do not match");
  mpfr_prec_t prec = std::max(max_prec(a), max_prec(b));
  CMatrix r = cmat_zeros(n, m, prec);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  }
  return r;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  if (a.size() != b.size()) throw DimensionMismatch("matrix sum shapes do not match");
  CMatrix r = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) throw DimensionMismatch("matrix sum shapes do not match");
    for (std::size_t j = 0; j < a[i].size(); ++j) r[i][j] += b[i][j];
  }
  return r;
}

CMatrix scale(const CMatrix& a, const Interval& s) {
  CMatrix r = a;
  for (auto& row : r) {
    for (auto& z : row) z = ComplexInterval(z.re * s, z.im * s);
  }
  return r;
}

std::vector<ComplexInterval> apply(const CMatrix& a, const std::vector<ComplexInterval>& x) {
  std::vector<ComplexInterval> r;
  for (auto& row : a) {
    if (row.size() != x.size()) throw DimensionMismatch("matrix/vector shapes do not match");
    ComplexInterval acc(max_prec(a));
    for (std::size_t j = 0; j < x.size(); ++j) acc += row[j] * x[j];
    r.push_back(acc);
  }
  return r;
}

CMatrix inverse(const CMatrix& a) {
  const std::size_t n = a.size();
  mpfr_prec_t prec = max_prec(a);
  CMatrix m = a, inv = cmat_identity(n, prec);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t piv = j;
    for (std::size_t i = j + 1; i < n; ++i) {
      if (better_pivot(m[i][j], m[piv][j])) piv = i;
    }
    if (!certainly_nonzero(m[piv][j])) throw PrecisionExhausted("matrix inverse: no certified pivot");
    std::swap(m[piv], m[j]);
    std::swap(inv[piv], inv[j]);
    ComplexInterval d = m[j][j];
    for (std::size_t l = 0; l < n; ++l) {
      m[j][l] /= d;
      inv[j][l] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      ComplexInterval f = m[i][j];
      for (std::size_t l = 0; l < n; ++l) {
        m[i][l] -= f * m[j][l];
        inv[i][l] -= f * inv[j][l];
      }
    }
  }
  return inv;
}

ComplexInterval det(const CMatrix& a) {
  const std::size_t n = a.size();
  mpfr_prec_t prec = max_prec(a);
  CMatrix m = a;
  ComplexInterval d(Interval(1L, prec));
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t piv = j;
    for (std::size_t i = j + 1; i < n; ++i) {
      if (better_pivot(m[i][j], m[piv][j])) piv = i;
    }
    if (!certainly_nonzero(m[piv][j])) throw PrecisionExhausted("determinant: no certified pivot");
    if (piv != j) {
      std::swap(m[piv], m[j]);
      d = -d;
    }
    d *= m[j][j];
    for (std::size_t i = j + 1; i < n; ++i) {
      ComplexInterval f = m[i][j] / m[j][j];
      for (std::size_t l = j; l < n; ++l) m[i][l] -= f * m[j][l];
    }
  }
  return d;
}

Interval hermitian_form(const CMatrix& g, const std::vector<ComplexInterval>& x) {
  auto gx = apply(g, x);
  ComplexInterval acc(max_prec(g));
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i].conj() * gx[i];
  return acc.re;
}

std::vector<Interval> hermitian_eigenvalues(const CMatrix& h) {
  const std::size_t n = h.size();
  if (n == 0) return {};
  mpfr_prec_t prec = max_prec(h);
  bool real = true;
  for (auto& row : h) {
    for (auto& z : row) real = real && z.im.is_point() && z.im.contains(mpq_class(0));
  }
  // A complex Hermitian matrix X + iY acts on R^{2n} as [[X, -Y], [Y, X]],
  // which has the same eigenvalues, each twice.
  const std::size_t m = real ? n : 2 * n;
  CMatrix s = cmat_zeros(m, m, prec);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      s[i][j] = ComplexInterval(h[i][j].re);
      if (!real) {
        s[i][n + j] = ComplexInterval(-h[i][j].im);
        s[n + i][j] = ComplexInterval(h[i][j].im);
        s[n + i][n + j] = ComplexInterval(h[i][j].re);
      }
    }
  }

  CMatrix v = cmat_identity(m, prec);
  CMatrix b = s;
  for (int round = 0; round < 3; ++round) {
    LDMatrix mid(m, std::vector<long double>(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) mid[i][j] = (b[i][j].re.mid_ld() + b[j][i].re.mid_ld()) / 2;
    }
    LDMatrix w = jacobi_vectors(mid);
    CMatrix wc = cmat_zeros(m, m, prec);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) wc[i][j] = ComplexInterval(Interval::from_long_double(w[i][j], prec));
    }
    v = v * wc;
    for (auto& row : v) {
      for (auto& z : row) z = ComplexInterval(z.re.mid());
    }
    b = inverse(v) * s * v;
  }

  std::vector<Interval> discs;
  for (std::size_t i = 0; i < m; ++i) {
    Interval r = Interval::zero(prec);
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) r += abs(b[i][j].re);
    }
    Interval c = b[i][i].re;
    discs.push_back(c + Interval::hull(-r, r));
  }
  std::sort(discs.begin(), discs.end(),
            [](const Interval& a, const Interval& c) { return mpfr_cmp(a.lo(), c.lo()) < 0; });
  std::vector<Interval> sorted;
  std::size_t i = 0;
  while (i < m) {
    Interval comp = discs[i];
    std::size_t j = i + 1;
    while (j < m && mpfr_cmp(discs[j].lo(), comp.hi()) <= 0) {
      comp = Interval::hull(comp, discs[j]);
      ++j;
    }
    for (std::size_t k = i; k < j; ++k) sorted.push_back(comp);
    i = j;
  }
  if (real) return sorted;
  std::vector<Interval> out;
  for (std::size_t k = 1; k < m; k += 2) out.push_back(sorted[k]);
  return out;
}

}  // namespace adelic
