#pragma once

#include <vector>

#include "adelic/numeric/interval.hpp"
#include "adelic/numeric/linalg.hpp"

namespace adelic {

using CMatrix = Mat<ComplexInterval>;
using RMatrix = Mat<Interval>;

CMatrix cmat_zeros(std::size_t rows, std::size_t cols, mpfr_prec_t prec);
CMatrix cmat_identity(std::size_t n, mpfr_prec_t prec);
CMatrix cmat_from_rational(const QMatrix& q, mpfr_prec_t prec);
CMatrix adjoint(const CMatrix& a);
CMatrix transpose(const CMatrix& a);
CMatrix conj(const CMatrix& a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix scale(const CMatrix& a, const Interval& s);
std::vector<ComplexInterval> apply(const CMatrix& a, const std::vector<ComplexInterval>& x);

// Gaussian elimination with pivots chosen by certified magnitude. Throws
// PrecisionExhausted when every candidate pivot encloses 0.
CMatrix inverse(const CMatrix& a);
ComplexInterval det(const CMatrix& a);

// x^* G x for Hermitian G; the result is real.
Interval hermitian_form(const CMatrix& g, const std::vector<ComplexInterval>& x);

// Enclosures of the eigenvalues of a Hermitian matrix in ascending order.
// Approximate eigenvectors come from Jacobi sweeps; the enclosures come from
// Gershgorin discs of the exactly computed similarity transform, so a
// cluster of touching discs yields the same hull for each of its members.
std::vector<Interval> hermitian_eigenvalues(const CMatrix& h);

}  // namespace adelic
