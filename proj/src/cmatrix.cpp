#include "dephase/cmatrix.hpp"

#include <cmath>
#include <stdexcept>

#include "dephase/errors.hpp"
#include "dephase/kernels.hpp"

namespace dephase {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = std::conj((*this)(i, j));
    return out;
}

cplx CMatrix::trace() const {
    if (!is_square()) throw DimensionMismatchError("trace of non-square matrix");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double CMatrix::hermiticity_defect() const {
    if (!is_square()) throw DimensionMismatchError("hermiticity of non-square matrix");
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

bool CMatrix::is_hermitian(double tol) const {
    return is_square() && hermiticity_defect() <= tol;
}

double CMatrix::max_abs_offdiag() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
}

bool CMatrix::all_finite() const {
    for (const cplx& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatchError("matrix addition shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatchError("matrix subtraction shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx scale) {
    for (cplx& z : data_) z *= scale;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatchError("matrix product shape mismatch");
    CMatrix c(a.rows(), b.cols());
    kernels::cgemm(a.rows(), a.cols(), b.cols(), a.data(), b.data(), c.data());
    return c;
}

cplx trace_product(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw DimensionMismatchError("trace_product shape mismatch");
    cplx t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            t += a(i, j) * b(j, i);
    return t;
}

void adjoint_into(const CMatrix& src, CMatrix& dst) {
    if (dst.rows() != src.cols() || dst.cols() != src.rows())
        dst = CMatrix(src.cols(), src.rows());
    for (std::size_t i = 0; i < src.rows(); ++i)
        for (std::size_t j = 0; j < src.cols(); ++j)
            dst(j, i) = std::conj(src(i, j));
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatchError("max_abs_diff shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
    return a * b - b * a;
}

} // namespace dephase
