#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace dephase {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. The one value type every module trades in.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    std::size_t size() const { return data_.size(); }

    CMatrix adjoint() const;
    cplx trace() const;

    /// Largest entrywise magnitude (the infinity norm used for tolerances).
    double max_abs() const;
    double frobenius_norm() const;

    /// max_abs(m - m^dagger) <= tol
    bool is_hermitian(double tol = 1e-12) const;
    double hermiticity_defect() const;

    /// Largest off-diagonal magnitude.
    double max_abs_offdiag() const;

    bool all_finite() const;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(cplx scale);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }

    /// Matrix product through the dispatched kernel layer.
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// tr(a * b) without forming the product.
cplx trace_product(const CMatrix& a, const CMatrix& b);

/// dst = src^dagger; dst is resized.
void adjoint_into(const CMatrix& src, CMatrix& dst);

/// max_abs(a - b); dimensions must agree.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// a*b - b*a
CMatrix commutator(const CMatrix& a, const CMatrix& b);

} // namespace dephase
