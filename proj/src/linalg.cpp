#include "dephase/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dephase/errors.hpp"
#include "dephase/kernels.hpp"

namespace dephase::linalg {
namespace {

double offdiag_frobenius(const CMatrix& a) {
    const std::size_t n = a.rows();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
}

} // namespace

CMatrix EigenDecomposition::reconstruct() const {
    const CMatrix& v = eigenvectors;
    CMatrix scaled(v.rows(), v.cols());
    std::vector<cplx> d(eigenvalues.begin(), eigenvalues.end());
    kernels::scale_cols(v.rows(), v.cols(), v.data(), d.data(), scaled.data());
    return scaled * v.adjoint();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const cplx av = a(ia, ja);
            if (av == cplx{}) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    out(ia * b.rows() + ib, ja * b.cols() + jb) = av * b(ib, jb);
        }
    return out;
}

EigenDecomposition eigh(const CMatrix& h) {
    if (!h.is_square())
        throw DimensionMismatchError("eigh: matrix must be square");
    if (!h.is_hermitian(kHermitianTol))
        throw NotHermitianError("eigh: input not Hermitian within 1e-12");

    const std::size_t n = h.rows();
    CMatrix a = h;
    CMatrix w = CMatrix::identity(n); // accumulates P^dagger row-wise

    const double threshold = 1e-13 * h.frobenius_norm();
    const double skip = threshold / static_cast<double>(std::max<std::size_t>(n, 1));
    constexpr int kSweepBudget = 100;

    int sweep = 0;
    while (offdiag_frobenius(a) > threshold) {
        if (++sweep > kSweepBudget)
            throw NoConvergenceError("eigh: Jacobi sweep budget exhausted");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double absb = std::abs(apq);
                if (absb <= skip) continue;

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * absb);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx alpha = -s * (apq / absb);

                // Left rotation on rows p,q; the right rotation follows from
                // Hermitian mirroring of the two touched columns.
                kernels::rot2(n, c, alpha, &a(p, 0), &a(q, 0));
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    a(i, p) = std::conj(a(p, i));
                    a(i, q) = std::conj(a(q, i));
                }
                a(p, p) = app - t * absb;
                a(q, q) = aqq + t * absb;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                kernels::rot2(n, c, alpha, &w(p, 0), &w(q, 0));
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a(x, x).real() < a(y, y).real();
    });

    EigenDecomposition ed;
    ed.eigenvalues.resize(n);
    ed.eigenvectors = CMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        ed.eigenvalues[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i)
            ed.eigenvectors(i, j) = std::conj(w(order[j], i));
    }
    return ed;
}

CMatrix expm_unitary(const EigenDecomposition& ed, double t) {
    const CMatrix& v = ed.eigenvectors;
    const std::size_t n = v.rows();
    std::vector<cplx> phases(n);
    for (std::size_t j = 0; j < n; ++j)
        phases[j] = std::polar(1.0, -ed.eigenvalues[j] * t);
    CMatrix scaled(n, n);
    kernels::scale_cols(n, n, v.data(), phases.data(), scaled.data());
    return scaled * v.adjoint();
}

CMatrix expm_unitary(const CMatrix& h, double t) {
    return expm_unitary(eigh(h), t);
}

CMatrix partial_trace_env(const CMatrix& m, std::size_t dim_s, std::size_t dim_e) {
    if (!m.is_square() || m.rows() != dim_s * dim_e)
        throw DimensionMismatchError("partial_trace_env: dimension mismatch");
    CMatrix out(dim_s, dim_s);
    for (std::size_t s = 0; s < dim_s; ++s)
        for (std::size_t sp = 0; sp < dim_s; ++sp) {
            cplx acc = 0.0;
            for (std::size_t e = 0; e < dim_e; ++e)
                acc += m(s * dim_e + e, sp * dim_e + e);
            out(s, sp) = acc;
        }
    return out;
}

CMatrix partial_trace_sys(const CMatrix& m, std::size_t dim_s, std::size_t dim_e) {
    if (!m.is_square() || m.rows() != dim_s * dim_e)
        throw DimensionMismatchError("partial_trace_sys: dimension mismatch");
    CMatrix out(dim_e, dim_e);
    for (std::size_t e = 0; e < dim_e; ++e)
        for (std::size_t ep = 0; ep < dim_e; ++ep) {
            cplx acc = 0.0;
            for (std::size_t s = 0; s < dim_s; ++s)
                acc += m(s * dim_e + e, s * dim_e + ep);
            out(e, ep) = acc;
        }
    return out;
}

double trace_norm(const CMatrix& m) {
    if (!m.is_square())
        throw DimensionMismatchError("trace_norm: matrix must be square");
    if (m.is_hermitian(kHermitianTol)) {
        double s = 0.0;
        for (double lam : eigh(m).eigenvalues) s += std::abs(lam);
        return s;
    }
    const CMatrix g = m.adjoint() * m;
    double s = 0.0;
    for (double lam : eigh(g).eigenvalues) s += std::sqrt(std::max(lam, 0.0));
    return s;
}

} // namespace dephase::linalg
