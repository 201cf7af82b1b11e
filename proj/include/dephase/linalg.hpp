#pragma once

#include <vector>

#include "dephase/cmatrix.hpp"

// Dense complex linear-algebra kernel: Kronecker products, Hermitian
// eigendecomposition (cyclic Jacobi), unitary exponentials exp(-i*H*t),
// partial traces and the trace norm. Self-contained; everything downstream
// builds on these five operations.

namespace dephase::linalg {

inline constexpr double kHermitianTol = 1e-12;

struct EigenDecomposition {
    std::vector<double> eigenvalues; // ascending
    CMatrix eigenvectors;            // unitary, columns match eigenvalues

    /// V * diag(lambda) * V^dagger
    CMatrix reconstruct() const;
};

/// Standard Kronecker product, dimension (ra*rb) x (ca*cb).
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
/// Off-diagonal Frobenius threshold 1e-13 * ||h||_F, sweep budget 100.
/// Throws NotHermitianError if max_abs(h - h^dagger) > 1e-12,
/// NoConvergenceError if the sweep budget is exhausted.
EigenDecomposition eigh(const CMatrix& h);

/// exp(-i*h*t) for Hermitian h, via the eigendecomposition
/// V * diag(exp(-i*lambda*t)) * V^dagger. Unitary up to roundoff.
CMatrix expm_unitary(const CMatrix& h, double t);
CMatrix expm_unitary(const EigenDecomposition& ed, double t);

/// Trace out the second (environment) factor of a (dim_s*dim_e)-dimensional
/// square matrix ordered system-first; returns dim_s x dim_s.
CMatrix partial_trace_env(const CMatrix& m, std::size_t dim_s, std::size_t dim_e);

/// Trace out the first (system) factor; returns dim_e x dim_e.
CMatrix partial_trace_sys(const CMatrix& m, std::size_t dim_s, std::size_t dim_e);

/// Sum of singular values. Hermitian inputs go through their spectrum,
/// anything else through eigh(m^dagger * m).
double trace_norm(const CMatrix& m);

} // namespace dephase::linalg
