#include "kernels_impl.hpp"

#include <cstring>

// Reference implementations. Complex arithmetic is written out in real
// components so the semantics match the SIMD variants exactly (no libm
// NaN fixups in the multiply).

namespace dephase::kernels {
namespace {

void cgemm_scalar(std::size_t m, std::size_t k, std::size_t n,
                  const cplx* a, const cplx* b, cplx* c) {
    const double* A = reinterpret_cast<const double*>(a);
    const double* B = reinterpret_cast<const double*>(b);
    double* C = reinterpret_cast<double*>(c);
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = C + i * 2 * n;
        std::memset(crow, 0, sizeof(double) * 2 * n);
        for (std::size_t l = 0; l < k; ++l) {
            const double ar = A[2 * (i * k + l)];
            const double ai = A[2 * (i * k + l) + 1];
            if (ar == 0.0 && ai == 0.0) continue;
            const double* brow = B + l * 2 * n;
            for (std::size_t j = 0; j < n; ++j) {
                const double br = brow[2 * j];
                const double bi = brow[2 * j + 1];
                crow[2 * j] += ar * br - ai * bi;
                crow[2 * j + 1] += ar * bi + ai * br;
            }
        }
    }
}

void scale_cols_scalar(std::size_t m, std::size_t n,
                       const cplx* in, const cplx* d, cplx* out) {
    const double* X = reinterpret_cast<const double*>(in);
    const double* D = reinterpret_cast<const double*>(d);
    double* Y = reinterpret_cast<double*>(out);
    for (std::size_t i = 0; i < m; ++i) {
        const double* xrow = X + i * 2 * n;
        double* yrow = Y + i * 2 * n;
        for (std::size_t j = 0; j < n; ++j) {
            const double xr = xrow[2 * j], xi = xrow[2 * j + 1];
            const double dr = D[2 * j], di = D[2 * j + 1];
            yrow[2 * j] = xr * dr - xi * di;
            yrow[2 * j + 1] = xr * di + xi * dr;
        }
    }
}

void rot2_scalar(std::size_t n, double c, cplx alpha, cplx* x, cplx* y) {
    double* X = reinterpret_cast<double*>(x);
    double* Y = reinterpret_cast<double*>(y);
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t j = 0; j < n; ++j) {
        const double xr = X[2 * j], xi = X[2 * j + 1];
        const double yr = Y[2 * j], yi = Y[2 * j + 1];
        X[2 * j] = c * xr + ar * yr - ai * yi;
        X[2 * j + 1] = c * xi + ar * yi + ai * yr;
        // conj(alpha) * x = (ar*xr + ai*xi, ar*xi - ai*xr)
        Y[2 * j] = c * yr - (ar * xr + ai * xi);
        Y[2 * j + 1] = c * yi - (ar * xi - ai * xr);
    }
}

cplx cdotc_scalar(std::size_t n, const cplx* a, const cplx* b) {
    const double* A = reinterpret_cast<const double*>(a);
    const double* B = reinterpret_cast<const double*>(b);
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double ar = A[2 * j], ai = A[2 * j + 1];
        const double br = B[2 * j], bi = B[2 * j + 1];
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double weighted_abs2_sum_scalar(std::size_t mr, std::size_t nc,
                                const cplx* m, const double* wr,
                                const double* wc) {
    const double* M = reinterpret_cast<const double*>(m);
    double total = 0.0;
    for (std::size_t i = 0; i < mr; ++i) {
        const double* row = M + i * 2 * nc;
        double racc = 0.0;
        for (std::size_t j = 0; j < nc; ++j) {
            const double re = row[2 * j], im = row[2 * j + 1];
            racc += (re * re + im * im) * wc[j];
        }
        total += wr[i] * racc;
    }
    return total;
}

void axpy_real_scalar(std::size_t n, double a, const cplx* x, cplx* y) {
    const double* X = reinterpret_cast<const double*>(x);
    double* Y = reinterpret_cast<double*>(y);
    for (std::size_t j = 0; j < 2 * n; ++j) Y[j] += a * X[j];
}

} // namespace

namespace scalar_impl {
const KernelTable table = {
    cgemm_scalar,   scale_cols_scalar,        rot2_scalar,
    cdotc_scalar,   weighted_abs2_sum_scalar, axpy_real_scalar,
};
} // namespace scalar_impl

} // namespace dephase::kernels
