#include "kernels_impl.hpp"

#include <immintrin.h>

// AVX2+FMA variants. Complex doubles are interleaved [re,im], two per
// 256-bit vector. _mm256_fmaddsub_pd gives the (re: mul-sub, im: mul-add)
// pattern of a complex multiply directly.

namespace dephase::kernels {
namespace {

inline __m256d swap_reim(__m256d v) { return _mm256_permute_pd(v, 0x5); }

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

// crow += (ar + i*ai) * brow, nd doubles (nd even).
inline void acc_row1(double* crow, const double* brow,
                     double ar, double ai, std::size_t nd) {
    const __m256d vre = _mm256_set1_pd(ar);
    const __m256d vim = _mm256_set1_pd(ai);
    std::size_t j = 0;
    for (; j + 4 <= nd; j += 4) {
        const __m256d vb = _mm256_loadu_pd(brow + j);
        const __m256d t = _mm256_mul_pd(vim, swap_reim(vb));
        const __m256d vc = _mm256_loadu_pd(crow + j);
        _mm256_storeu_pd(crow + j,
                         _mm256_add_pd(vc, _mm256_fmaddsub_pd(vre, vb, t)));
    }
    for (; j < nd; j += 2) {
        const double br = brow[j], bi = brow[j + 1];
        crow[j] += ar * br - ai * bi;
        crow[j + 1] += ar * bi + ai * br;
    }
}

// crow += a0 * b0row + a1 * b1row in one pass over crow.
inline void acc_row2(double* crow, const double* b0row, const double* b1row,
                     double a0r, double a0i, double a1r, double a1i,
                     std::size_t nd) {
    const __m256d v0re = _mm256_set1_pd(a0r);
    const __m256d v0im = _mm256_set1_pd(a0i);
    const __m256d v1re = _mm256_set1_pd(a1r);
    const __m256d v1im = _mm256_set1_pd(a1i);
    std::size_t j = 0;
    for (; j + 4 <= nd; j += 4) {
        __m256d vc = _mm256_loadu_pd(crow + j);
        const __m256d vb0 = _mm256_loadu_pd(b0row + j);
        vc = _mm256_add_pd(
            vc, _mm256_fmaddsub_pd(v0re, vb0,
                                   _mm256_mul_pd(v0im, swap_reim(vb0))));
        const __m256d vb1 = _mm256_loadu_pd(b1row + j);
        vc = _mm256_add_pd(
            vc, _mm256_fmaddsub_pd(v1re, vb1,
                                   _mm256_mul_pd(v1im, swap_reim(vb1))));
        _mm256_storeu_pd(crow + j, vc);
    }
    for (; j < nd; j += 2) {
        const double b0r = b0row[j], b0i = b0row[j + 1];
        const double b1r = b1row[j], b1i = b1row[j + 1];
        crow[j] += a0r * b0r - a0i * b0i + a1r * b1r - a1i * b1i;
        crow[j + 1] += a0r * b0i + a0i * b0r + a1r * b1i + a1i * b1r;
    }
}

void cgemm_avx2(std::size_t m, std::size_t k, std::size_t n,
                const cplx* a, const cplx* b, cplx* c) {
    const double* A = reinterpret_cast<const double*>(a);
    const double* B = reinterpret_cast<const double*>(b);
    double* C = reinterpret_cast<double*>(c);
    const std::size_t nd = 2 * n;
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = C + i * nd;
        std::size_t j = 0;
        const __m256d z = _mm256_setzero_pd();
        for (; j + 4 <= nd; j += 4) _mm256_storeu_pd(crow + j, z);
        for (; j < nd; ++j) crow[j] = 0.0;

        std::size_t l = 0;
        for (; l + 2 <= k; l += 2) {
            const double a0r = A[2 * (i * k + l)];
            const double a0i = A[2 * (i * k + l) + 1];
            const double a1r = A[2 * (i * k + l) + 2];
            const double a1i = A[2 * (i * k + l) + 3];
            const bool z0 = (a0r == 0.0 && a0i == 0.0);
            const bool z1 = (a1r == 0.0 && a1i == 0.0);
            const double* b0 = B + l * nd;
            const double* b1 = B + (l + 1) * nd;
            if (z0 && z1) continue;
            if (z1) {
                acc_row1(crow, b0, a0r, a0i, nd);
            } else if (z0) {
                acc_row1(crow, b1, a1r, a1i, nd);
            } else {
                acc_row2(crow, b0, b1, a0r, a0i, a1r, a1i, nd);
            }
        }
        if (l < k) {
            const double ar = A[2 * (i * k + l)];
            const double ai = A[2 * (i * k + l) + 1];
            if (ar != 0.0 || ai != 0.0)
                acc_row1(crow, B + l * nd, ar, ai, nd);
        }
    }
}

void scale_cols_avx2(std::size_t m, std::size_t n,
                     const cplx* in, const cplx* d, cplx* out) {
    const double* X = reinterpret_cast<const double*>(in);
    const double* D = reinterpret_cast<const double*>(d);
    double* Y = reinterpret_cast<double*>(out);
    const std::size_t nd = 2 * n;
    for (std::size_t i = 0; i < m; ++i) {
        const double* xrow = X + i * nd;
        double* yrow = Y + i * nd;
        std::size_t j = 0;
        for (; j + 4 <= nd; j += 4) {
            const __m256d vx = _mm256_loadu_pd(xrow + j);
            const __m256d vd = _mm256_loadu_pd(D + j);
            const __m256d dre = _mm256_movedup_pd(vd);
            const __m256d dim = _mm256_permute_pd(vd, 0xF);
            const __m256d t1 = _mm256_mul_pd(vx, dre);
            const __m256d t2 = _mm256_mul_pd(swap_reim(vx), dim);
            _mm256_storeu_pd(yrow + j, _mm256_addsub_pd(t1, t2));
        }
        for (; j < nd; j += 2) {
            const double xr = xrow[j], xi = xrow[j + 1];
            const double dr = D[j], di = D[j + 1];
            yrow[j] = xr * dr - xi * di;
            yrow[j + 1] = xr * di + xi * dr;
        }
    }
}

void rot2_avx2(std::size_t n, double c, cplx alpha, cplx* x, cplx* y) {
    double* X = reinterpret_cast<double*>(x);
    double* Y = reinterpret_cast<double*>(y);
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d var = _mm256_set1_pd(alpha.real());
    const __m256d vai = _mm256_set1_pd(alpha.imag());
    const std::size_t nd = 2 * n;
    std::size_t j = 0;
    for (; j + 4 <= nd; j += 4) {
        const __m256d vx = _mm256_loadu_pd(X + j);
        const __m256d vy = _mm256_loadu_pd(Y + j);
        const __m256d t =
            _mm256_fmaddsub_pd(var, vy, _mm256_mul_pd(vai, swap_reim(vy)));
        const __m256d nx = _mm256_fmadd_pd(vc, vx, t);
        const __m256d u =
            _mm256_fmsubadd_pd(var, vx, _mm256_mul_pd(vai, swap_reim(vx)));
        const __m256d ny = _mm256_fmsub_pd(vc, vy, u);
        _mm256_storeu_pd(X + j, nx);
        _mm256_storeu_pd(Y + j, ny);
    }
    const double ar = alpha.real(), ai = alpha.imag();
    for (; j < nd; j += 2) {
        const double xr = X[j], xi = X[j + 1];
        const double yr = Y[j], yi = Y[j + 1];
        X[j] = c * xr + ar * yr - ai * yi;
        X[j + 1] = c * xi + ar * yi + ai * yr;
        Y[j] = c * yr - (ar * xr + ai * xi);
        Y[j + 1] = c * yi - (ar * xi - ai * xr);
    }
}

cplx cdotc_avx2(std::size_t n, const cplx* a, const cplx* b) {
    const double* A = reinterpret_cast<const double*>(a);
    const double* B = reinterpret_cast<const double*>(b);
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    const std::size_t nd = 2 * n;
    std::size_t j = 0;
    for (; j + 4 <= nd; j += 4) {
        const __m256d va = _mm256_loadu_pd(A + j);
        const __m256d vb = _mm256_loadu_pd(B + j);
        acc1 = _mm256_fmadd_pd(va, vb, acc1);
        acc2 = _mm256_fmadd_pd(va, swap_reim(vb), acc2);
    }
    // acc2 holds [ar*bi, ai*br, ...]; imag = sum(even) - sum(odd)
    const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
    double re = hsum(acc1);
    double im = hsum(_mm256_mul_pd(acc2, sign));
    for (; j < nd; j += 2) {
        const double ar = A[j], ai = A[j + 1];
        const double br = B[j], bi = B[j + 1];
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double weighted_abs2_sum_avx2(std::size_t mr, std::size_t nc,
                              const cplx* m, const double* wr,
                              const double* wc) {
    const double* M = reinterpret_cast<const double*>(m);
    double total = 0.0;
    for (std::size_t i = 0; i < mr; ++i) {
        const double* row = M + i * 2 * nc;
        __m256d acc = _mm256_setzero_pd();
        std::size_t j = 0;
        for (; j + 2 <= nc; j += 2) {
            const __m256d vm = _mm256_loadu_pd(row + 2 * j);
            const __m128d w2 = _mm_loadu_pd(wc + j);
            // [w0,w1,w0,w1] -> [w0,w0,w1,w1]
            const __m256d w4 =
                _mm256_permute4x64_pd(_mm256_set_m128d(w2, w2), 0x50);
            acc = _mm256_fmadd_pd(_mm256_mul_pd(vm, vm), w4, acc);
        }
        double racc = hsum(acc);
        for (; j < nc; ++j) {
            const double re = row[2 * j], im = row[2 * j + 1];
            racc += (re * re + im * im) * wc[j];
        }
        total += wr[i] * racc;
    }
    return total;
}

void axpy_real_avx2(std::size_t n, double a, const cplx* x, cplx* y) {
    const double* X = reinterpret_cast<const double*>(x);
    double* Y = reinterpret_cast<double*>(y);
    const __m256d va = _mm256_set1_pd(a);
    const std::size_t nd = 2 * n;
    std::size_t j = 0;
    for (; j + 4 <= nd; j += 4) {
        const __m256d vx = _mm256_loadu_pd(X + j);
        const __m256d vy = _mm256_loadu_pd(Y + j);
        _mm256_storeu_pd(Y + j, _mm256_fmadd_pd(va, vx, vy));
    }
    for (; j < nd; ++j) Y[j] += a * X[j];
}

} // namespace

namespace avx2_impl {
const KernelTable table = {
    cgemm_avx2,   scale_cols_avx2,        rot2_avx2,
    cdotc_avx2,   weighted_abs2_sum_avx2, axpy_real_avx2,
};
} // namespace avx2_impl

} // namespace dephase::kernels
