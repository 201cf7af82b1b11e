#pragma once

#include <complex>
#include <cstddef>

// Data-parallel inner loops behind the dense algebra. Every operation has a
// scalar reference implementation and an AVX2 variant; the backend is picked
// once at startup (AVX2+FMA when the CPU has it, overridable with
// DEPHASE_KERNELS=scalar|avx2) and can be switched explicitly for
// equivalence tests.

namespace dephase::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);
bool backend_available(Backend b);
Backend active_backend();

/// Switch the dispatched backend. Throws std::invalid_argument if the
/// requested backend is not available on this machine. Not thread-safe
/// against concurrent kernel calls; switch before launching work.
void set_backend(Backend b);

/// c (m x n) = a (m x k) * b (k x n), row-major. c must not alias a or b.
void cgemm(std::size_t m, std::size_t k, std::size_t n,
           const cplx* a, const cplx* b, cplx* c);

/// out[i,j] = in[i,j] * d[j]  (right-multiply by a diagonal).
void scale_cols(std::size_t m, std::size_t n,
                const cplx* in, const cplx* d, cplx* out);

/// Unitary plane rotation of two length-n vectors, c real, c^2+|alpha|^2=1:
///   x <- c*x + alpha*y
///   y <- c*y - conj(alpha)*x
void rot2(std::size_t n, double c, cplx alpha, cplx* x, cplx* y);

/// sum_i conj(a[i]) * b[i]
cplx cdotc(std::size_t n, const cplx* a, const cplx* b);

/// sum_{i,j} wr[i] * |m[i,j]|^2 * wc[j]  for an mr x nc row-major m.
double weighted_abs2_sum(std::size_t mr, std::size_t nc,
                         const cplx* m, const double* wr, const double* wc);

/// y += a * x (a real), over n complex elements.
void axpy_real(std::size_t n, double a, const cplx* x, cplx* y);

} // namespace dephase::kernels
