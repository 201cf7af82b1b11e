#pragma once

#include "dephase/kernels.hpp"

// Per-backend entry points. The public API in kernels.hpp dispatches to one
// of these tables; tests reach them through set_backend().

namespace dephase::kernels {

struct KernelTable {
    void (*cgemm)(std::size_t, std::size_t, std::size_t,
                  const cplx*, const cplx*, cplx*);
    void (*scale_cols)(std::size_t, std::size_t,
                       const cplx*, const cplx*, cplx*);
    void (*rot2)(std::size_t, double, cplx, cplx*, cplx*);
    cplx (*cdotc)(std::size_t, const cplx*, const cplx*);
    double (*weighted_abs2_sum)(std::size_t, std::size_t,
                                const cplx*, const double*, const double*);
    void (*axpy_real)(std::size_t, double, const cplx*, cplx*);
};

namespace scalar_impl {
extern const KernelTable table;
}

#if DEPHASE_HAVE_AVX2
namespace avx2_impl {
extern const KernelTable table;
}
#endif

} // namespace dephase::kernels
