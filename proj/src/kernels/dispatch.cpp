#include "kernels_impl.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace dephase::kernels {
namespace {

bool cpu_has_avx2() {
#if DEPHASE_HAVE_AVX2
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* table_for(Backend b) {
    switch (b) {
    case Backend::scalar:
        return &scalar_impl::table;
    case Backend::avx2:
#if DEPHASE_HAVE_AVX2
        return cpu_has_avx2() ? &avx2_impl::table : nullptr;
#else
        return nullptr;
#endif
    }
    return nullptr;
}

struct State {
    Backend backend;
    const KernelTable* table;
};

State& state() {
    static State s = [] {
        Backend b = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
        if (const char* env = std::getenv("DEPHASE_KERNELS")) {
            const std::string v = env;
            if (v == "scalar") b = Backend::scalar;
            else if (v == "avx2" && cpu_has_avx2()) b = Backend::avx2;
        }
        return State{b, table_for(b)};
    }();
    return s;
}

} // namespace

const char* backend_name(Backend b) {
    return b == Backend::scalar ? "scalar" : "avx2";
}

bool backend_available(Backend b) { return table_for(b) != nullptr; }

Backend active_backend() { return state().backend; }

void set_backend(Backend b) {
    const KernelTable* t = table_for(b);
    if (!t)
        throw std::invalid_argument(std::string("kernel backend unavailable: ") +
                                    backend_name(b));
    state() = {b, t};
}

void cgemm(std::size_t m, std::size_t k, std::size_t n,
           const cplx* a, const cplx* b, cplx* c) {
    state().table->cgemm(m, k, n, a, b, c);
}

void scale_cols(std::size_t m, std::size_t n,
                const cplx* in, const cplx* d, cplx* out) {
    state().table->scale_cols(m, n, in, d, out);
}

void rot2(std::size_t n, double c, cplx alpha, cplx* x, cplx* y) {
    state().table->rot2(n, c, alpha, x, y);
}

cplx cdotc(std::size_t n, const cplx* a, const cplx* b) {
    return state().table->cdotc(n, a, b);
}

double weighted_abs2_sum(std::size_t mr, std::size_t nc,
                         const cplx* m, const double* wr, const double* wc) {
    return state().table->weighted_abs2_sum(mr, nc, m, wr, wc);
}

void axpy_real(std::size_t n, double a, const cplx* x, cplx* y) {
    state().table->axpy_real(n, a, x, y);
}

} // namespace dephase::kernels
