#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "dephase/kernels.hpp"

namespace kernels = dephase::kernels;
using kernels::cplx;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& z : v) z = {dist(rng), dist(rng)};
    return v;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Plain triple-loop oracle, std::complex arithmetic.
std::vector<cplx> gemm_oracle(std::size_t m, std::size_t k, std::size_t n,
                              const std::vector<cplx>& a,
                              const std::vector<cplx>& b) {
    std::vector<cplx> c(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (std::size_t l = 0; l < k; ++l) acc += a[i * k + l] * b[l * n + j];
            c[i * n + j] = acc;
        }
    return c;
}

struct BackendGuard {
    kernels::Backend saved = kernels::active_backend();
    ~BackendGuard() { kernels::set_backend(saved); }
};

const std::vector<std::size_t> kSizes = {1, 2, 3, 4, 7, 8, 16, 17, 33, 64};

} // namespace

TEST_CASE("cgemm matches the triple-loop oracle") {
    for (std::size_t n : kSizes) {
        const auto a = random_vector(n * n, 11 * n + 1);
        const auto b = random_vector(n * n, 13 * n + 2);
        std::vector<cplx> c(n * n);
        kernels::cgemm(n, n, n, a.data(), b.data(), c.data());
        const auto expected = gemm_oracle(n, n, n, a, b);
        CHECK(max_abs_diff(c, expected) < 1e-12 * static_cast<double>(n));
    }
}

TEST_CASE("cgemm handles rectangular shapes") {
    const std::size_t m = 3, k = 5, n = 7;
    const auto a = random_vector(m * k, 21);
    const auto b = random_vector(k * n, 22);
    std::vector<cplx> c(m * n);
    kernels::cgemm(m, k, n, a.data(), b.data(), c.data());
    CHECK(max_abs_diff(c, gemm_oracle(m, k, n, a, b)) < 1e-13);
}

TEST_CASE("scalar and avx2 backends agree") {
    if (!kernels::backend_available(kernels::Backend::avx2)) {
        MESSAGE("avx2 backend unavailable; skipping");
        return;
    }
    BackendGuard guard;
    for (std::size_t n : kSizes) {
        const auto a = random_vector(n * n, 31 * n + 3);
        const auto b = random_vector(n * n, 37 * n + 4);
        const auto d = random_vector(n, 41 * n + 5);
        std::vector<double> wr(n), wc(n);
        for (std::size_t i = 0; i < n; ++i) {
            wr[i] = 0.1 + static_cast<double>(i % 5);
            wc[i] = 1.0 / (1.0 + static_cast<double>(i));
        }

        kernels::set_backend(kernels::Backend::scalar);
        std::vector<cplx> c_s(n * n), sc_s(n * n);
        kernels::cgemm(n, n, n, a.data(), b.data(), c_s.data());
        kernels::scale_cols(n, n, a.data(), d.data(), sc_s.data());
        auto x_s = a, y_s = b;
        kernels::rot2(n * n, 0.8, {0.36, 0.48}, x_s.data(), y_s.data());
        const cplx dot_s = kernels::cdotc(n * n, a.data(), b.data());
        const double w_s =
            kernels::weighted_abs2_sum(n, n, a.data(), wr.data(), wc.data());
        auto axpy_s = b;
        kernels::axpy_real(n * n, 0.77, a.data(), axpy_s.data());

        kernels::set_backend(kernels::Backend::avx2);
        std::vector<cplx> c_v(n * n), sc_v(n * n);
        kernels::cgemm(n, n, n, a.data(), b.data(), c_v.data());
        kernels::scale_cols(n, n, a.data(), d.data(), sc_v.data());
        auto x_v = a, y_v = b;
        kernels::rot2(n * n, 0.8, {0.36, 0.48}, x_v.data(), y_v.data());
        const cplx dot_v = kernels::cdotc(n * n, a.data(), b.data());
        const double w_v =
            kernels::weighted_abs2_sum(n, n, a.data(), wr.data(), wc.data());
        auto axpy_v = b;
        kernels::axpy_real(n * n, 0.77, a.data(), axpy_v.data());

        const double tol = 1e-12 * static_cast<double>(n);
        CHECK(max_abs_diff(c_s, c_v) < tol);
        CHECK(max_abs_diff(sc_s, sc_v) < tol);
        CHECK(max_abs_diff(x_s, x_v) < tol);
        CHECK(max_abs_diff(y_s, y_v) < tol);
        CHECK(std::abs(dot_s - dot_v) < tol);
        CHECK(w_s == doctest::Approx(w_v).epsilon(1e-12));
        CHECK(max_abs_diff(axpy_s, axpy_v) < tol);
    }
}

TEST_CASE("rot2 with unit coefficients is norm preserving") {
    const std::size_t n = 129;
    auto x = random_vector(n, 51);
    auto y = random_vector(n, 52);
    double norm0 = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm0 += std::norm(x[i]) + std::norm(y[i]);

    const double c = 0.6;
    const cplx alpha{0.64, 0.48}; // c^2 + |alpha|^2 = 1
    kernels::rot2(n, c, alpha, x.data(), y.data());

    double norm1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm1 += std::norm(x[i]) + std::norm(y[i]);
    CHECK(norm1 == doctest::Approx(norm0).epsilon(1e-13));
}

TEST_CASE("weighted_abs2_sum matches direct accumulation") {
    const std::size_t m = 9, n = 11;
    const auto a = random_vector(m * n, 61);
    std::vector<double> wr(m), wc(n);
    for (std::size_t i = 0; i < m; ++i) wr[i] = 1.0 + 0.25 * static_cast<double>(i);
    for (std::size_t j = 0; j < n; ++j) wc[j] = 2.0 - 0.1 * static_cast<double>(j);
    double direct = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            direct += wr[i] * std::norm(a[i * n + j]) * wc[j];
    const double got =
        kernels::weighted_abs2_sum(m, n, a.data(), wr.data(), wc.data());
    CHECK(got == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("cdotc conjugates its first argument") {
    const std::vector<cplx> a = {{1.0, 2.0}, {0.0, -1.0}};
    const std::vector<cplx> b = {{3.0, -1.0}, {2.0, 2.0}};
    const cplx expected = std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
    CHECK(std::abs(kernels::cdotc(2, a.data(), b.data()) - expected) < 1e-15);
}
