#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dephase/errors.hpp"
#include "dephase/linalg.hpp"
#include "dephase/model.hpp"

using dephase::CMatrix;
using dephase::cplx;
namespace model = dephase::model;
namespace linalg = dephase::linalg;

namespace {

model::ModelParams params_n(std::size_t n, double g = 0.5) {
    model::ModelParams p;
    p.n_spins = n;
    p.g0 = p.g1 = g;
    return p;
}

// Diagonal entry of the ring Hamiltonian for basis index b, site 0 being the
// leftmost (most significant) factor.
double ring_energy(std::size_t b, std::size_t n, double j_z, double h_z) {
    auto spin = [&](std::size_t j) {
        return 1 - 2 * static_cast<int>((b >> (n - 1 - j)) & 1);
    };
    double e = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        e += -j_z * spin(j) * spin((j + 1) % n) - h_z * static_cast<double>(spin(j));
    return e;
}

// Cyclic shift of the ring sites: new site j carries the old site j+1.
CMatrix shift_permutation(std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    CMatrix p(dim, dim);
    for (std::size_t b = 0; b < dim; ++b) {
        std::size_t shifted = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t bit = (b >> (n - 1 - ((j + 1) % n))) & 1;
            shifted |= bit << (n - 1 - j);
        }
        p(shifted, b) = 1.0;
    }
    return p;
}

} // namespace

TEST_CASE("N=1 ring closes on itself") {
    const auto hs = model::build_hamiltonians(params_n(1));
    const CMatrix expected =
        CMatrix::identity(2) * cplx(-1.0) + model::pauli_z() * cplx(5.0);
    CHECK(dephase::max_abs_diff(hs.h_e, expected) == 0.0);
}

TEST_CASE("ring energies match the spin-configuration enumeration") {
    for (std::size_t n : {2u, 3u, 4u}) {
        auto p = params_n(n);
        p.j_z = 1.0;
        p.h_z = -5.0;
        const auto hs = model::build_hamiltonians(p);
        CHECK(hs.h_e.max_abs_offdiag() == 0.0);
        for (std::size_t b = 0; b < p.env_dim(); ++b)
            CHECK(hs.h_e(b, b).real() ==
                  doctest::Approx(ring_energy(b, n, p.j_z, p.h_z)).epsilon(1e-14));
    }
}

TEST_CASE("dephasing structure holds for random parameters") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        model::ModelParams p;
        p.n_spins = 3;
        p.j_z = dist(rng);
        p.h_z = dist(rng);
        p.g0 = dist(rng);
        p.g1 = dist(rng);
        p.eps0 = dist(rng);
        p.eps1 = dist(rng);
        const auto hs = model::build_hamiltonians(p);

        const CMatrix hs_embed =
            linalg::kron(hs.h_s, CMatrix::identity(p.env_dim()));
        CHECK(dephase::commutator(hs_embed, hs.h_i).max_abs() < 1e-12);

        const CMatrix sum = hs_embed +
                            linalg::kron(CMatrix::identity(2), hs.h_e) + hs.h_i;
        CHECK(dephase::max_abs_diff(hs.h_total, sum) == 0.0);

        for (const CMatrix* m :
             {&hs.h_s, &hs.h_e, &hs.v0, &hs.v1, &hs.h_i, &hs.h_total, &hs.h_k0,
              &hs.h_k1})
            CHECK(m->is_hermitian(1e-12));

        CHECK(dephase::max_abs_diff(hs.h_k0, hs.h_e + hs.v0 * cplx(p.g0)) == 0.0);
        CHECK(dephase::max_abs_diff(hs.h_k1, hs.h_e + hs.v1 * cplx(p.g1)) == 0.0);
    }
}

TEST_CASE("ring spectrum is invariant under the cyclic shift") {
    for (std::size_t n : {3u, 4u, 5u}) {
        const auto hs = model::build_hamiltonians(params_n(n));
        const CMatrix p = shift_permutation(n);
        CHECK(dephase::max_abs_diff(p * hs.h_e * p.adjoint(), hs.h_e) < 1e-12);
        CHECK(dephase::max_abs_diff(p * hs.h_k0 * p.adjoint(), hs.h_k0) < 1e-12);
        CHECK(dephase::max_abs_diff(p * hs.h_k1 * p.adjoint(), hs.h_k1) < 1e-12);
    }
}

TEST_CASE("infinite-temperature limit of the Gibbs state is maximally mixed") {
    const auto hs = model::build_hamiltonians(params_n(3));
    const auto rho = model::gibbs_state(hs.h_e, 1e-9);
    CHECK(dephase::max_abs_diff(rho.matrix, CMatrix::identity(8) * cplx(1.0 / 8.0)) <
          1e-6);
}

TEST_CASE("two-level Gibbs state matches the closed form") {
    // h_z = -5 favours spin-down: populations (e^-5, e^5)/(e^-5 + e^5).
    const auto hs = model::build_hamiltonians(params_n(1));
    const auto rho = model::gibbs_state(hs.h_e, 1.0);
    const double z = std::exp(-5.0) + std::exp(5.0);
    CHECK(rho.matrix(0, 0).real() ==
          doctest::Approx(std::exp(-5.0) / z).epsilon(1e-12));
    CHECK(rho.matrix(1, 1).real() ==
          doctest::Approx(std::exp(5.0) / z).epsilon(1e-12));
}

TEST_CASE("Gibbs state of the diagonal ring Hamiltonian is diagonal") {
    const auto hs = model::build_hamiltonians(params_n(4));
    const auto rho = model::gibbs_state(hs.h_e, 1.0);
    CHECK(rho.matrix.max_abs_offdiag() < 1e-12);
    rho.validate();
}

TEST_CASE("gibbs_state rejects non-positive beta") {
    const auto hs = model::build_hamiltonians(params_n(2));
    CHECK_THROWS_AS(model::gibbs_state(hs.h_e, 0.0), dephase::ConfigError);
}

TEST_CASE("initial qubit preparations") {
    model::ModelParams p;

    p.initial_qubit = model::InitialQubit::plus;
    auto plus = model::initial_qubit_state(p);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(plus.matrix(i, j) == cplx(0.5));

    p.initial_qubit = model::InitialQubit::minus;
    auto minus = model::initial_qubit_state(p);
    CHECK(minus.matrix(0, 1) == cplx(-0.5));
    CHECK(minus.matrix(1, 0) == cplx(-0.5));
    CHECK(minus.matrix(0, 0) == cplx(0.5));

    p.initial_qubit = model::InitialQubit::custom;
    p.theta = 0.0;
    p.phi = 0.0;
    auto pole = model::initial_qubit_state(p);
    CHECK(pole.matrix(0, 0) == cplx(1.0));
    CHECK(std::abs(pole.matrix(1, 1)) == 0.0);

    // General Bloch vector (theta, phi).
    p.theta = 1.1;
    p.phi = -0.7;
    auto bloch = model::initial_qubit_state(p);
    bloch.validate();
    CHECK(bloch.matrix(0, 0).real() ==
          doctest::Approx(std::cos(p.theta / 2) * std::cos(p.theta / 2)));
    const cplx offdiag = 0.5 * std::sin(p.theta) * std::polar(1.0, -p.phi);
    CHECK(std::abs(bloch.matrix(0, 1) - offdiag) < 1e-14);
}

TEST_CASE("dissipation condition per qubit level") {
    const auto hs = model::build_hamiltonians(params_n(3));
    const auto flags = model::check_dissipation_condition(hs);
    CHECK(flags[0]);
    CHECK(flags[1]);

    const auto hs_free = model::build_hamiltonians(params_n(3, 0.0));
    const auto free_flags = model::check_dissipation_condition(hs_free);
    CHECK_FALSE(free_flags[0]);
    CHECK_FALSE(free_flags[1]);

    // Diagonal coupling operators commute with the diagonal ring Hamiltonian.
    auto hs_diag = hs;
    CMatrix vz(hs.h_e.rows(), hs.h_e.cols());
    for (std::size_t j = 0; j < 3; ++j)
        vz += model::site_operator(model::pauli_z(), j, 3);
    hs_diag.h_k0 = hs.h_e + vz * cplx(0.5);
    hs_diag.h_k1 = hs.h_e + vz * cplx(0.5);
    const auto diag_flags = model::check_dissipation_condition(hs_diag);
    CHECK_FALSE(diag_flags[0]);
    CHECK_FALSE(diag_flags[1]);
}

TEST_CASE("parameter validation") {
    model::ModelParams p;
    p.beta = -1.0;
    CHECK_THROWS_AS(p.validate(), dephase::ConfigError);
    p = {};
    p.n_spins = 0;
    CHECK_THROWS_AS(p.validate(), dephase::ConfigError);
    p = {};
    p.h_z = std::nan("");
    CHECK_THROWS_AS(p.validate(), dephase::ConfigError);
}

TEST_CASE("density matrix validation rejects negative spectrum") {
    CMatrix m(2, 2);
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    model::DensityMatrix rho{m, "test"};
    CHECK_THROWS_AS(rho.validate(), dephase::NumericError);
}
