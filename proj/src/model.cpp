#include "dephase/model.hpp"

#include <cmath>

#include "dephase/errors.hpp"
#include "dephase/kernels.hpp"
#include "dephase/linalg.hpp"

namespace dephase::model {
namespace {

bool finite(double x) { return std::isfinite(x); }

} // namespace

void ModelParams::validate() const {
    if (n_spins < 1 || n_spins > 8)
        throw ConfigError("n_spins must be in [1, 8] (dense representation)");
    if (!(beta > 0.0) || !finite(beta))
        throw ConfigError("beta must be positive and finite");
    for (double v : {j_z, h_z, g0, g1, eps0, eps1, theta, phi})
        if (!finite(v)) throw ConfigError("model parameter not finite");
}

void DensityMatrix::validate() const {
    if (!matrix.all_finite())
        throw NumericError("density matrix (" + basis_label + ") has non-finite entries");
    if (!matrix.is_hermitian(1e-12))
        throw NumericError("density matrix (" + basis_label + ") not Hermitian");
    if (std::abs(matrix.trace() - cplx(1.0)) > 1e-12)
        throw NumericError("density matrix (" + basis_label + ") trace != 1");
    const auto ed = linalg::eigh(matrix);
    if (ed.eigenvalues.front() < -1e-10)
        throw NumericError("density matrix (" + basis_label + ") has negative eigenvalue");
}

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

CMatrix pauli_y() {
    CMatrix m(2, 2);
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}

CMatrix pauli_z() {
    CMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

CMatrix site_operator(const CMatrix& op, std::size_t site, std::size_t n_sites) {
    if (site >= n_sites)
        throw DimensionMismatchError("site_operator: site index out of range");
    const CMatrix eye = CMatrix::identity(2);
    CMatrix out = (site == 0) ? op : eye;
    for (std::size_t j = 1; j < n_sites; ++j)
        out = linalg::kron(out, (j == site) ? op : eye);
    return out;
}

HamiltonianSet build_hamiltonians(const ModelParams& p) {
    p.validate();
    const std::size_t n = p.n_spins;
    const std::size_t dim_e = p.env_dim();

    HamiltonianSet hs;
    hs.params = p;

    hs.h_s = CMatrix(2, 2);
    hs.h_s(0, 0) = p.eps0;
    hs.h_s(1, 1) = p.eps1;

    // Ring bonds j=0..N-1 with periodic closure; N=1 and N=2 keep the
    // literal sum (N=1 closes on itself, N=2 counts its one bond twice).
    hs.h_e = CMatrix(dim_e, dim_e);
    hs.v0 = CMatrix(dim_e, dim_e);
    hs.v1 = CMatrix(dim_e, dim_e);
    const CMatrix sz = pauli_z();
    for (std::size_t j = 0; j < n; ++j) {
        const CMatrix szj = site_operator(sz, j, n);
        const CMatrix szj1 = site_operator(sz, (j + 1) % n, n);
        hs.h_e += (szj * szj1) * cplx(-p.j_z);
        hs.h_e += szj * cplx(-p.h_z);
        hs.v0 += site_operator(pauli_x(), j, n);
        hs.v1 += site_operator(pauli_y(), j, n);
    }

    hs.h_k0 = hs.h_e + hs.v0 * cplx(p.g0);
    hs.h_k1 = hs.h_e + hs.v1 * cplx(p.g1);

    CMatrix p0(2, 2), p1(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    hs.h_i = linalg::kron(p0, hs.v0 * cplx(p.g0)) +
             linalg::kron(p1, hs.v1 * cplx(p.g1));

    hs.h_total = linalg::kron(hs.h_s, CMatrix::identity(dim_e)) +
                 linalg::kron(CMatrix::identity(2), hs.h_e) + hs.h_i;
    return hs;
}

DensityMatrix gibbs_state(const CMatrix& h_e, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw ConfigError("gibbs_state: beta must be positive and finite");
    const auto ed = linalg::eigh(h_e);
    const std::size_t n = h_e.rows();
    const double lam_min = ed.eigenvalues.front();

    std::vector<cplx> w(n);
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = std::exp(-beta * (ed.eigenvalues[i] - lam_min));
        w[i] = wi;
        z += wi;
    }
    for (auto& wi : w) wi /= z;

    const CMatrix& v = ed.eigenvectors;
    CMatrix scaled(n, n);
    kernels::scale_cols(n, n, v.data(), w.data(), scaled.data());
    return DensityMatrix{scaled * v.adjoint(), "environment-thermal"};
}

DensityMatrix initial_qubit_state(const ModelParams& p) {
    CMatrix m(2, 2);
    switch (p.initial_qubit) {
    case InitialQubit::plus:
        m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 0.5;
        return {m, "qubit-plus"};
    case InitialQubit::minus:
        m(0, 0) = m(1, 1) = 0.5;
        m(0, 1) = m(1, 0) = -0.5;
        return {m, "qubit-minus"};
    case InitialQubit::custom: {
        const cplx a = std::cos(p.theta / 2.0);
        const cplx b = std::polar(std::sin(p.theta / 2.0), p.phi);
        m(0, 0) = std::norm(a);
        m(0, 1) = a * std::conj(b);
        m(1, 0) = std::conj(m(0, 1));
        m(1, 1) = std::norm(b);
        return {m, "qubit-custom"};
    }
    }
    throw ConfigError("initial_qubit_state: unknown preparation");
}

std::array<bool, 2> check_dissipation_condition(const HamiltonianSet& hs) {
    const double he_norm = hs.h_e.max_abs();
    auto noncommuting = [&](const CMatrix& hk) {
        return commutator(hs.h_e, hk).max_abs() > 1e-10 * he_norm * hk.max_abs();
    };
    return {noncommuting(hs.h_k0), noncommuting(hs.h_k1)};
}

} // namespace dephase::model
