#include "dephase/dynamics.hpp"

#include <cmath>

#include "dephase/errors.hpp"
#include "dephase/kernels.hpp"

namespace dephase::dynamics {
namespace {

CMatrix phased_exponential(const linalg::EigenDecomposition& ed,
                           const CMatrix& v_adj, double eps, double t) {
    const std::size_t n = v_adj.rows();
    std::vector<cplx> phases(n);
    for (std::size_t j = 0; j < n; ++j)
        phases[j] = std::polar(1.0, -(ed.eigenvalues[j] + eps) * t);
    CMatrix scaled(n, n);
    kernels::scale_cols(n, n, ed.eigenvectors.data(), phases.data(),
                        scaled.data());
    CMatrix out(n, n);
    kernels::cgemm(n, n, n, scaled.data(), v_adj.data(), out.data());
    return out;
}

} // namespace

PropagatorCache::PropagatorCache(const model::HamiltonianSet& hs)
    : ed0_(linalg::eigh(hs.h_k0)),
      ed1_(linalg::eigh(hs.h_k1)),
      eps0_(hs.params.eps0),
      eps1_(hs.params.eps1) {
    adjoint_into(ed0_.eigenvectors, v0_adj_);
    adjoint_into(ed1_.eigenvectors, v1_adj_);
}

CMatrix PropagatorCache::omega(int k, double t) const {
    return k == 0 ? phased_exponential(ed0_, v0_adj_, eps0_, t)
                  : phased_exponential(ed1_, v1_adj_, eps1_, t);
}

ConditionalPropagator PropagatorCache::at(double t) const {
    return {t, omega(0, t), omega(1, t)};
}

ConditionalPropagator propagators(const model::HamiltonianSet& hs, double t) {
    if (!std::isfinite(t))
        throw NumericError("propagators: non-finite time");
    return PropagatorCache(hs).at(t);
}

cplx gamma_kj(const ConditionalPropagator& cp, const CMatrix& rho_e0,
              int k, int j) {
    const CMatrix& wk = (k == 0) ? cp.omega0 : cp.omega1;
    const CMatrix& wj = (j == 0) ? cp.omega0 : cp.omega1;
    if (rho_e0.rows() != wk.rows() || !rho_e0.is_square())
        throw DimensionMismatchError("gamma_kj: state/propagator dimension mismatch");
    const CMatrix m = wk * rho_e0;
    // tr[m * wj^dagger] = sum conj(wj) .* m
    return kernels::cdotc(m.size(), wj.data(), m.data());
}

CoherenceSample coherence(const ConditionalPropagator& cp,
                          const model::DensityMatrix& rho_e0,
                          const model::DensityMatrix& rho_s0) {
    if (rho_s0.matrix.rows() != 2)
        throw DimensionMismatchError("coherence: system state must be 2x2");
    const cplx g = gamma_kj(cp, rho_e0.matrix, 0, 1);
    return {cp.t, g, std::abs(g)};
}

model::DensityMatrix reduced_system_state(const CoherenceSample& sample,
                                          const model::DensityMatrix& rho_s0) {
    CMatrix m(2, 2);
    m(0, 0) = rho_s0.matrix(0, 0);
    m(1, 1) = rho_s0.matrix(1, 1);
    m(0, 1) = rho_s0.matrix(0, 1) * sample.gamma;
    m(1, 0) = std::conj(m(0, 1));
    return {m, "qubit-evolved"};
}

model::DensityMatrix reduced_env_state(const ConditionalPropagator& cp,
                                       const model::DensityMatrix& rho_e0,
                                       const model::DensityMatrix& rho_s0) {
    const std::size_t n = cp.omega0.rows();
    if (rho_e0.matrix.rows() != n)
        throw DimensionMismatchError("reduced_env_state: dimension mismatch");
    const double p0 = rho_s0.matrix(0, 0).real();
    const double p1 = rho_s0.matrix(1, 1).real();

    CMatrix out(n, n);
    CMatrix adj(n, n);
    for (int k = 0; k < 2; ++k) {
        const CMatrix& w = (k == 0) ? cp.omega0 : cp.omega1;
        const CMatrix m = w * rho_e0.matrix;
        adjoint_into(w, adj);
        const CMatrix branch = m * adj;
        kernels::axpy_real(out.size(), k == 0 ? p0 : p1, branch.data(),
                           out.data());
    }
    return {out, "environment-evolved"};
}

model::DensityMatrix joint_oracle_state(const model::HamiltonianSet& hs,
                                        const model::DensityMatrix& rho_s0,
                                        const model::DensityMatrix& rho_e0,
                                        double t) {
    if (!std::isfinite(t))
        throw NumericError("joint_oracle_state: non-finite time");
    const CMatrix u = linalg::expm_unitary(hs.h_total, t);
    const CMatrix rho0 = linalg::kron(rho_s0.matrix, rho_e0.matrix);
    return {(u * rho0) * u.adjoint(), "joint-evolved"};
}

double block_equivalence(const model::HamiltonianSet& hs, double t) {
    const CMatrix u_full = linalg::expm_unitary(hs.h_total, t);
    const ConditionalPropagator cp = propagators(hs, t);
    const std::size_t n = cp.omega0.rows();
    CMatrix u_block(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            u_block(i, j) = cp.omega0(i, j);
            u_block(n + i, n + j) = cp.omega1(i, j);
        }
    return max_abs_diff(u_full, u_block);
}

JointOracle::JointOracle(const model::HamiltonianSet& hs,
                         const model::DensityMatrix& rho_s0,
                         const model::DensityMatrix& rho_e0)
    : ed_(linalg::eigh(hs.h_total)),
      rho0_(linalg::kron(rho_s0.matrix, rho_e0.matrix)) {
    adjoint_into(ed_.eigenvectors, v_adj_);
}

CMatrix JointOracle::unitary(double t) const {
    return phased_exponential(ed_, v_adj_, 0.0, t);
}

CMatrix JointOracle::state(double t) const {
    const CMatrix u = unitary(t);
    return (u * rho0_) * u.adjoint();
}

} // namespace dephase::dynamics
