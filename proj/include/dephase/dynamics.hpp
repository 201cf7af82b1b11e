#pragma once

#include "dephase/linalg.hpp"
#include "dephase/model.hpp"

// Exact time evolution. The joint unitary is block-diagonal in the qubit
// eigenbasis, so everything reduces to the two conditional environment
// propagators omega_k(t) = exp(-i*eps_k*t) * exp(-i*h_k*t); the full
// 2^{N+1}-dimensional exponential is kept alongside as an independent
// cross-check path.

namespace dephase::dynamics {

struct ConditionalPropagator {
    double t = 0.0;
    CMatrix omega0, omega1; // unitary, include the exp(-i*eps_k*t) phase
};

struct CoherenceSample {
    double t = 0.0;
    cplx gamma;   // tr_E[omega_0 rho_E(0) omega_1^dagger], phase included
    double c_l1 = 0.0; // |gamma|
};

/// Eigendecompositions of h_k0/h_k1 computed once; each propagator
/// evaluation is then a diagonal phase rescaling plus one matrix product.
class PropagatorCache {
public:
    explicit PropagatorCache(const model::HamiltonianSet& hs);

    ConditionalPropagator at(double t) const;
    CMatrix omega(int k, double t) const;

    const linalg::EigenDecomposition& decomposition(int k) const {
        return k == 0 ? ed0_ : ed1_;
    }

private:
    linalg::EigenDecomposition ed0_, ed1_;
    CMatrix v0_adj_, v1_adj_;
    double eps0_, eps1_;
};

ConditionalPropagator propagators(const model::HamiltonianSet& hs, double t);

CoherenceSample coherence(const ConditionalPropagator& cp,
                          const model::DensityMatrix& rho_e0,
                          const model::DensityMatrix& rho_s0);

/// tr_E[omega_k rho_E(0) omega_j^dagger] for any (k, j) pair.
cplx gamma_kj(const ConditionalPropagator& cp, const CMatrix& rho_e0,
              int k, int j);

/// Populations carried over unchanged, off-diagonals scaled by gamma.
model::DensityMatrix reduced_system_state(const CoherenceSample& sample,
                                          const model::DensityMatrix& rho_s0);

/// sum_k rhoS_kk(0) * omega_k rho_E(0) omega_k^dagger
model::DensityMatrix reduced_env_state(const ConditionalPropagator& cp,
                                       const model::DensityMatrix& rho_e0,
                                       const model::DensityMatrix& rho_s0);

/// Full-dimension evolution by exponentiating h_total directly.
model::DensityMatrix joint_oracle_state(const model::HamiltonianSet& hs,
                                        const model::DensityMatrix& rho_s0,
                                        const model::DensityMatrix& rho_e0,
                                        double t);

/// max_abs( exp(-i*h_total*t) - sum_k |k><k| (x) omega_k(t) ).
/// Pure roundoff; stays below 1e-8 for N <= 5.
double block_equivalence(const model::HamiltonianSet& hs, double t);

/// Cached-eigendecomposition variant of the joint path, for per-sample use.
class JointOracle {
public:
    JointOracle(const model::HamiltonianSet& hs,
                const model::DensityMatrix& rho_s0,
                const model::DensityMatrix& rho_e0);

    CMatrix unitary(double t) const;
    CMatrix state(double t) const;
    const CMatrix& initial_state() const { return rho0_; }

private:
    linalg::EigenDecomposition ed_;
    CMatrix v_adj_;
    CMatrix rho0_;
};

} // namespace dephase::dynamics
