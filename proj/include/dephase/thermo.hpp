#pragma once

#include <utility>
#include <vector>

#include "dephase/dynamics.hpp"
#include "dephase/model.hpp"

// Two-point-measurement energetics. The mean heat is the change of the
// environment's internal energy; the coherent energy is the same quantity
// rebuilt from transition probabilities between environment eigenstates.
// Keeping the two computation routes separate is the point: their agreement
// checks the whole derivation chain.

namespace dephase::thermo {

inline constexpr double kImagResidueTol = 1e-8;

struct ThermoRecord {
    double t = 0.0;
    double q_mean = 0.0;
    double w_mean = 0.0;
    double c_coherent = 0.0;
    double u_s_delta = 0.0;
    double u_total_delta = 0.0;
    double identity_residual = 0.0;
};

/// |c_{m,n}^k(t)|^2 for both k, stored row-major with m the row:
/// entry (m, n) at [m*dim + n]; each row sums to 1 (unitarity).
struct AmplitudeTable {
    double t = 0.0;
    std::size_t dim = 0;
    std::vector<double> prob0, prob1;

    double row_sum_defect() const;
};

/// tr[obs * state] with the imaginary residue checked against
/// kImagResidueTol; throws NonRealExpectationError beyond it.
double real_expectation(const CMatrix& obs, const CMatrix& state);

/// tr[h_e rho_E(t)] - tr[h_e rho_E(0)]
double mean_heat(const model::DensityMatrix& rho_e_t,
                 const model::DensityMatrix& rho_e_0, const CMatrix& h_e);

/// -( tr[h_i rho(t)] - tr[h_i rho(0)] ) on joint states.
double mean_work(const model::DensityMatrix& joint_t,
                 const model::DensityMatrix& joint_0, const CMatrix& h_i);

/// <H_I> at the propagator's time through the block structure (no joint
/// state formed).
double interaction_energy(const model::HamiltonianSet& hs,
                          const dynamics::ConditionalPropagator& cp,
                          const model::DensityMatrix& rho_s0,
                          const model::DensityMatrix& rho_e0);

/// Finite-time coherent energy, computed strictly through the amplitude
/// table (never through the trace form), plus the table itself.
std::pair<AmplitudeTable, double>
coherent_energy_amplitudes(const model::HamiltonianSet& hs,
                           const dynamics::ConditionalPropagator& cp,
                           const model::DensityMatrix& rho_s0,
                           const model::DensityMatrix& rho_e0);

/// Finite-time values of the classical-bookkeeping terms. The first two
/// vanish identically here (static environment spectrum, frozen
/// populations); the third equals the change of the environment's internal
/// energy.
struct ClassicalTerms {
    double level_shift_work = 0.0; // sum_n P_n * Delta(E_n)
    double population_heat = 0.0;  // sum_{k,m} Delta(rhoS_kk * rhoE_m) * eps_m^k
    double rotation_work = 0.0;    // sum_{k,m} rhoS_kk * rhoE_m * Delta(eps_m^k)
};

ClassicalTerms classical_decomposition_terms(const model::HamiltonianSet& hs,
                                       const dynamics::ConditionalPropagator& cp,
                                       const model::DensityMatrix& rho_s0,
                                       const model::DensityMatrix& rho_e0);

/// One full energetics record at the propagator's time, every quantity taken
/// through the generic route (reduced states, joint exponential, amplitude
/// table). Slow but independent of the trajectory engine's shortcuts.
ThermoRecord audit(const model::HamiltonianSet& hs,
                   const dynamics::ConditionalPropagator& cp,
                   const model::DensityMatrix& rho_s0,
                   const model::DensityMatrix& rho_e0);

} // namespace dephase::thermo
