#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "dephase/cmatrix.hpp"

// The concrete physical model: a qubit with fixed level splitting coupled to
// a ring of N spin-1/2 sites through separate environment operators per qubit
// level, the ring carrying nearest-neighbour z-z coupling in a longitudinal
// field, thermalised at inverse temperature beta.

namespace dephase::model {

enum class InitialQubit { plus, minus, custom };

struct ModelParams {
    std::size_t n_spins = 7;
    double j_z = 1.0;  // ring coupling; the unit of energy
    double h_z = -5.0; // longitudinal field
    double g0 = 0.5;   // qubit-level-0 coupling
    double g1 = 0.5;   // qubit-level-1 coupling
    double beta = 1.0; // inverse temperature
    double eps0 = -0.5;
    double eps1 = 0.5;
    InitialQubit initial_qubit = InitialQubit::plus;
    double theta = 0.0; // custom Bloch angles
    double phi = 0.0;

    std::size_t env_dim() const { return std::size_t{1} << n_spins; }
    std::size_t joint_dim() const { return env_dim() * 2; }

    /// Throws ConfigError on out-of-range or non-finite parameters.
    void validate() const;
};

struct HamiltonianSet {
    CMatrix h_s;     // 2x2 diagonal
    CMatrix h_e;     // 2^N x 2^N, diagonal in the computational basis
    CMatrix v0, v1;  // environment interaction operators
    CMatrix h_i;     // 2^{N+1}
    CMatrix h_total; // h_s (x) I + I (x) h_e + h_i
    CMatrix h_k0, h_k1; // conditional environment Hamiltonians h_e + g_k v_k
    ModelParams params;
};

struct DensityMatrix {
    CMatrix matrix;
    std::string basis_label;

    /// Hermitian within 1e-12, unit trace within 1e-12, spectrum >= -1e-10.
    /// Throws NumericError when violated.
    void validate() const;
};

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

/// I (x) ... (x) op (x) ... (x) I with op at `site` (site 0 = leftmost factor).
CMatrix site_operator(const CMatrix& op, std::size_t site, std::size_t n_sites);

HamiltonianSet build_hamiltonians(const ModelParams& p);

/// exp(-beta*h_e)/Z via the eigendecomposition, largest Boltzmann weight
/// scaled out before exponentiation.
DensityMatrix gibbs_state(const CMatrix& h_e, double beta);

DensityMatrix initial_qubit_state(const ModelParams& p);

/// Per-level test of the nonzero-dissipation condition: true when h_e fails
/// to commute with h_k (threshold 1e-10 * max_abs(h_e) * max_abs(h_k)).
std::array<bool, 2> check_dissipation_condition(const HamiltonianSet& hs);

} // namespace dephase::model
