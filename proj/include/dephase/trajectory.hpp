#pragma once

#include <vector>

#include "dephase/model.hpp"

// Full time-grid evaluation for one parameter set. Eigendecompositions are
// done once; every grid sample is then a handful of dense products, so the
// sample loop is parallelised across threads. The heat is accumulated from
// the evolved branch states while the coherent energy goes through the
// squared transition amplitudes; their per-sample difference is the identity
// residual carried in each row.

namespace dephase {

struct TrajectoryRow {
    double t = 0.0;
    cplx gamma;
    double abs_gamma = 0.0;
    double q_mean = 0.0;
    double c_coherent = 0.0;
    double w_mean = 0.0;
    double trace_distance = 0.0;
    double sigma = 0.0;
    double identity_residual = 0.0;
};

enum class OracleMode { off, on, automatic };

/// Cross-checks against the joint 2^{N+1}-dimensional evolution path.
struct OracleDiagnostics {
    bool ran = false;
    double max_reduced_sys_dev = 0.0;  // vs partial trace of the joint state
    double max_reduced_env_dev = 0.0;
    double max_u_s_delta = 0.0;        // |Delta <H_S>| from the joint path
    double max_u_total_delta = 0.0;    // |Delta <H_total>|
    double max_heat_dev = 0.0;         // joint-path vs block-path <Q>
    double max_work_heat_gap = 0.0;    // |<W> - <Q>| with <W> from the joint path
    double max_block_equivalence = 0.0; // over sampled times
};

struct Trajectory {
    model::ModelParams params;
    double dt = 0.0;
    std::vector<TrajectoryRow> rows;

    double interaction_energy_t0 = 0.0;
    double h_total_max_abs = 0.0;

    double max_identity_residual = 0.0;
    double max_work_heat_gap = 0.0;
    double max_gamma_excess = 0.0;        // max(|gamma| - 1, 0)
    double max_trace_distance_dev = 0.0;  // max |D - |gamma||
    double min_abs_gamma = 1.0;
    double max_abs_q = 0.0;

    double blp_value = 0.0;
    int backflow_intervals = 0;

    OracleDiagnostics oracle;
};

struct TrajectoryRequest {
    model::ModelParams params;
    double t_max = 20.0;
    std::size_t n_samples = 2001;
    OracleMode oracle = OracleMode::automatic;
};

/// Number of worker threads the sample loop will use (DEPHASE_THREADS
/// overrides hardware_concurrency).
unsigned trajectory_threads();

Trajectory run_trajectory(const TrajectoryRequest& req);

} // namespace dephase
