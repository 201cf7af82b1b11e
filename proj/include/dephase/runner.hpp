#pragma once

#include <set>
#include <string>
#include <vector>

#include "dephase/trajectory.hpp"

// Sweep execution and reporting. One trajectory per (N, g) pair, assertions
// evaluated over the collected results, outputs written as CSV tables and
// SVG figures.

namespace dephase {

struct RunConfig {
    model::ModelParams params;
    double t_max = 20.0;
    std::size_t n_samples = 2001;
    std::vector<std::size_t> sweep_n; // empty: just params.n_spins
    std::vector<double> sweep_g;      // empty: just params.g0 (=g1)
    OracleMode oracle = OracleMode::automatic;
    bool emit_csv = true;
    bool emit_svg = false;
    bool emit_identity_report = false;
    std::set<int> figs = {2, 3, 4, 5};
    bool figs_explicit = false; // user named figures: missing data is an error
    std::string out_dir = "results";

    void validate() const; // throws ConfigError with the offending field
};

/// Interior local extrema with at least the requested prominence.
std::vector<std::size_t> local_maxima(const std::vector<double>& y,
                                      double min_prominence);
std::vector<std::size_t> local_minima(const std::vector<double>& y,
                                      double min_prominence);

/// A mean-heat maximum paired with its nearest coherence minimum.
struct TradeoffPair {
    double t_q_max = 0.0;
    double t_gamma_min = 0.0;
    long gap_steps = 0;
};

struct AssertionResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct PairSummary {
    std::size_t n_spins = 0;
    double g = 0.0;
    double max_identity_residual = 0.0;
    double max_work_heat_gap = 0.0;
    double min_abs_gamma = 1.0;
    double max_abs_q = 0.0;
    double blp_value = 0.0;
    int backflow_intervals = 0;
    // Interaction energy at the protocol boundaries. The final value is what
    // the work bookkeeping pays for; it is reported, never assumed small.
    double interaction_energy_t0 = 0.0;
    double interaction_energy_tf = 0.0;
    std::vector<TradeoffPair> tradeoff_pairs;
};

struct RunResult {
    std::vector<Trajectory> trajectories;
    std::vector<PairSummary> pair_summaries;
    std::vector<AssertionResult> assertions;
    bool all_pass = true;
};

RunResult run(const RunConfig& config);

/// CSV/SVG/identity-report files per the config's emit flags.
/// Throws MissingSeriesError if an explicitly requested figure has no data.
void write_outputs(const RunConfig& config, const RunResult& result);

std::string format_summary(const RunResult& result);

/// Compact value formatting used in output file names ("0.5", "3").
std::string format_value(double v);

} // namespace dephase
