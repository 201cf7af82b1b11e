#include "dephase/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "dephase/dynamics.hpp"
#include "dephase/errors.hpp"
#include "dephase/kernels.hpp"
#include "dephase/linalg.hpp"
#include "dephase/thermo.hpp"
#include "dephase/witness.hpp"

namespace dephase {
namespace {

struct Workspace {
    explicit Workspace(std::size_t n)
        : scaled(n, n), omega0(n, n), omega1(n, n), m0(n, n), mk(n, n),
          adj(n, n), b0(n, n), b1(n, n), phases(n) {}
    CMatrix scaled, omega0, omega1, m0, mk, adj, b0, b1;
    std::vector<cplx> phases;
};

struct EngineContext {
    model::HamiltonianSet hs;
    model::DensityMatrix rho_s0;
    std::size_t dim = 0;
    double p0 = 0.0, p1 = 0.0;
    cplx rho01;
    std::vector<double> energies;  // diagonal of h_e
    std::vector<double> weights;   // Gibbs populations
    std::vector<cplx> weights_c;
    linalg::EigenDecomposition ed0, ed1;
    CMatrix v_adj0, v_adj1;
    double e_env0 = 0.0; // tr[h_e rho_E(0)]
    double hi0 = 0.0;    // <H_I> at t=0
};

EngineContext make_context(const model::ModelParams& params) {
    EngineContext cx;
    cx.hs = model::build_hamiltonians(params);
    if (cx.hs.h_e.max_abs_offdiag() > 1e-12)
        throw NumericError("trajectory: environment Hamiltonian is not diagonal");

    cx.dim = params.env_dim();
    cx.rho_s0 = model::initial_qubit_state(params);
    cx.p0 = cx.rho_s0.matrix(0, 0).real();
    cx.p1 = cx.rho_s0.matrix(1, 1).real();
    cx.rho01 = cx.rho_s0.matrix(0, 1);

    cx.energies.resize(cx.dim);
    for (std::size_t m = 0; m < cx.dim; ++m)
        cx.energies[m] = cx.hs.h_e(m, m).real();

    const double e_min = *std::min_element(cx.energies.begin(), cx.energies.end());
    cx.weights.resize(cx.dim);
    double z = 0.0;
    for (std::size_t m = 0; m < cx.dim; ++m) {
        cx.weights[m] = std::exp(-params.beta * (cx.energies[m] - e_min));
        z += cx.weights[m];
    }
    for (double& w : cx.weights) w /= z;
    cx.weights_c.assign(cx.weights.begin(), cx.weights.end());

    cx.ed0 = linalg::eigh(cx.hs.h_k0);
    cx.ed1 = linalg::eigh(cx.hs.h_k1);
    adjoint_into(cx.ed0.eigenvectors, cx.v_adj0);
    adjoint_into(cx.ed1.eigenvectors, cx.v_adj1);

    for (std::size_t m = 0; m < cx.dim; ++m)
        cx.e_env0 += cx.energies[m] * cx.weights[m];
    for (int k = 0; k < 2; ++k) {
        const CMatrix& vk = (k == 0) ? cx.hs.v0 : cx.hs.v1;
        const double gk = (k == 0) ? params.g0 : params.g1;
        const double pk = (k == 0) ? cx.p0 : cx.p1;
        double diag = 0.0;
        for (std::size_t m = 0; m < cx.dim; ++m)
            diag += vk(m, m).real() * cx.weights[m];
        cx.hi0 += gk * pk * diag;
    }
    return cx;
}

void build_omega(const EngineContext& cx, int k, double t, Workspace& ws,
                 CMatrix& out) {
    const auto& ed = (k == 0) ? cx.ed0 : cx.ed1;
    const auto& v_adj = (k == 0) ? cx.v_adj0 : cx.v_adj1;
    const double eps = (k == 0) ? cx.hs.params.eps0 : cx.hs.params.eps1;
    const std::size_t n = cx.dim;
    for (std::size_t j = 0; j < n; ++j)
        ws.phases[j] = std::polar(1.0, -(ed.eigenvalues[j] + eps) * t);
    kernels::scale_cols(n, n, ed.eigenvectors.data(), ws.phases.data(),
                        ws.scaled.data());
    kernels::cgemm(n, n, n, ws.scaled.data(), v_adj.data(), out.data());
}

double env_energy_of_branch(const EngineContext& cx, const CMatrix& b,
                            double t) {
    double re = 0.0, im = 0.0;
    for (std::size_t m = 0; m < cx.dim; ++m) {
        re += cx.energies[m] * b(m, m).real();
        im += cx.energies[m] * b(m, m).imag();
    }
    if (std::abs(im) > thermo::kImagResidueTol)
        throw NonRealExpectationError(
            "branch environment energy imaginary residue at t=" +
            std::to_string(t));
    return re;
}

TrajectoryRow compute_sample(const EngineContext& cx, double t, Workspace& ws) {
    const std::size_t n = cx.dim;
    build_omega(cx, 0, t, ws, ws.omega0);
    build_omega(cx, 1, t, ws, ws.omega1);

    // Branch states b_k = omega_k diag(w) omega_k^dagger.
    kernels::scale_cols(n, n, ws.omega0.data(), cx.weights_c.data(), ws.m0.data());
    adjoint_into(ws.omega0, ws.adj);
    kernels::cgemm(n, n, n, ws.m0.data(), ws.adj.data(), ws.b0.data());
    kernels::scale_cols(n, n, ws.omega1.data(), cx.weights_c.data(), ws.mk.data());
    adjoint_into(ws.omega1, ws.adj);
    kernels::cgemm(n, n, n, ws.mk.data(), ws.adj.data(), ws.b1.data());

    TrajectoryRow row;
    row.t = t;
    // gamma = tr[omega_0 diag(w) omega_1^dagger]
    row.gamma = kernels::cdotc(n * n, ws.omega1.data(), ws.m0.data());
    row.abs_gamma = std::abs(row.gamma);

    const double q0 = env_energy_of_branch(cx, ws.b0, t);
    const double q1 = env_energy_of_branch(cx, ws.b1, t);
    row.q_mean = cx.p0 * (q0 - cx.e_env0) + cx.p1 * (q1 - cx.e_env0);

    // Coherent energy from the squared transition amplitudes |omega[n,m]|^2.
    const double amp0 = kernels::weighted_abs2_sum(
        n, n, ws.omega0.data(), cx.energies.data(), cx.weights.data());
    const double amp1 = kernels::weighted_abs2_sum(
        n, n, ws.omega1.data(), cx.energies.data(), cx.weights.data());
    row.c_coherent =
        cx.p0 * (amp0 - cx.e_env0) + cx.p1 * (amp1 - cx.e_env0);
    row.identity_residual = std::abs(row.q_mean - row.c_coherent);

    double hi_t = 0.0;
    for (int k = 0; k < 2; ++k) {
        const CMatrix& bk = (k == 0) ? ws.b0 : ws.b1;
        const CMatrix& vk = (k == 0) ? cx.hs.v0 : cx.hs.v1;
        const double gk = (k == 0) ? cx.hs.params.g0 : cx.hs.params.g1;
        const double pk = (k == 0) ? cx.p0 : cx.p1;
        // tr[b_k^dagger v_k]; b_k is Hermitian
        const cplx e = kernels::cdotc(n * n, bk.data(), vk.data());
        if (std::abs(e.imag()) > thermo::kImagResidueTol)
            throw NonRealExpectationError(
                "interaction energy imaginary residue at t=" + std::to_string(t));
        hi_t += gk * pk * e.real();
    }
    row.w_mean = -(hi_t - cx.hi0);

    // Trace-norm route for the distinguishability of the plus/minus pair.
    CMatrix diff(2, 2);
    diff(0, 1) = row.gamma;
    diff(1, 0) = std::conj(row.gamma);
    row.trace_distance = 0.5 * linalg::trace_norm(diff);
    return row;
}

unsigned clamp_threads(unsigned n) { return std::clamp(n, 1u, 64u); }

template <typename Fn>
void parallel_chunks(std::size_t count, Fn&& fn) {
    const unsigned threads =
        std::min<std::size_t>(trajectory_threads(), std::max<std::size_t>(count, 1));
    if (threads <= 1) {
        fn(std::size_t{0}, count);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::size_t begin = std::min(count, w * chunk);
        const std::size_t end = std::min(count, begin + chunk);
        if (begin == end) break;
        pool.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

CMatrix engine_reduced_system(const EngineContext& cx, const TrajectoryRow& row) {
    CMatrix m(2, 2);
    m(0, 0) = cx.p0;
    m(1, 1) = cx.p1;
    m(0, 1) = cx.rho01 * row.gamma;
    m(1, 0) = std::conj(m(0, 1));
    return m;
}

void oracle_pass(const EngineContext& cx, Trajectory& traj) {
    const std::size_t n = cx.dim;
    const std::size_t samples = traj.rows.size();

    CMatrix rho_e0(n, n);
    for (std::size_t m = 0; m < n; ++m) rho_e0(m, m) = cx.weights[m];
    const model::DensityMatrix rho_e0_dm{rho_e0, "environment-thermal"};

    const dynamics::JointOracle oracle(cx.hs, cx.rho_s0, rho_e0_dm);
    const CMatrix hs_embed =
        linalg::kron(cx.hs.h_s, CMatrix::identity(n));
    const CMatrix he_embed =
        linalg::kron(CMatrix::identity(2), cx.hs.h_e);

    const CMatrix& rho0 = oracle.initial_state();
    const double u_s0 = thermo::real_expectation(hs_embed, rho0);
    const double u_tot0 = thermo::real_expectation(cx.hs.h_total, rho0);
    const double hi0_joint = thermo::real_expectation(cx.hs.h_i, rho0);

    // Every grid point for N <= 5; strided beyond that (the joint dimension
    // makes a full pass disproportionate).
    const std::size_t stride =
        (cx.hs.params.n_spins <= 5) ? 1 : std::max<std::size_t>(samples / 64, 1);
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < samples; i += stride) indices.push_back(i);
    if (indices.back() != samples - 1) indices.push_back(samples - 1);

    std::vector<std::size_t> equivalence_indices;
    for (int i = 0; i < 10; ++i)
        equivalence_indices.push_back((samples - 1) * i / 9);

    OracleDiagnostics diag;
    diag.ran = true;
    std::mutex diag_mutex;

    parallel_chunks(indices.size(), [&](std::size_t begin, std::size_t end) {
        Workspace ws(n);
        OracleDiagnostics local;
        for (std::size_t ii = begin; ii < end; ++ii) {
            const std::size_t i = indices[ii];
            const TrajectoryRow& row = traj.rows[i];
            const double t = row.t;

            const CMatrix rho_t = oracle.state(t);
            local.max_u_s_delta = std::max(
                local.max_u_s_delta,
                std::abs(thermo::real_expectation(hs_embed, rho_t) - u_s0));
            local.max_u_total_delta = std::max(
                local.max_u_total_delta,
                std::abs(thermo::real_expectation(cx.hs.h_total, rho_t) - u_tot0));

            const double q_joint =
                thermo::real_expectation(he_embed, rho_t) - cx.e_env0;
            local.max_heat_dev =
                std::max(local.max_heat_dev, std::abs(q_joint - row.q_mean));
            const double w_joint =
                -(thermo::real_expectation(cx.hs.h_i, rho_t) - hi0_joint);
            local.max_work_heat_gap =
                std::max(local.max_work_heat_gap, std::abs(w_joint - q_joint));

            const CMatrix rs_joint = linalg::partial_trace_env(rho_t, 2, n);
            local.max_reduced_sys_dev =
                std::max(local.max_reduced_sys_dev,
                         max_abs_diff(rs_joint, engine_reduced_system(cx, row)));

            build_omega(cx, 0, t, ws, ws.omega0);
            build_omega(cx, 1, t, ws, ws.omega1);
            kernels::scale_cols(n, n, ws.omega0.data(), cx.weights_c.data(),
                                ws.m0.data());
            adjoint_into(ws.omega0, ws.adj);
            kernels::cgemm(n, n, n, ws.m0.data(), ws.adj.data(), ws.b0.data());
            kernels::scale_cols(n, n, ws.omega1.data(), cx.weights_c.data(),
                                ws.mk.data());
            adjoint_into(ws.omega1, ws.adj);
            kernels::cgemm(n, n, n, ws.mk.data(), ws.adj.data(), ws.b1.data());

            CMatrix rho_e_block(n, n);
            kernels::axpy_real(n * n, cx.p0, ws.b0.data(), rho_e_block.data());
            kernels::axpy_real(n * n, cx.p1, ws.b1.data(), rho_e_block.data());
            const CMatrix re_joint = linalg::partial_trace_sys(rho_t, 2, n);
            local.max_reduced_env_dev =
                std::max(local.max_reduced_env_dev,
                         max_abs_diff(re_joint, rho_e_block));

            for (std::size_t eq : equivalence_indices) {
                if (eq != i) continue;
                CMatrix u_block(2 * n, 2 * n);
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t col = 0; col < n; ++col) {
                        u_block(r, col) = ws.omega0(r, col);
                        u_block(n + r, n + col) = ws.omega1(r, col);
                    }
                local.max_block_equivalence =
                    std::max(local.max_block_equivalence,
                             max_abs_diff(oracle.unitary(t), u_block));
            }
        }
        std::lock_guard lock(diag_mutex);
        diag.max_u_s_delta = std::max(diag.max_u_s_delta, local.max_u_s_delta);
        diag.max_u_total_delta =
            std::max(diag.max_u_total_delta, local.max_u_total_delta);
        diag.max_heat_dev = std::max(diag.max_heat_dev, local.max_heat_dev);
        diag.max_work_heat_gap =
            std::max(diag.max_work_heat_gap, local.max_work_heat_gap);
        diag.max_reduced_sys_dev =
            std::max(diag.max_reduced_sys_dev, local.max_reduced_sys_dev);
        diag.max_reduced_env_dev =
            std::max(diag.max_reduced_env_dev, local.max_reduced_env_dev);
        diag.max_block_equivalence =
            std::max(diag.max_block_equivalence, local.max_block_equivalence);
    });

    traj.oracle = diag;
}

} // namespace

unsigned trajectory_threads() {
    if (const char* env = std::getenv("DEPHASE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return clamp_threads(static_cast<unsigned>(v));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return clamp_threads(hw ? hw : 1);
}

Trajectory run_trajectory(const TrajectoryRequest& req) {
    if (!(req.t_max > 0.0) || !std::isfinite(req.t_max))
        throw ConfigError("t_max must be positive and finite");
    if (req.n_samples < 3)
        throw GridTooSmallError("n_samples must be at least 3");

    const EngineContext cx = make_context(req.params);

    Trajectory traj;
    traj.params = req.params;
    traj.dt = req.t_max / static_cast<double>(req.n_samples - 1);
    traj.rows.resize(req.n_samples);
    traj.interaction_energy_t0 = cx.hi0;
    traj.h_total_max_abs = cx.hs.h_total.max_abs();

    parallel_chunks(req.n_samples, [&](std::size_t begin, std::size_t end) {
        Workspace ws(cx.dim);
        for (std::size_t i = begin; i < end; ++i)
            traj.rows[i] = compute_sample(cx, traj.dt * static_cast<double>(i), ws);
    });

    // Information flow over the trace-distance series.
    std::vector<witness::WitnessSample> series(req.n_samples);
    for (std::size_t i = 0; i < req.n_samples; ++i) {
        series[i].t = traj.rows[i].t;
        series[i].d = traj.rows[i].trace_distance;
    }
    witness::information_flow(series);
    std::vector<double> sigma(req.n_samples);
    bool in_interval = false;
    for (std::size_t i = 0; i < req.n_samples; ++i) {
        traj.rows[i].sigma = series[i].sigma;
        sigma[i] = series[i].sigma;
        if (series[i].backflow && !in_interval) ++traj.backflow_intervals;
        in_interval = series[i].backflow;
    }
    traj.blp_value = witness::blp_measure(sigma, traj.dt).value;

    for (const TrajectoryRow& row : traj.rows) {
        traj.max_identity_residual =
            std::max(traj.max_identity_residual, row.identity_residual);
        traj.max_work_heat_gap = std::max(
            traj.max_work_heat_gap, std::abs(row.w_mean - row.q_mean));
        traj.max_gamma_excess =
            std::max(traj.max_gamma_excess, row.abs_gamma - 1.0);
        traj.max_trace_distance_dev =
            std::max(traj.max_trace_distance_dev,
                     std::abs(row.trace_distance - row.abs_gamma));
        traj.min_abs_gamma = std::min(traj.min_abs_gamma, row.abs_gamma);
        traj.max_abs_q = std::max(traj.max_abs_q, std::abs(row.q_mean));
    }
    traj.max_gamma_excess = std::max(traj.max_gamma_excess, 0.0);

    const bool want_oracle =
        req.oracle == OracleMode::on ||
        (req.oracle == OracleMode::automatic && req.params.n_spins <= 5);
    if (want_oracle) oracle_pass(cx, traj);

    return traj;
}

} // namespace dephase
