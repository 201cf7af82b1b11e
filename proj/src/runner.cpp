#include "dephase/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "dephase/errors.hpp"
#include "dephase/export_csv.hpp"
#include "dephase/export_svg.hpp"

namespace dephase {
namespace {

constexpr double kIdentityTol = 1e-9;     // relative to max(1, max|<Q>|)
constexpr double kTraceDistanceTol = 1e-10;
constexpr double kGammaBoundTol = 1e-10;
constexpr double kProminence = 1e-12;
constexpr long kAlignmentSteps = 2;

std::string pair_tag(const Trajectory& t) {
    return "N=" + std::to_string(t.params.n_spins) +
           " g=" + format_value(t.params.g0);
}

std::string metric(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::vector<double> q_series(const Trajectory& t) {
    std::vector<double> q(t.rows.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = t.rows[i].q_mean;
    return q;
}

std::vector<double> gamma_series(const Trajectory& t) {
    std::vector<double> g(t.rows.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = t.rows[i].abs_gamma;
    return g;
}

long nearest_index(const std::vector<std::size_t>& candidates, std::size_t i) {
    long best = -1;
    for (std::size_t c : candidates) {
        const long gap = std::labs(static_cast<long>(c) - static_cast<long>(i));
        if (best < 0 || gap < best) best = gap;
    }
    return best;
}

} // namespace

std::string format_value(double v) {
    char buf[40];
    const auto res =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general);
    return std::string(buf, res.ptr);
}

void RunConfig::validate() const {
    params.validate();
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw ConfigError("t_max: must be positive and finite");
    if (n_samples < 3) throw ConfigError("samples: need at least 3");
    for (std::size_t n : sweep_n) {
        model::ModelParams p = params;
        p.n_spins = n;
        p.validate();
    }
    for (double g : sweep_g)
        if (!std::isfinite(g)) throw ConfigError("sweep_g: non-finite entry");
    if (out_dir.empty()) throw ConfigError("out_dir: must not be empty");
    for (int f : figs)
        if (f < 2 || f > 5) throw ConfigError("fig: must be in {2,3,4,5}");
}

std::vector<std::size_t> local_maxima(const std::vector<double>& y,
                                      double min_prominence) {
    std::vector<std::size_t> out;
    const std::size_t n = y.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(y[i] > y[i - 1] && y[i] > y[i + 1])) continue;
        double left_base = y[i];
        for (std::size_t j = i; j-- > 0;) {
            if (y[j] > y[i]) break;
            left_base = std::min(left_base, y[j]);
        }
        double right_base = y[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (y[j] > y[i]) break;
            right_base = std::min(right_base, y[j]);
        }
        if (y[i] - std::max(left_base, right_base) >= min_prominence)
            out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> local_minima(const std::vector<double>& y,
                                      double min_prominence) {
    std::vector<double> neg(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) neg[i] = -y[i];
    return local_maxima(neg, min_prominence);
}

RunResult run(const RunConfig& config) {
    config.validate();

    std::vector<std::size_t> ns =
        config.sweep_n.empty() ? std::vector<std::size_t>{config.params.n_spins}
                               : config.sweep_n;
    std::vector<double> gs = config.sweep_g.empty()
                                 ? std::vector<double>{config.params.g0}
                                 : config.sweep_g;

    RunResult result;
    for (std::size_t n : ns) {
        for (double g : gs) {
            TrajectoryRequest req;
            req.params = config.params;
            req.params.n_spins = n;
            req.params.g0 = g;
            req.params.g1 = config.sweep_g.empty() ? config.params.g1 : g;
            req.t_max = config.t_max;
            req.n_samples = config.n_samples;
            req.oracle = config.oracle;
            try {
                result.trajectories.push_back(run_trajectory(req));
            } catch (const NumericError& e) {
                throw NumericError("(N=" + std::to_string(n) +
                                   ", g=" + format_value(g) + ") " + e.what());
            }
        }
    }

    for (const Trajectory& t : result.trajectories) {
        PairSummary s;
        s.n_spins = t.params.n_spins;
        s.g = t.params.g0;
        s.max_identity_residual = t.max_identity_residual;
        s.max_work_heat_gap = t.max_work_heat_gap;
        s.min_abs_gamma = t.min_abs_gamma;
        s.max_abs_q = t.max_abs_q;
        s.blp_value = t.blp_value;
        s.backflow_intervals = t.backflow_intervals;
        s.interaction_energy_t0 = t.interaction_energy_t0;
        s.interaction_energy_tf =
            t.interaction_energy_t0 - t.rows.back().w_mean;

        const auto q = q_series(t);
        const auto gamma = gamma_series(t);
        const auto q_maxima = local_maxima(q, kProminence);
        const auto g_minima = local_minima(gamma, kProminence);
        for (std::size_t iq : q_maxima) {
            TradeoffPair pair;
            pair.t_q_max = t.rows[iq].t;
            pair.gap_steps = -1;
            for (std::size_t ig : g_minima) {
                const long gap = std::labs(long(ig) - long(iq));
                if (pair.gap_steps < 0 || gap < pair.gap_steps) {
                    pair.gap_steps = gap;
                    pair.t_gamma_min = t.rows[ig].t;
                }
            }
            s.tradeoff_pairs.push_back(pair);
        }
        result.pair_summaries.push_back(std::move(s));
    }

    // --- assertions ------------------------------------------------------
    auto add_assertion = [&](std::string name, bool pass, std::string detail) {
        result.assertions.push_back({std::move(name), pass, std::move(detail)});
        result.all_pass = result.all_pass && result.assertions.back().pass;
    };

    {
        bool pass = true;
        std::string detail;
        for (const Trajectory& t : result.trajectories) {
            const double tol = kIdentityTol * std::max(1.0, t.max_abs_q);
            if (t.max_identity_residual >= tol) pass = false;
            if (detail.empty() || t.max_identity_residual >= tol)
                detail = pair_tag(t) + " residual " +
                         metric(t.max_identity_residual) + " tol " + metric(tol);
        }
        add_assertion("identity_q_equals_c", pass, detail);
    }
    {
        bool pass = true;
        std::string detail;
        for (const Trajectory& t : result.trajectories) {
            const double tol = kIdentityTol * std::max(1.0, t.max_abs_q);
            if (t.max_work_heat_gap >= tol) pass = false;
            if (detail.empty() || t.max_work_heat_gap >= tol)
                detail = pair_tag(t) + " gap " + metric(t.max_work_heat_gap) +
                         " tol " + metric(tol);
        }
        add_assertion("work_equals_heat", pass, detail);
    }
    {
        double worst = 0.0;
        for (const Trajectory& t : result.trajectories)
            worst = std::max(worst, t.max_trace_distance_dev);
        add_assertion("trace_distance_identity", worst < kTraceDistanceTol,
                      "max |D - |Gamma|| = " + metric(worst));
    }
    {
        double worst = 0.0;
        for (const Trajectory& t : result.trajectories)
            worst = std::max(worst, t.max_gamma_excess);
        add_assertion("gamma_bounded", worst <= kGammaBoundTol,
                      "max(|Gamma| - 1) = " + metric(worst));
    }

    auto min_gamma_of = [&](std::size_t n, double g) {
        for (const Trajectory& t : result.trajectories)
            if (t.params.n_spins == n && t.params.g0 == g)
                return t.min_abs_gamma;
        return 1.0;
    };
    if (ns.size() >= 2) {
        std::vector<std::size_t> sorted_n = ns;
        std::sort(sorted_n.begin(), sorted_n.end());
        bool pass = true;
        for (double g : gs)
            for (std::size_t i = 0; i + 1 < sorted_n.size(); ++i)
                if (min_gamma_of(sorted_n[i + 1], g) >
                    min_gamma_of(sorted_n[i], g) + 1e-12)
                    pass = false;
        add_assertion("min_coherence_nonincreasing_in_n", pass,
                      "min_t |Gamma| vs N at each g");
    }
    if (gs.size() >= 2) {
        std::vector<double> sorted_g = gs;
        std::sort(sorted_g.begin(), sorted_g.end());
        bool pass = true;
        for (std::size_t n : ns)
            for (std::size_t i = 0; i + 1 < sorted_g.size(); ++i)
                if (min_gamma_of(n, sorted_g[i + 1]) >
                    min_gamma_of(n, sorted_g[i]) + 1e-12)
                    pass = false;
        add_assertion("min_coherence_nonincreasing_in_g", pass,
                      "min_t |Gamma| vs g at each N");
    }

    {
        bool pass = true;
        std::string detail = "every <Q> max within " +
                             std::to_string(kAlignmentSteps) +
                             " steps of a |Gamma| min and vice versa";
        for (const Trajectory& t : result.trajectories) {
            const auto q = q_series(t);
            const auto gamma = gamma_series(t);
            const auto q_maxima = local_maxima(q, kProminence);
            const auto g_minima = local_minima(gamma, kProminence);
            for (std::size_t iq : q_maxima) {
                const long gap = nearest_index(g_minima, iq);
                if (gap < 0 || gap > kAlignmentSteps) {
                    pass = false;
                    detail = pair_tag(t) + ": <Q> max at t=" +
                             format_value(t.rows[iq].t) + " unmatched";
                }
            }
            for (std::size_t ig : g_minima) {
                const long gap = nearest_index(q_maxima, ig);
                if (gap < 0 || gap > kAlignmentSteps) {
                    pass = false;
                    detail = pair_tag(t) + ": |Gamma| min at t=" +
                             format_value(t.rows[ig].t) + " unmatched";
                }
            }
        }
        add_assertion("heat_coherence_alignment", pass, detail);
    }

    return result;
}

void write_outputs(const RunConfig& config, const RunResult& result) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create out dir: " + config.out_dir);
    const fs::path dir(config.out_dir);

    if (config.emit_csv) {
        for (const Trajectory& t : result.trajectories) {
            const std::string name = "traj_N" + std::to_string(t.params.n_spins) +
                                     "_g" + format_value(t.params.g0) + ".csv";
            export_csv(t, (dir / name).string());
        }
    }

    if (config.emit_svg) {
        // fig2: one file per g value with at least two N curves.
        if (config.figs.count(2)) {
            std::map<double, std::vector<const Trajectory*>> by_g;
            for (const Trajectory& t : result.trajectories)
                by_g[t.params.g0].push_back(&t);
            bool wrote = false;
            for (auto& [g, list] : by_g) {
                if (list.size() < 2) continue;
                std::sort(list.begin(), list.end(),
                          [](const Trajectory* a, const Trajectory* b) {
                              return a->params.n_spins < b->params.n_spins;
                          });
                export_svg_fig2(list,
                                (dir / ("fig2_g" + format_value(g) + ".svg")).string());
                wrote = true;
            }
            if (!wrote && config.figs_explicit)
                throw MissingSeriesError("fig2 requested but no n_spins sweep was run");
        }
        if (config.figs.count(3)) {
            std::map<std::size_t, std::vector<const Trajectory*>> by_n;
            for (const Trajectory& t : result.trajectories)
                by_n[t.params.n_spins].push_back(&t);
            bool wrote = false;
            for (auto& [n, list] : by_n) {
                if (list.size() < 2) continue;
                std::sort(list.begin(), list.end(),
                          [](const Trajectory* a, const Trajectory* b) {
                              return a->params.g0 < b->params.g0;
                          });
                export_svg_fig3(list,
                                (dir / ("fig3_N" + std::to_string(n) + ".svg")).string());
                wrote = true;
            }
            if (!wrote && config.figs_explicit)
                throw MissingSeriesError("fig3 requested but no g sweep was run");
        }
        for (const Trajectory& t : result.trajectories) {
            const std::string suffix = "_N" + std::to_string(t.params.n_spins) +
                                       "_g" + format_value(t.params.g0) + ".svg";
            if (config.figs.count(4))
                export_svg_fig4(t, (dir / ("fig4" + suffix)).string());
            if (config.figs.count(5))
                export_svg_fig5(t, (dir / ("fig5" + suffix)).string());
        }
    }

    if (config.emit_identity_report) {
        std::string out;
        for (const Trajectory& t : result.trajectories) {
            const double tol = kIdentityTol * std::max(1.0, t.max_abs_q);
            out += pair_tag(t) + " max_identity_residual=" +
                   metric(t.max_identity_residual) + " tolerance=" + metric(tol) +
                   " max_work_heat_gap=" + metric(t.max_work_heat_gap) +
                   (t.max_identity_residual < tol && t.max_work_heat_gap < tol
                        ? " PASS"
                        : " FAIL") +
                   "\n";
        }
        std::ofstream f(dir / "identity_report.txt",
                        std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot write identity report");
        f << out;
    }
}

std::string format_summary(const RunResult& result) {
    std::ostringstream out;
    for (const PairSummary& s : result.pair_summaries) {
        out << "pair N=" << s.n_spins << " g=" << format_value(s.g)
            << ": max_identity_residual=" << metric(s.max_identity_residual)
            << " max_work_heat_gap=" << metric(s.max_work_heat_gap)
            << " min|Gamma|=" << metric(s.min_abs_gamma)
            << " BLP=" << metric(s.blp_value)
            << " backflow_intervals=" << s.backflow_intervals
            << " <H_I>(0)=" << metric(s.interaction_energy_t0)
            << " <H_I>(t_f)=" << metric(s.interaction_energy_tf) << "\n";
        if (!s.tradeoff_pairs.empty()) {
            out << "  <Q> maxima vs |Gamma| minima:";
            for (const TradeoffPair& p : s.tradeoff_pairs)
                out << " (t=" << format_value(p.t_q_max)
                    << " ~ t=" << format_value(p.t_gamma_min)
                    << ", gap=" << p.gap_steps << ")";
            out << "\n";
        }
    }
    for (const Trajectory& t : result.trajectories) {
        if (!t.oracle.ran) continue;
        out << "oracle N=" << t.params.n_spins
            << " g=" << format_value(t.params.g0)
            << ": max_reduced_sys_dev=" << metric(t.oracle.max_reduced_sys_dev)
            << " max_reduced_env_dev=" << metric(t.oracle.max_reduced_env_dev)
            << " max_u_s_delta=" << metric(t.oracle.max_u_s_delta)
            << " max_u_total_delta=" << metric(t.oracle.max_u_total_delta)
            << " max_block_equivalence="
            << metric(t.oracle.max_block_equivalence) << "\n";
    }
    for (const AssertionResult& a : result.assertions)
        out << (a.pass ? "PASS " : "FAIL ") << a.name << " (" << a.detail
            << ")\n";
    out << (result.all_pass ? "all assertions passed"
                            : "one or more assertions FAILED")
        << "\n";
    return out.str();
}

} // namespace dephase
