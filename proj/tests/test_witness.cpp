#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dephase/errors.hpp"
#include "dephase/trajectory.hpp"
#include "dephase/witness.hpp"

using dephase::cplx;
namespace witness = dephase::witness;
namespace dynamics = dephase::dynamics;

namespace {

std::vector<witness::WitnessSample> make_series(const std::vector<double>& t,
                                                const std::vector<double>& d) {
    std::vector<witness::WitnessSample> s(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        s[i].t = t[i];
        s[i].d = d[i];
    }
    return s;
}

std::vector<double> sigma_of(const std::vector<witness::WitnessSample>& s) {
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i].sigma;
    return out;
}

} // namespace

TEST_CASE("trace distance of the pair equals |gamma|") {
    dynamics::CoherenceSample sample;

    sample.gamma = 1.0;
    CHECK(witness::trace_distance_pair(sample).d == doctest::Approx(1.0));

    sample.gamma = 0.0;
    CHECK(witness::trace_distance_pair(sample).d == doctest::Approx(0.0));

    for (const cplx g : {cplx(0.3, -0.4), cplx(-0.9, 0.1), cplx(0.0, 0.77)}) {
        sample.gamma = g;
        const auto w = witness::trace_distance_pair(sample);
        CHECK(std::abs(w.d - std::abs(g)) < 1e-12);
    }
}

TEST_CASE("information flow of a constant series is zero") {
    std::vector<double> t, d;
    for (int i = 0; i < 50; ++i) {
        t.push_back(0.1 * i);
        d.push_back(0.42);
    }
    auto series = make_series(t, d);
    witness::information_flow(series);
    // Interior central differences cancel exactly; the one-sided end
    // stencils only leave representation roundoff.
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        CHECK(series[i].sigma == 0.0);
        CHECK_FALSE(series[i].backflow);
    }
    CHECK(std::abs(series.front().sigma) < 1e-14);
    CHECK(std::abs(series.back().sigma) < 1e-14);
}

TEST_CASE("information flow matches the analytic derivative of cos^2") {
    // D(t) = cos^2(t), sigma = -sin(2t); second-order stencils, so the error
    // is bounded by h^2/6 * max|D'''| = (2/3) h^2 inside and ~4x at the ends.
    const double h = 0.01;
    std::vector<double> t, d;
    for (int i = 0; i <= 200; ++i) {
        t.push_back(h * i);
        d.push_back(std::cos(h * i) * std::cos(h * i));
    }
    auto series = make_series(t, d);
    witness::information_flow(series);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double exact = -std::sin(2.0 * t[i]);
        CHECK(std::abs(series[i].sigma - exact) < 3e-4);
    }

    // Interior backflow flags track the sign; endpoints stay unflagged.
    CHECK_FALSE(series.front().backflow);
    CHECK_FALSE(series.back().backflow);
    for (std::size_t i = 1; i + 1 < series.size(); ++i)
        CHECK(series[i].backflow == (series[i].sigma > 0.0));
}

TEST_CASE("grid validation") {
    auto tiny = make_series({0.0, 1.0}, {1.0, 0.5});
    CHECK_THROWS_AS(witness::information_flow(tiny), dephase::GridTooSmallError);

    auto skew = make_series({0.0, 1.0, 2.5}, {1.0, 0.5, 0.2});
    CHECK_THROWS_AS(witness::information_flow(skew),
                    dephase::NonUniformGridError);
}

TEST_CASE("blp measure of a monotone decay is zero") {
    std::vector<double> t, d;
    for (int i = 0; i <= 400; ++i) {
        t.push_back(0.01 * i);
        d.push_back(std::exp(-0.01 * i));
    }
    auto series = make_series(t, d);
    witness::information_flow(series);
    CHECK(witness::blp_measure(sigma_of(series), 0.01).value == 0.0);
}

TEST_CASE("blp measure of one full revival is one") {
    // D: 1 -> 0 -> 1 over [0, pi]; the positive part integrates to the rise.
    const std::size_t n = 2001;
    const double h = M_PI / static_cast<double>(n - 1);
    std::vector<double> t, d;
    for (std::size_t i = 0; i < n; ++i) {
        t.push_back(h * static_cast<double>(i));
        d.push_back(std::cos(t.back()) * std::cos(t.back()));
    }
    auto series = make_series(t, d);
    witness::information_flow(series);
    CHECK(witness::blp_measure(sigma_of(series), h).value ==
          doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("blp refinement is stable at fixed horizon") {
    auto blp_at = [](std::size_t n) {
        const double h = M_PI / static_cast<double>(n - 1);
        std::vector<double> t, d;
        for (std::size_t i = 0; i < n; ++i) {
            t.push_back(h * static_cast<double>(i));
            d.push_back(std::cos(t.back()) * std::cos(t.back()));
        }
        auto series = make_series(t, d);
        witness::information_flow(series);
        return witness::blp_measure(sigma_of(series), h).value;
    };
    const double coarse = blp_at(501);
    const double fine = blp_at(2001);
    CHECK(std::abs(fine - coarse) < 1e-4);
}

TEST_CASE("uncoupled trajectory shows no backflow") {
    dephase::TrajectoryRequest req;
    req.params.n_spins = 2;
    req.params.g0 = req.params.g1 = 0.0;
    req.t_max = 5.0;
    req.n_samples = 101;
    const auto traj = dephase::run_trajectory(req);
    CHECK(traj.blp_value < 1e-10);
    for (const auto& row : traj.rows) {
        CHECK(std::abs(row.sigma) < 1e-10);
        CHECK(1.0 - row.abs_gamma < 1e-10);
        CHECK(std::abs(row.q_mean) < 1e-10);
    }
}

TEST_CASE("sigma sign matches the discrete coherence slope") {
    dephase::TrajectoryRequest req;
    req.params.n_spins = 3;
    req.params.g0 = req.params.g1 = 0.5;
    req.t_max = 5.0;
    req.n_samples = 201;
    const auto traj = dephase::run_trajectory(req);
    for (std::size_t i = 1; i + 1 < traj.rows.size(); ++i) {
        const double slope =
            traj.rows[i + 1].abs_gamma - traj.rows[i - 1].abs_gamma;
        if (traj.rows[i].sigma > 0.0) CHECK(slope > 0.0);
        if (traj.rows[i].sigma < 0.0) CHECK(slope < 0.0);
    }
}
