#include "dephase/witness.hpp"

#include <cmath>
#include <string>

#include "dephase/errors.hpp"

namespace dephase::witness {

WitnessSample trace_distance_pair(const dynamics::CoherenceSample& sample) {
    CMatrix diff(2, 2);
    diff(0, 1) = sample.gamma;
    diff(1, 0) = std::conj(sample.gamma);
    const double d = 0.5 * linalg::trace_norm(diff);
    if (std::abs(d - std::abs(sample.gamma)) > 1e-10)
        throw NumericError("trace distance disagrees with |gamma| at t=" +
                           std::to_string(sample.t));
    WitnessSample w;
    w.t = sample.t;
    w.d = d;
    return w;
}

void information_flow(std::vector<WitnessSample>& series) {
    const std::size_t n = series.size();
    if (n < 3)
        throw GridTooSmallError("information_flow: need at least 3 samples");
    const double dt = series[1].t - series[0].t;
    if (!(dt > 0.0))
        throw NonUniformGridError("information_flow: grid not increasing");
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double step = series[i + 1].t - series[i].t;
        if (std::abs(step - dt) > 1e-9 * dt)
            throw NonUniformGridError("information_flow: non-uniform grid at index " +
                                      std::to_string(i));
    }

    auto d = [&](std::size_t i) { return series[i].d; };
    series[0].sigma = (-3.0 * d(0) + 4.0 * d(1) - d(2)) / (2.0 * dt);
    series[n - 1].sigma =
        (3.0 * d(n - 1) - 4.0 * d(n - 2) + d(n - 3)) / (2.0 * dt);
    for (std::size_t i = 1; i + 1 < n; ++i)
        series[i].sigma = (d(i + 1) - d(i - 1)) / (2.0 * dt);

    // Endpoint sigmas are one-sided estimates; keep them out of the flag.
    series[0].backflow = false;
    series[n - 1].backflow = false;
    for (std::size_t i = 1; i + 1 < n; ++i)
        series[i].backflow = series[i].sigma > 0.0;
}

BlpMeasure blp_measure(const std::vector<double>& sigma, double dt) {
    auto pos = [](double x) { return x > 0.0 ? x : 0.0; };
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < sigma.size(); ++i)
        acc += 0.5 * dt * (pos(sigma[i]) + pos(sigma[i + 1]));
    return {acc};
}

} // namespace dephase::witness
