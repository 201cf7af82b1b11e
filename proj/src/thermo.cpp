#include "dephase/thermo.hpp"

#include <cmath>
#include <string>

#include "dephase/errors.hpp"
#include "dephase/kernels.hpp"

namespace dephase::thermo {
namespace {

// Environment eigenbasis {|r_n>}. The model's h_e is diagonal in the
// computational basis, which is then used directly; anything else goes
// through an explicit eigendecomposition.
struct EnvBasis {
    bool computational;
    std::vector<double> energies;
    CMatrix r; // empty when computational
};

EnvBasis env_basis(const CMatrix& h_e) {
    if (h_e.max_abs_offdiag() <= 1e-12) {
        EnvBasis b{true, {}, {}};
        b.energies.resize(h_e.rows());
        for (std::size_t n = 0; n < h_e.rows(); ++n)
            b.energies[n] = h_e(n, n).real();
        return b;
    }
    auto ed = linalg::eigh(h_e);
    return {false, std::move(ed.eigenvalues), std::move(ed.eigenvectors)};
}

CMatrix to_env_basis(const EnvBasis& b, const CMatrix& m) {
    if (b.computational) return m;
    return (b.r.adjoint() * m) * b.r;
}

std::vector<double> diag_real(const CMatrix& m) {
    std::vector<double> d(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) d[i] = m(i, i).real();
    return d;
}

void fill_probabilities(const CMatrix& omega_r, std::vector<double>& prob) {
    const std::size_t dim = omega_r.rows();
    prob.resize(dim * dim);
    for (std::size_t m = 0; m < dim; ++m)
        for (std::size_t n = 0; n < dim; ++n)
            prob[m * dim + n] = std::norm(omega_r(n, m)); // c_{m,n} = <r_n|w|r_m>
}

double amplitude_energy_sum(const std::vector<double>& prob,
                            const std::vector<double>& energies,
                            const std::vector<double>& weights) {
    const std::size_t dim = energies.size();
    double acc = 0.0;
    for (std::size_t m = 0; m < dim; ++m) {
        double row = 0.0;
        for (std::size_t n = 0; n < dim; ++n)
            row += energies[n] * prob[m * dim + n];
        acc += weights[m] * (row - energies[m]);
    }
    return acc;
}

} // namespace

double AmplitudeTable::row_sum_defect() const {
    double defect = 0.0;
    for (const auto* p : {&prob0, &prob1}) {
        for (std::size_t m = 0; m < dim; ++m) {
            double s = 0.0;
            for (std::size_t n = 0; n < dim; ++n) s += (*p)[m * dim + n];
            defect = std::max(defect, std::abs(s - 1.0));
        }
    }
    return defect;
}

double real_expectation(const CMatrix& obs, const CMatrix& state) {
    const cplx e = trace_product(obs, state);
    if (std::abs(e.imag()) > kImagResidueTol)
        throw NonRealExpectationError(
            "expectation value imaginary residue " + std::to_string(e.imag()));
    return e.real();
}

double mean_heat(const model::DensityMatrix& rho_e_t,
                 const model::DensityMatrix& rho_e_0, const CMatrix& h_e) {
    return real_expectation(h_e, rho_e_t.matrix) -
           real_expectation(h_e, rho_e_0.matrix);
}

double mean_work(const model::DensityMatrix& joint_t,
                 const model::DensityMatrix& joint_0, const CMatrix& h_i) {
    return -(real_expectation(h_i, joint_t.matrix) -
             real_expectation(h_i, joint_0.matrix));
}

double interaction_energy(const model::HamiltonianSet& hs,
                          const dynamics::ConditionalPropagator& cp,
                          const model::DensityMatrix& rho_s0,
                          const model::DensityMatrix& rho_e0) {
    double acc = 0.0;
    CMatrix adj;
    for (int k = 0; k < 2; ++k) {
        const double pk = rho_s0.matrix(k, k).real();
        const double gk = (k == 0) ? hs.params.g0 : hs.params.g1;
        const CMatrix& vk = (k == 0) ? hs.v0 : hs.v1;
        const CMatrix& w = (k == 0) ? cp.omega0 : cp.omega1;
        const CMatrix m = w * rho_e0.matrix;
        adjoint_into(w, adj);
        acc += gk * pk * real_expectation(vk, m * adj);
    }
    return acc;
}

std::pair<AmplitudeTable, double>
coherent_energy_amplitudes(const model::HamiltonianSet& hs,
                           const dynamics::ConditionalPropagator& cp,
                           const model::DensityMatrix& rho_s0,
                           const model::DensityMatrix& rho_e0) {
    const EnvBasis basis = env_basis(hs.h_e);
    const std::vector<double> weights =
        diag_real(to_env_basis(basis, rho_e0.matrix));

    AmplitudeTable table;
    table.t = cp.t;
    table.dim = hs.h_e.rows();
    fill_probabilities(to_env_basis(basis, cp.omega0), table.prob0);
    fill_probabilities(to_env_basis(basis, cp.omega1), table.prob1);

    const double p0 = rho_s0.matrix(0, 0).real();
    const double p1 = rho_s0.matrix(1, 1).real();
    const double c =
        p0 * amplitude_energy_sum(table.prob0, basis.energies, weights) +
        p1 * amplitude_energy_sum(table.prob1, basis.energies, weights);
    return {std::move(table), c};
}

ClassicalTerms classical_decomposition_terms(const model::HamiltonianSet& hs,
                                       const dynamics::ConditionalPropagator& cp,
                                       const model::DensityMatrix& rho_s0,
                                       const model::DensityMatrix& rho_e0) {
    const EnvBasis basis = env_basis(hs.h_e);
    const std::vector<double> weights0 =
        diag_real(to_env_basis(basis, rho_e0.matrix));

    ClassicalTerms out;

    // Level-shift work: the environment spectrum is static, so every
    // Delta(E_n) vanishes term by term.
    const model::DensityMatrix rho_e_t =
        dynamics::reduced_env_state(cp, rho_e0, rho_s0);
    const std::vector<double> pop_t =
        diag_real(to_env_basis(basis, rho_e_t.matrix));
    const std::vector<double>& energies_initial = basis.energies;
    const std::vector<double>& energies_final = basis.energies; // h_e static
    for (std::size_t n = 0; n < basis.energies.size(); ++n)
        out.level_shift_work +=
            pop_t[n] * (energies_final[n] - energies_initial[n]);

    // Population heat: system populations and the initial environment
    // weights are both frozen under pure dephasing.
    const auto sample = coherence(cp, rho_e0, rho_s0);
    const model::DensityMatrix rho_s_t = reduced_system_state(sample, rho_s0);
    for (int k = 0; k < 2; ++k) {
        const double pk_t = rho_s_t.matrix(k, k).real();
        const double pk_0 = rho_s0.matrix(k, k).real();
        for (std::size_t m = 0; m < weights0.size(); ++m)
            out.population_heat +=
                (pk_t * weights0[m] - pk_0 * weights0[m]) * basis.energies[m];
    }

    // Rotated-eigenstate energies eps_m^k(t) = sum_n E_n |c_{m,n}^k|^2.
    auto [table, c] = coherent_energy_amplitudes(hs, cp, rho_s0, rho_e0);
    out.rotation_work = c;
    return out;
}

ThermoRecord audit(const model::HamiltonianSet& hs,
                   const dynamics::ConditionalPropagator& cp,
                   const model::DensityMatrix& rho_s0,
                   const model::DensityMatrix& rho_e0) {
    ThermoRecord rec;
    rec.t = cp.t;

    const auto rho_e_t = dynamics::reduced_env_state(cp, rho_e0, rho_s0);
    rec.q_mean = mean_heat(rho_e_t, rho_e0, hs.h_e);

    const auto joint_0 = dynamics::joint_oracle_state(hs, rho_s0, rho_e0, 0.0);
    const auto joint_t = dynamics::joint_oracle_state(hs, rho_s0, rho_e0, cp.t);
    rec.w_mean = mean_work(joint_t, joint_0, hs.h_i);

    rec.c_coherent =
        coherent_energy_amplitudes(hs, cp, rho_s0, rho_e0).second;
    rec.identity_residual = std::abs(rec.q_mean - rec.c_coherent);

    const CMatrix hs_embed =
        linalg::kron(hs.h_s, CMatrix::identity(hs.h_e.rows()));
    rec.u_s_delta = real_expectation(hs_embed, joint_t.matrix) -
                    real_expectation(hs_embed, joint_0.matrix);
    rec.u_total_delta = real_expectation(hs.h_total, joint_t.matrix) -
                        real_expectation(hs.h_total, joint_0.matrix);
    return rec;
}

} // namespace dephase::thermo
