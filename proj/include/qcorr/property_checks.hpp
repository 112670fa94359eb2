// Randomized property suites: the POVM and ensemble entropy inequalities,
// fine-graining monotonicity of classical mutual information, demon-ledger
// refinement invariance, and the measure-ordering array.
#pragma once

#include <string>
#include <vector>

#include "qcorr/demon.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/random.hpp"
#include "qcorr/scan.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

struct CheckReport {
    std::string name;
    int trials = 0;
    int violations = 0;
    double worst_excess = 0.0;  // largest amount by which an inequality failed

    bool passed() const noexcept { return violations == 0; }
};

namespace detail {
inline void record(CheckReport& rep, double excess, double tol) {
    if (excess > tol) {
        ++rep.violations;
        rep.worst_excess = std::max(rep.worst_excess, excess);
    }
}
}  // namespace detail

/// H(p_j) + sum_j p_j log2(tr E_j) >= S(rho), for rank-one and coarse POVMs;
/// for rank-one POVMs additionally H(p_j) >= S(rho).
inline CheckReport check_povm_inequality(int trials, std::uint64_t seed, double tol = 1e-9) {
    CheckReport rep{"povm-ineq", trials};
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const int dim = 2 + static_cast<int>(rng.uniform() * 3.0);  // 2..4
        const DensityMatrix rho = random_density(1, dim, dim, rng);
        const double s = von_neumann_entropy(rho.mat);

        const int n_out = dim + static_cast<int>(rng.uniform() * 3.0);
        const auto rank_one = random_rank_one_povm_elements(dim, n_out, rng);
        double h = 0.0, mu_term = 0.0, p_sum = 0.0;
        for (const auto& e : rank_one) {
            const CMatrix prod = e * rho.mat;
            const double p = std::real(prod.trace());
            const double mu = std::real(e.trace());
            p_sum += p;
            h += detail::plog2p(p);
            if (p > kProbZero) mu_term += p * std::log2(mu);
        }
        detail::record(rep, std::abs(p_sum - 1.0), 1e-9);
        detail::record(rep, s - mu_term - h, tol);  // H >= S - sum p log mu
        detail::record(rep, s - h, tol);            // rank-one: H >= S

        const auto coarse = random_coarse_povm_elements(dim, 2, dim, rng);
        double hc = 0.0, tr_term = 0.0;
        for (const auto& e : coarse) {
            const CMatrix prod = e * rho.mat;
            const double p = std::real(prod.trace());
            hc += detail::plog2p(p);
            if (p > kProbZero) tr_term += p * std::log2(std::real(e.trace()));
        }
        detail::record(rep, s - (hc + tr_term), tol);  // general form
    }
    return rep;
}

/// H(q_j) >= S(sum_j q_j rho_j) - sum_j q_j S(rho_j).
inline CheckReport check_ensemble_inequality(int trials, std::uint64_t seed, double tol = 1e-9) {
    CheckReport rep{"ensemble-ineq", trials};
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const int dim = 2 + static_cast<int>(rng.uniform() * 3.0);
        const int n = 2 + static_cast<int>(rng.uniform() * 3.0);
        const std::vector<double> q = random_simplex(n, rng);
        CMatrix avg(dim);
        double avg_entropy = 0.0;
        for (int j = 0; j < n; ++j) {
            const DensityMatrix rho_j = random_density(1, dim, 1 + static_cast<int>(rng.uniform() * dim), rng);
            CMatrix scaled = rho_j.mat;
            scaled *= cplx(q[j], 0.0);
            avg += scaled;
            avg_entropy += q[j] * von_neumann_entropy(rho_j.mat);
        }
        const double holevo = von_neumann_entropy(avg) - avg_entropy;
        detail::record(rep, holevo - shannon_entropy(q), tol);
    }
    return rep;
}

/// Fine graining to rank one never decreases classical mutual information,
/// and never increases the measured conditional entropy sum_a p_a S(rho_{B|a}).
inline CheckReport check_fine_graining(int trials, std::uint64_t seed, double tol = 1e-10) {
    CheckReport rep{"fine-graining", trials};
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const int d_b = 2 + static_cast<int>(rng.uniform() * 2.0);  // 2 or 3
        const DensityMatrix rho = random_density(2, d_b, 2 * d_b, rng);
        const auto e = random_coarse_povm_elements(2, 2, 2, rng);
        const auto f = random_coarse_povm_elements(d_b, 2, d_b, rng);

        const double coarse = classical_info_table(joint_distribution_general(rho, e, f)).mutual;

        auto to_matrices = [](const RankOnePovm& povm) {
            std::vector<CMatrix> out;
            for (int i = 0; i < povm.size(); ++i) out.push_back(povm.element_matrix(i));
            return out;
        };
        const auto fine_e = to_matrices(fine_grain_rank_one(e).first);
        const auto fine_f = to_matrices(fine_grain_rank_one(f).first);
        const double fine = classical_info_table(joint_distribution_general(rho, fine_e, fine_f)).mutual;

        detail::record(rep, coarse - fine, tol);

        // concavity side: refining A's measurement only lowers the average
        // conditional entropy of B
        auto avg_cond_entropy = [&](const std::vector<CMatrix>& elements) {
            double total = 0.0;
            for (const auto& el : elements) {
                CMatrix sigma = detail::conditional_b_unnormalized(rho, el);
                const double p = std::real(sigma.trace());
                if (p < 1e-12) continue;
                sigma *= cplx(1.0 / p, 0.0);
                total += p * von_neumann_entropy(sigma);
            }
            return total;
        };
        detail::record(rep, avg_cond_entropy(fine_e) - avg_cond_entropy(e), tol);
    }
    return rep;
}

/// Coarse and rank-one-refined demon ledgers agree on w_net; rank-one inputs
/// satisfy log2(dA dB) - w_net = H(A,B).
inline CheckReport check_demon_invariance(int trials, std::uint64_t seed, double tol = 1e-9) {
    CheckReport rep{"demon", trials};
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const int d_b = 2 + static_cast<int>(rng.uniform() * 2.0);
        const DensityMatrix rho = random_density(2, d_b, 2 * d_b, rng);
        const auto e = random_coarse_povm_elements(2, 2, 2, rng);
        const auto f = random_coarse_povm_elements(d_b, 2, d_b, rng);

        const WorkLedger coarse = net_classical_work(rho, e, f);
        const WorkLedger refined = refined_work_ledger(rho, e, f);
        detail::record(rep, std::abs(coarse.w_net - refined.w_net), tol);

        auto to_matrices = [](const RankOnePovm& povm) {
            std::vector<CMatrix> out;
            for (int i = 0; i < povm.size(); ++i) out.push_back(povm.element_matrix(i));
            return out;
        };
        const auto e1 = to_matrices(fine_grain_rank_one(e).first);
        const auto f1 = to_matrices(fine_grain_rank_one(f).first);
        const WorkLedger lone = net_classical_work(rho, e1, f1);
        const double log_dim = std::log2(static_cast<double>(rho.d_a * rho.d_b));
        detail::record(rep, std::abs(log_dim - lone.w_net - lone.h_ab), 1e-10);
        detail::record(rep, std::abs(lone.residual_a) + std::abs(lone.residual_b), 1e-10);
    }
    return rep;
}

/// Full measure-ordering array on random two-qubit states at the optimizer slack.
inline CheckReport check_orderings(int n_states, std::uint64_t seed, const OptimConfig& optim = {},
                                   double slack = kOrderingSlack) {
    CheckReport rep{"orderings", n_states};
    Rng rng(seed);
    for (int t = 0; t < n_states; ++t) {
        const DensityMatrix rho = random_density(2, 2, 4, rng);
        const MeasureReport r = measure_report(rho, optim);
        if (!check_ordering(r, slack).empty()) ++rep.violations;
    }
    return rep;
}

}  // namespace qcorr
