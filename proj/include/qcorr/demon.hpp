// Work accounting for local demons with classical communication: extractable
// work, erasure cost, and rank-one refinement of coarse measurements.
#pragma once

#include <vector>

#include "qcorr/density.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/matrix.hpp"
#include "qcorr/measurement.hpp"

namespace qcorr {

struct WorkLedger {
    double w_plus = 0.0;   // extractable work, bits
    double w_minus = 0.0;  // erasure cost, bits
    double w_net = 0.0;    // w_plus - w_minus
    double h_ab = 0.0;     // H(A,B) of the measurement record
    double residual_a = 0.0;  // sum_a p_a S(rho_{A|a})
    double residual_b = 0.0;  // sum_ab p_ab S(rho_{B|ab})
    double record_a = 0.0;    // refined ledger: sum_a p_a H(lambda_{alpha|a})
    double record_b = 0.0;    // refined ledger: sum_ab p_ab H(lambda_{beta|ab})
};

namespace detail {

/// Unnormalized tr_A((E (x) I) rho) for a general element E on A.
inline CMatrix conditional_b_unnormalized(const DensityMatrix& rho, const CMatrix& e) {
    const int da = rho.d_a, db = rho.d_b;
    CMatrix out(db);
    for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l) {
            cplx s = 0.0;
            for (int i = 0; i < da; ++i)
                for (int j = 0; j < da; ++j) s += e(j, i) * rho.mat(i * db + k, j * db + l);
            out(k, l) = s;
        }
    return out;
}

}  // namespace detail

/// Net classical work for communicating demons measuring possibly coarse
/// POVMs {E_a} on A and {F_b} on B. Post-measurement states use the canonical
/// Kraus choice sqrt(E): W_c = log(dA dB) - H(A,B) - sum_a p_a S(rho_{A|a})
/// - sum_ab p_ab S(rho_{B|ab}).
inline WorkLedger net_classical_work(const DensityMatrix& rho, const std::vector<CMatrix>& e_a,
                                     const std::vector<CMatrix>& f_b) {
    const CMatrix rho_a = partial_trace(rho, Subsystem::A);
    WorkLedger led;
    std::vector<double> joint;
    joint.reserve(e_a.size() * f_b.size());

    std::vector<CMatrix> sqrt_f;
    for (const auto& f : f_b) sqrt_f.push_back(sqrt_psd(f));

    for (const auto& e : e_a) {
        if (e.dim() != rho.d_a) throw Error(ErrorCode::DimMismatch, "A POVM element dim mismatch");
        const CMatrix se = sqrt_psd(e);
        const CMatrix post_a = se * rho_a * se;
        const double p_a = std::real(post_a.trace());
        if (p_a > 1e-12) {
            CMatrix norm_a = post_a;
            norm_a *= cplx(1.0 / p_a, 0.0);
            led.residual_a += p_a * von_neumann_entropy(norm_a);
        }
        const CMatrix sigma_b = detail::conditional_b_unnormalized(rho, e);  // p_a * rho_{B|a}
        for (std::size_t b = 0; b < f_b.size(); ++b) {
            if (f_b[b].dim() != rho.d_b)
                throw Error(ErrorCode::DimMismatch, "B POVM element dim mismatch");
            const CMatrix post_b = sqrt_f[b] * sigma_b * sqrt_f[b];
            const double p_ab = std::real(post_b.trace());
            joint.push_back(std::max(p_ab, 0.0));
            if (p_ab > 1e-12) {
                CMatrix norm_b = post_b;
                norm_b *= cplx(1.0 / p_ab, 0.0);
                led.residual_b += p_ab * von_neumann_entropy(norm_b);
            }
        }
    }

    for (double p : joint) led.h_ab += detail::plog2p(p);
    led.w_plus = std::log2(static_cast<double>(rho.d_a * rho.d_b)) - led.residual_a - led.residual_b;
    led.w_minus = led.h_ab;
    led.w_net = led.w_plus - led.w_minus;
    return led;
}

/// Rank-one conditioned strategy: post-measurement states are pure, so the
/// residual entropies vanish identically and w_net = log(dA dB) - H(A,B).
inline WorkLedger net_classical_work(const DensityMatrix& rho, const ConditionedStrategy& s) {
    const JointDistribution jd = joint_distribution_conditioned(rho, s);
    WorkLedger led;
    for (double p : jd.flat()) led.h_ab += detail::plog2p(p);
    led.w_plus = std::log2(static_cast<double>(rho.d_a * rho.d_b));
    led.w_minus = led.h_ab;
    led.w_net = led.w_plus - led.w_minus;
    return led;
}

/// Rank-one refinement of a coarse POVM: each outcome a is followed by a
/// measurement in the eigenbasis of its post-measurement state, yielding
/// elements sqrt(E_a) |v_alpha><v_alpha| sqrt(E_a) and eigenvalue records
/// lambda_{alpha|a}.
struct RankOneRefinement {
    RankOnePovm povm;
    std::vector<int> parent;                   // coarse outcome of each element
    std::vector<std::vector<double>> records;  // lambda_{alpha|a} per coarse outcome
};

inline RankOneRefinement refine_to_rank_one(const std::vector<CMatrix>& elements,
                                            const std::vector<CMatrix>& post_states) {
    if (elements.size() != post_states.size())
        throw Error(ErrorCode::DimMismatch, "one post-measurement state per POVM element required");
    RankOneRefinement out;
    out.povm.dim = elements.empty() ? 0 : elements.front().dim();
    out.records.resize(elements.size());
    for (std::size_t a = 0; a < elements.size(); ++a) {
        const CMatrix se = sqrt_psd(elements[a]);
        const EigResult eg = hermitian_eig(post_states[a]);
        for (int k = 0; k < post_states[a].dim(); ++k)
            out.records[a].push_back(std::max(eg.eigenvalues[k], 0.0));
        for (int k = 0; k < post_states[a].dim(); ++k) {
            const Ket refined = se.apply(eig_column(eg, k));
            const double weight = std::real(inner(refined, refined));
            if (weight < 1e-12) continue;
            Ket unit = refined;
            for (auto& x : unit) x /= std::sqrt(weight);
            out.povm.elements.push_back({weight, std::move(unit)});
            out.parent.push_back(static_cast<int>(a));
        }
    }
    return out;
}

/// Ledger after both demons refine to rank one: work log(dA dB) is extracted
/// from pure post-measurement states, while the erasure cost grows by the
/// record entropies H(lambda_{alpha|a}) and H(lambda_{beta|ab}).
inline WorkLedger refined_work_ledger(const DensityMatrix& rho, const std::vector<CMatrix>& e_a,
                                      const std::vector<CMatrix>& f_b) {
    const CMatrix rho_a = partial_trace(rho, Subsystem::A);
    WorkLedger led;

    std::vector<CMatrix> elements_kept, posts_a;
    std::vector<double> p_kept;
    for (const auto& e : e_a) {
        const CMatrix se = sqrt_psd(e);
        CMatrix post = se * rho_a * se;
        const double p_a = std::real(post.trace());
        if (p_a < 1e-12) continue;
        post *= cplx(1.0 / p_a, 0.0);
        elements_kept.push_back(e);
        posts_a.push_back(std::move(post));
        p_kept.push_back(p_a);
    }
    const RankOneRefinement ref_a = refine_to_rank_one(elements_kept, posts_a);
    for (std::size_t a = 0; a < p_kept.size(); ++a) {
        double h = 0.0;
        for (double lam : ref_a.records[a]) h += detail::plog2p(lam);
        led.record_a += p_kept[a] * h;
    }

    std::vector<CMatrix> sqrt_f;
    for (const auto& f : f_b) sqrt_f.push_back(sqrt_psd(f));
    for (const auto& e : elements_kept) {
        const CMatrix sigma_b = detail::conditional_b_unnormalized(rho, e);
        for (std::size_t b = 0; b < f_b.size(); ++b) {
            CMatrix post = sqrt_f[b] * sigma_b * sqrt_f[b];
            const double p_ab = std::real(post.trace());
            led.h_ab += detail::plog2p(std::max(p_ab, 0.0));
            if (p_ab < 1e-12) continue;
            post *= cplx(1.0 / p_ab, 0.0);
            double h = 0.0;
            for (double lam : density_spectrum(post)) h += detail::plog2p(lam);
            led.record_b += p_ab * h;
        }
    }

    led.w_plus = std::log2(static_cast<double>(rho.d_a * rho.d_b));
    led.w_minus = led.h_ab + led.record_a + led.record_b;
    led.w_net = led.w_plus - led.w_minus;
    return led;
}

/// Work deficit without communication: W_q - W_c = S(A) + S(B) - S(A,B),
/// computed from the two work expressions.
inline double work_deficit_no_comm(const DensityMatrix& rho) {
    const double log_dim = std::log2(static_cast<double>(rho.d_a * rho.d_b));
    const double w_q = log_dim - von_neumann_entropy(rho.mat);
    const double w_c = log_dim - von_neumann_entropy(partial_trace(rho, Subsystem::A)) -
                       von_neumann_entropy(partial_trace(rho, Subsystem::B));
    return w_q - w_c;
}

}  // namespace qcorr
