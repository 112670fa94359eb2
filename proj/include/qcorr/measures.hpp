// The measure array: quantum mutual information, MID, WPM, the minimized
// conditional/joint-entropy measures M2b and M3b, quantum discord and demon
// discord, plus closed-form evaluators for symmetric classical-quantum states.
#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "qcorr/density.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/geometry.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

/// Conditioning direction for the asymmetric measures. BtoA swaps the
/// subsystems before evaluation.
enum class Direction { AtoB, BtoA };

inline double quantum_mutual_information(const DensityMatrix& rho) {
    return quantum_info_table(rho).mutual;
}

namespace detail {

inline void require_two_qubits(const DensityMatrix& rho) {
    if (rho.d_a != 2 || rho.d_b != 2)
        throw Error(ErrorCode::DimMismatch, "measure requires a two-qubit state");
}

/// Allocation-free p_{ab} for projective pairs on a two-qubit state.
/// Outcome order: (a0,b0), (a0,b1), (a1,b0), (a1,b1).
inline std::array<double, 4> pair_probs(const DensityMatrix& rho, double ta, double pa, double tb,
                                        double pb) {
    const cplx ea = std::polar(1.0, pa), eb = std::polar(1.0, pb);
    const std::array<std::array<cplx, 2>, 2> ka{{{std::cos(ta), ea * std::sin(ta)},
                                                 {-std::sin(ta), ea * std::cos(ta)}}};
    const std::array<std::array<cplx, 2>, 2> kb{{{std::cos(tb), eb * std::sin(tb)},
                                                 {-std::sin(tb), eb * std::cos(tb)}}};
    std::array<double, 4> p{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            cplx v[4];
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 2; ++k) v[2 * i + k] = ka[a][i] * kb[b][k];
            cplx s = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) s += std::conj(v[i]) * rho.mat(i, j) * v[j];
            p[2 * a + b] = std::real(s);
        }
    return p;
}

inline double pair_mutual(const DensityMatrix& rho, const std::vector<double>& ang) {
    const auto p = pair_probs(rho, ang[0], ang[1], ang[2], ang[3]);
    const double h_ab = plog2p(p[0]) + plog2p(p[1]) + plog2p(p[2]) + plog2p(p[3]);
    const double h_a = plog2p(p[0] + p[1]) + plog2p(p[2] + p[3]);
    const double h_b = plog2p(p[0] + p[2]) + plog2p(p[1] + p[3]);
    return h_a + h_b - h_ab;
}

inline double pair_joint_entropy(const DensityMatrix& rho, const std::vector<double>& ang) {
    const auto p = pair_probs(rho, ang[0], ang[1], ang[2], ang[3]);
    return plog2p(p[0]) + plog2p(p[1]) + plog2p(p[2]) + plog2p(p[3]);
}

inline double pair_cond_entropy_b_given_a(const DensityMatrix& rho, const std::vector<double>& ang) {
    const auto p = pair_probs(rho, ang[0], ang[1], ang[2], ang[3]);
    const double h_ab = plog2p(p[0]) + plog2p(p[1]) + plog2p(p[2]) + plog2p(p[3]);
    const double h_a = plog2p(p[0] + p[1]) + plog2p(p[2] + p[3]);
    return h_ab - h_a;
}

/// p_a and S(rho_{B|a}) for a projective pair on A; allocation-free.
/// Returns {p0, S0, p1, S1}.
inline std::array<double, 4> conditional_b_entropies(const DensityMatrix& rho, double ta, double pa) {
    const cplx ea = std::polar(1.0, pa);
    const std::array<std::array<cplx, 2>, 2> ka{{{std::cos(ta), ea * std::sin(ta)},
                                                 {-std::sin(ta), ea * std::cos(ta)}}};
    std::array<double, 4> out{};
    for (int a = 0; a < 2; ++a) {
        cplx rb[2][2] = {};
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) {
                cplx s = 0.0;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        s += std::conj(ka[a][i]) * ka[a][j] * rho.mat(i * 2 + k, j * 2 + l);
                rb[k][l] = s;
            }
        const double p = std::real(rb[0][0]) + std::real(rb[1][1]);
        out[2 * a] = p;
        if (p < 1e-12) continue;  // zero-probability branch carries no entropy
        const double d = 0.5 * (std::real(rb[0][0]) - std::real(rb[1][1])) / p;
        const double disc = std::sqrt(d * d + std::norm(rb[0][1]) / (p * p));
        out[2 * a + 1] = plog2p(0.5 + disc) + plog2p(0.5 - disc);
    }
    return out;
}

inline double avg_conditional_b_entropy(const DensityMatrix& rho, const std::vector<double>& ang) {
    const auto c = conditional_b_entropies(rho, ang[0], ang[1]);
    return c[0] * c[1] + c[2] * c[3];
}

inline double outcome_entropy_plus_conditional(const DensityMatrix& rho,
                                               const std::vector<double>& ang) {
    const auto c = conditional_b_entropies(rho, ang[0], ang[1]);
    return plog2p(c[0]) + plog2p(c[2]) + c[0] * c[1] + c[2] * c[3];
}

}  // namespace detail

/// Optimized measure value with the optimal measurement angles
/// (theta_A, phi_A[, theta_B, phi_B]).
struct MeasureValue {
    double bits = 0.0;
    std::vector<double> angles;
};

struct MidResult {
    double bits = 0.0;
    bool degenerate_a = false;
    bool degenerate_b = false;
    std::vector<double> angles;  // nonempty only when a degenerate branch was optimized
};

/// Measurement-induced disturbance: S(A:B) - H(A:B) with both marginals
/// measured in their eigenbases. A marginal with an eigenvalue gap below
/// 1e-9 triggers a maximization of H(A:B) over that subsystem's projective
/// bases (qubit subsystems only).
inline MidResult mid(const DensityMatrix& rho, const OptimConfig& cfg = {}) {
    const QuantumInfoTable qt = quantum_info_table(rho);
    auto [povm_a, deg_a] = marginal_eigenbasis_povm(partial_trace(rho, Subsystem::A));
    auto [povm_b, deg_b] = marginal_eigenbasis_povm(partial_trace(rho, Subsystem::B));

    MidResult res;
    res.degenerate_a = deg_a;
    res.degenerate_b = deg_b;

    const bool opt_a = deg_a && rho.d_a == 2;
    const bool opt_b = deg_b && rho.d_b == 2;
    double h_mutual;
    if (opt_a && opt_b) {
        const OptimResult r = optimize_angles(
            [&](const std::vector<double>& ang) { return detail::pair_mutual(rho, ang); }, 4,
            OptimSense::Maximize, cfg);
        h_mutual = r.best_value;
        res.angles = r.best_angles;
    } else if (opt_a || opt_b) {
        const OptimResult r = optimize_angles(
            [&](const std::vector<double>& ang) {
                const RankOnePovm pair = projective_pair_povm({ang[0], ang[1]});
                const JointDistribution jd =
                    opt_a ? joint_distribution_unconditioned(rho, pair, povm_b)
                          : joint_distribution_unconditioned(rho, povm_a, pair);
                return classical_info_table(jd).mutual;
            },
            2, OptimSense::Maximize, cfg);
        h_mutual = r.best_value;
        res.angles = r.best_angles;
    } else {
        h_mutual = classical_info_table(joint_distribution_unconditioned(rho, povm_a, povm_b)).mutual;
    }
    res.bits = qt.mutual - h_mutual;
    return res;
}

/// S(A:B) minus the classical mutual information maximized over unconditioned
/// projective pairs (strategy (b)).
inline MeasureValue wpm(const DensityMatrix& rho, const OptimConfig& cfg = {}) {
    detail::require_two_qubits(rho);
    const QuantumInfoTable qt = quantum_info_table(rho);
    const OptimResult r = optimize_angles(
        [&](const std::vector<double>& ang) { return detail::pair_mutual(rho, ang); }, 4,
        OptimSense::Maximize, cfg);
    return {qt.mutual - r.best_value, r.best_angles};
}

/// min H(B|A) - S(B|A) over unconditioned projective pairs.
inline MeasureValue m2b(const DensityMatrix& rho, Direction dir, const OptimConfig& cfg = {}) {
    detail::require_two_qubits(rho);
    const DensityMatrix sigma = dir == Direction::AtoB ? rho : swap_subsystems(rho);
    const QuantumInfoTable qt = quantum_info_table(sigma);
    const OptimResult r = optimize_angles(
        [&](const std::vector<double>& ang) { return detail::pair_cond_entropy_b_given_a(sigma, ang); },
        4, OptimSense::Minimize, cfg);
    return {r.best_value - qt.s_b_given_a, r.best_angles};
}

/// min H(A,B) - S(A,B) over unconditioned projective pairs; symmetric in A, B.
inline MeasureValue m3b(const DensityMatrix& rho, const OptimConfig& cfg = {}) {
    detail::require_two_qubits(rho);
    const double s_ab = von_neumann_entropy(rho.mat);
    const OptimResult r = optimize_angles(
        [&](const std::vector<double>& ang) { return detail::pair_joint_entropy(rho, ang); }, 4,
        OptimSense::Minimize, cfg);
    return {r.best_value - s_ab, r.best_angles};
}

/// Quantum discord D(A->B): min over A-measurements of sum_a p_a S(rho_{B|a}),
/// minus S(B|A). The conditioned B measurement is optimal in the eigenbasis of
/// rho_{B|a}, which is what the conditional-entropy objective realizes.
inline MeasureValue discord(const DensityMatrix& rho, Direction dir, const OptimConfig& cfg = {}) {
    detail::require_two_qubits(rho);
    const DensityMatrix sigma = dir == Direction::AtoB ? rho : swap_subsystems(rho);
    const QuantumInfoTable qt = quantum_info_table(sigma);
    const OptimResult r = optimize_angles(
        [&](const std::vector<double>& ang) { return detail::avg_conditional_b_entropy(sigma, ang); },
        2, OptimSense::Minimize, cfg);
    return {r.best_value - qt.s_b_given_a, r.best_angles};
}

/// Demon discord M3c: min over A-measurements of H(A) + sum_a p_a S(rho_{B|a}),
/// minus S(A,B).
inline MeasureValue demon_discord(const DensityMatrix& rho, Direction dir,
                                  const OptimConfig& cfg = {}) {
    detail::require_two_qubits(rho);
    const DensityMatrix sigma = dir == Direction::AtoB ? rho : swap_subsystems(rho);
    const double s_ab = von_neumann_entropy(sigma.mat);
    const OptimResult r = optimize_angles(
        [&](const std::vector<double>& ang) {
            return detail::outcome_entropy_plus_conditional(sigma, ang);
        },
        2, OptimSense::Minimize, cfg);
    return {r.best_value - s_ab, r.best_angles};
}

/// Which measures a report should compute; mutual information always is.
struct MeasureSelection {
    bool mid = true;
    bool wpm = true;
    bool m2b_ab = true, m2b_ba = true;
    bool discord_ab = true, discord_ba = true;
    bool m3b = true;
    bool dd_ab = true, dd_ba = true;

    static MeasureSelection none() {
        MeasureSelection s;
        s.mid = s.wpm = s.m2b_ab = s.m2b_ba = s.discord_ab = s.discord_ba = false;
        s.m3b = s.dd_ab = s.dd_ba = false;
        return s;
    }

    /// Comma-separated column names; group names m2b/discord/dd select both
    /// directions, "all" selects everything.
    static MeasureSelection parse(const std::string& csv) {
        if (csv.empty() || csv == "all") return MeasureSelection{};
        MeasureSelection s = none();
        std::size_t pos = 0;
        while (pos <= csv.size()) {
            const std::size_t comma = csv.find(',', pos);
            const std::string tok = csv.substr(pos, comma == std::string::npos ? csv.size() - pos
                                                                               : comma - pos);
            if (tok == "mid") s.mid = true;
            else if (tok == "wpm") s.wpm = true;
            else if (tok == "m2b") s.m2b_ab = s.m2b_ba = true;
            else if (tok == "m2b_ab") s.m2b_ab = true;
            else if (tok == "m2b_ba") s.m2b_ba = true;
            else if (tok == "discord") s.discord_ab = s.discord_ba = true;
            else if (tok == "discord_ab") s.discord_ab = true;
            else if (tok == "discord_ba") s.discord_ba = true;
            else if (tok == "m3b") s.m3b = true;
            else if (tok == "dd") s.dd_ab = s.dd_ba = true;
            else if (tok == "dd_ab") s.dd_ab = true;
            else if (tok == "dd_ba") s.dd_ba = true;
            else if (tok == "mutual_info") { /* always on */ }
            else if (!tok.empty())
                throw Error(ErrorCode::InvalidArgument, "unknown measure: " + tok);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return s;
    }
};

inline constexpr double kOrderingSlack = 1e-4;  // optimizer slack for cross-measure inequalities

/// All measure values for one state. Skipped measures are NaN.
struct MeasureReport {
    double mutual_info = 0.0;
    double mid = 0.0, wpm = 0.0;
    double m2b_ab = 0.0, m2b_ba = 0.0;
    double discord_ab = 0.0, discord_ba = 0.0;
    double m3b = 0.0;
    double dd_ab = 0.0, dd_ba = 0.0;

    bool mid_degenerate_a = false, mid_degenerate_b = false;
    std::vector<double> mid_angles, wpm_angles, m2b_ab_angles, m2b_ba_angles, m3b_angles,
        discord_ab_angles, discord_ba_angles, dd_ab_angles, dd_ba_angles;

    std::vector<std::string> ordering_violations;  // names of violated inequalities
};

/// Pairwise ordering checks of the measure array at the given slack.
/// Violations are reported, never clamped.
inline std::vector<std::string> check_ordering(const MeasureReport& r, double slack = kOrderingSlack) {
    std::vector<std::string> bad;
    auto ge = [&](double lhs, double rhs, const char* name) {
        if (std::isnan(lhs) || std::isnan(rhs)) return;
        if (lhs < rhs - slack) bad.emplace_back(name);
    };
    ge(r.mutual_info, r.mid, "mutual_info>=mid");
    ge(r.mid, r.wpm, "mid>=wpm");
    ge(r.mid, r.m2b_ab, "mid>=m2b_ab");
    ge(r.mid, r.m2b_ba, "mid>=m2b_ba");
    ge(r.mid, r.m3b, "mid>=m3b");
    ge(r.m3b, r.m2b_ab, "m3b>=m2b_ab");
    ge(r.m3b, r.m2b_ba, "m3b>=m2b_ba");
    ge(r.m2b_ab, r.wpm, "m2b_ab>=wpm");
    ge(r.m2b_ba, r.wpm, "m2b_ba>=wpm");
    ge(r.m2b_ab, r.discord_ab, "m2b_ab>=discord_ab");
    ge(r.m2b_ba, r.discord_ba, "m2b_ba>=discord_ba");
    ge(r.m3b, r.dd_ab, "m3b>=dd_ab");
    ge(r.m3b, r.dd_ba, "m3b>=dd_ba");
    ge(r.dd_ab, r.discord_ab, "dd_ab>=discord_ab");
    ge(r.dd_ba, r.discord_ba, "dd_ba>=discord_ba");
    ge(r.wpm, r.discord_ab, "wpm>=discord_ab");
    ge(r.wpm, r.discord_ba, "wpm>=discord_ba");
    ge(r.mutual_info, 0.0, "mutual_info>=0");
    ge(r.mid, 0.0, "mid>=0");
    ge(r.wpm, 0.0, "wpm>=0");
    ge(r.m2b_ab, 0.0, "m2b_ab>=0");
    ge(r.m2b_ba, 0.0, "m2b_ba>=0");
    ge(r.discord_ab, 0.0, "discord_ab>=0");
    ge(r.discord_ba, 0.0, "discord_ba>=0");
    ge(r.m3b, 0.0, "m3b>=0");
    ge(r.dd_ab, 0.0, "dd_ab>=0");
    ge(r.dd_ba, 0.0, "dd_ba>=0");
    return bad;
}

inline MeasureReport measure_report(const DensityMatrix& rho, const OptimConfig& cfg = {},
                                    const MeasureSelection& sel = {}) {
    detail::require_two_qubits(rho);
    const double nan = std::nan("");
    MeasureReport rep;
    rep.mutual_info = quantum_mutual_information(rho);

    if (sel.mid) {
        const MidResult m = mid(rho, cfg);
        rep.mid = m.bits;
        rep.mid_degenerate_a = m.degenerate_a;
        rep.mid_degenerate_b = m.degenerate_b;
        rep.mid_angles = m.angles;
    } else
        rep.mid = nan;

    auto run = [&](bool on, auto&& f, double& out, std::vector<double>& angles) {
        if (!on) {
            out = nan;
            return;
        }
        const MeasureValue v = f();
        out = v.bits;
        angles = v.angles;
    };
    run(sel.wpm, [&] { return wpm(rho, cfg); }, rep.wpm, rep.wpm_angles);
    run(sel.m2b_ab, [&] { return m2b(rho, Direction::AtoB, cfg); }, rep.m2b_ab, rep.m2b_ab_angles);
    run(sel.m2b_ba, [&] { return m2b(rho, Direction::BtoA, cfg); }, rep.m2b_ba, rep.m2b_ba_angles);
    run(sel.discord_ab, [&] { return discord(rho, Direction::AtoB, cfg); }, rep.discord_ab,
        rep.discord_ab_angles);
    run(sel.discord_ba, [&] { return discord(rho, Direction::BtoA, cfg); }, rep.discord_ba,
        rep.discord_ba_angles);
    run(sel.m3b, [&] { return m3b(rho, cfg); }, rep.m3b, rep.m3b_angles);
    run(sel.dd_ab, [&] { return demon_discord(rho, Direction::AtoB, cfg); }, rep.dd_ab,
        rep.dd_ab_angles);
    run(sel.dd_ba, [&] { return demon_discord(rho, Direction::BtoA, cfg); }, rep.dd_ba,
        rep.dd_ba_angles);

    rep.ordering_violations = check_ordering(rep);
    return rep;
}

// ---------------------------------------------------------------------------
// Closed-form evaluators for symmetric classical-quantum states.

/// F(m) = sum_j p_j (1 + n_j . m) log2(1 + n_j . m), in bits.
inline double ensemble_F(const CqEnsemble& ens, const Vec3& m) {
    double f = 0.0;
    for (std::size_t j = 0; j < ens.probs.size(); ++j) {
        const double x = 1.0 + dot(ens.bloch_vectors[j], m);
        if (x > kProbZero) f += ens.probs[j] * x * std::log2(x);
    }
    return f;
}

/// POVM dual to the ensemble: axes -n_j with q_a = p_a.
inline RankOnePovm dual_povm(const CqEnsemble& ens) {
    std::vector<Vec3> axes;
    for (const auto& n : ens.bloch_vectors) axes.push_back(-n);
    return povm_from_bloch_weights(axes, ens.probs);
}

namespace detail {
inline void require_symmetric(const CqEnsemble& ens) {
    ens.validate();
    if (norm(ens.mean_bloch()) > 1e-9)
        throw Error(ErrorCode::InvalidArgument,
                    "ensemble is not symmetric (sum p_j n_j != 0); rho_A != I/2");
}
}  // namespace detail

/// Common value of WPM and discord(A->B) for the cq state of a symmetric
/// ensemble, evaluated on an explicit measurement POVM: 1 - sum_a q_a F(m_a).
inline double cq_discord_closed_form(const CqEnsemble& ens, const RankOnePovm& meas) {
    detail::require_symmetric(ens);
    if (meas.dim != 2) throw Error(ErrorCode::DimMismatch, "measurement POVM must act on the qubit");
    Vec3 mean{};
    double value = 1.0;
    for (const auto& el : meas.elements) {
        const double q = el.weight / 2.0;
        const Vec3 m = bloch_of_ket(el.ket);
        mean = mean + q * m;
        value -= q * ensemble_F(ens, m);
    }
    if (norm(mean) > 1e-9)
        throw Error(ErrorCode::InvalidArgument, "POVM axes are not balanced (sum q_a m_a != 0)");
    return value;
}

/// Numeric counterpart: 1 - max_m F(m), searched over the Bloch sphere with
/// the ensemble's axes among the refinement seeds.
inline double cq_discord_sphere(const CqEnsemble& ens, const OptimConfig& cfg = {}) {
    detail::require_symmetric(ens);
    std::vector<Vec3> seeds;
    for (const auto& n : ens.bloch_vectors) {
        seeds.push_back(n);
        seeds.push_back(-n);
    }
    const SphereResult r =
        maximize_over_sphere([&](const Vec3& m) { return ensemble_F(ens, m); }, cfg, seeds);
    return 1.0 - r.best_value;
}

/// Best classical information H(A:J) attainable with a projective pair:
/// max_m (F(m) + F(-m))/2.
inline SphereResult cq_projective_classical_info(const CqEnsemble& ens, const OptimConfig& cfg = {}) {
    detail::require_symmetric(ens);
    std::vector<Vec3> seeds;
    for (const auto& n : ens.bloch_vectors) {
        seeds.push_back(n);
        seeds.push_back(-n);
    }
    return maximize_over_sphere(
        [&](const Vec3& m) { return 0.5 * (ensemble_F(ens, m) + ensemble_F(ens, -m)); }, cfg, seeds);
}

struct CqDemonDiscord {
    double value;                 // min of the two candidates
    double dual_candidate;        // H(p) - sum_a p_a F(-n_a), the dual-POVM argument
    double projective_candidate;  // 1 - max_m (F(m)+F(-m))/2
    Vec3 projective_axis;
};

/// Demon discord of a symmetric cq state: the H(q_a) term prejudices the
/// minimum toward few outcomes, so the candidates are the dual symmetric POVM
/// and the best orthogonal pair.
inline CqDemonDiscord cq_demon_discord_projective(const CqEnsemble& ens, const OptimConfig& cfg = {}) {
    detail::require_symmetric(ens);
    double dual = shannon_entropy(ens.probs);
    for (std::size_t a = 0; a < ens.probs.size(); ++a)
        dual -= ens.probs[a] * ensemble_F(ens, -ens.bloch_vectors[a]);
    const SphereResult proj = cq_projective_classical_info(ens, cfg);
    CqDemonDiscord out;
    out.dual_candidate = dual;
    out.projective_candidate = 1.0 - proj.best_value;
    out.projective_axis = proj.best_direction;
    out.value = std::min(out.dual_candidate, out.projective_candidate);
    return out;
}

}  // namespace qcorr
