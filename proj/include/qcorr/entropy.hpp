// Quantum and classical entropic quantities, in bits. 0 log 0 = 0 throughout.
#pragma once

#include <vector>

#include "qcorr/density.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

inline constexpr double kProbZero = 1e-14;    // probabilities below this count as zero
inline constexpr double kSupportTol = 1e-10;  // support check for relative entropies

namespace detail {
inline double plog2p(double p) { return p > kProbZero ? -p * std::log2(p) : 0.0; }
}  // namespace detail

/// Entries must lie in [0,1] and sum to 1 within 1e-9.
inline void validate_probabilities(const std::vector<double>& probs) {
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= -1e-12 && p <= 1.0 + 1e-12))
            throw Error(ErrorCode::InvalidProbability, "probability out of [0,1]: " + std::to_string(p));
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw Error(ErrorCode::InvalidProbability, "probabilities sum to " + std::to_string(sum));
}

struct ProbVector {
    std::vector<double> probs;

    explicit ProbVector(std::vector<double> p) : probs(std::move(p)) { validate_probabilities(probs); }
};

inline double shannon_entropy(const ProbVector& p) {
    double h = 0.0;
    for (double x : p.probs) h += detail::plog2p(x);
    return h;
}

inline double shannon_entropy(const std::vector<double>& probs) {
    return shannon_entropy(ProbVector(probs));
}

inline double binary_entropy(double x) { return detail::plog2p(x) + detail::plog2p(1.0 - x); }

/// Spectrum of a density operator. Tiny negatives (eigensolver noise) count as zero.
inline std::vector<double> density_spectrum(const CMatrix& rho) {
    EigResult e = hermitian_eig(rho);
    for (double& lam : e.eigenvalues) {
        if (lam < -1e-9)
            throw Error(ErrorCode::NegativeEigenvalue,
                        "spectrum has eigenvalue " + std::to_string(lam));
        if (lam < 0.0) lam = 0.0;
    }
    return e.eigenvalues;
}

inline double von_neumann_entropy(const CMatrix& rho) {
    if (rho.dim() == 2) {
        // closed-form qubit spectrum; this sits in every optimizer inner loop
        const double t = std::real(rho.trace());
        const double d = 0.5 * (std::real(rho(0, 0)) - std::real(rho(1, 1)));
        const double disc = std::sqrt(d * d + std::norm(rho(0, 1)));
        return detail::plog2p(0.5 * t + disc) + detail::plog2p(0.5 * t - disc);
    }
    double h = 0.0;
    for (double lam : density_spectrum(rho)) h += detail::plog2p(lam);
    return h;
}

inline double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.mat); }

/// Joint outcome table p_{ab}; rows index A outcomes, columns index B outcomes.
class JointDistribution {
public:
    JointDistribution(int n_a, int n_b)
        : n_a_(n_a), n_b_(n_b), p_(static_cast<std::size_t>(n_a) * n_b, 0.0) {
        if (n_a <= 0 || n_b <= 0) throw Error(ErrorCode::InvalidArgument, "empty outcome alphabet");
    }

    int n_a() const noexcept { return n_a_; }
    int n_b() const noexcept { return n_b_; }

    double& operator()(int a, int b) { return p_[static_cast<std::size_t>(a) * n_b_ + b]; }
    double operator()(int a, int b) const { return p_[static_cast<std::size_t>(a) * n_b_ + b]; }

    /// Clamp tiny numerical negatives, check normalization.
    void validate() {
        double sum = 0.0;
        for (double& x : p_) {
            if (x < 0.0) {
                if (x < -1e-12)
                    throw Error(ErrorCode::InvalidProbability,
                                "negative joint probability " + std::to_string(x));
                x = 0.0;
            }
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw Error(ErrorCode::InvalidProbability, "joint distribution sums to " + std::to_string(sum));
    }

    std::vector<double> marginal_a() const {
        std::vector<double> m(n_a_, 0.0);
        for (int a = 0; a < n_a_; ++a)
            for (int b = 0; b < n_b_; ++b) m[a] += (*this)(a, b);
        return m;
    }

    std::vector<double> marginal_b() const {
        std::vector<double> m(n_b_, 0.0);
        for (int a = 0; a < n_a_; ++a)
            for (int b = 0; b < n_b_; ++b) m[b] += (*this)(a, b);
        return m;
    }

    const std::vector<double>& flat() const noexcept { return p_; }

private:
    int n_a_, n_b_;
    std::vector<double> p_;
};

struct ClassicalInfoTable {
    double h_a, h_b, h_ab;
    double h_b_given_a, h_a_given_b;
    double mutual;  // H(A:B)
};

inline ClassicalInfoTable classical_info_table(const JointDistribution& p) {
    ClassicalInfoTable t{};
    for (double x : p.flat()) t.h_ab += detail::plog2p(x);
    for (double x : p.marginal_a()) t.h_a += detail::plog2p(x);
    for (double x : p.marginal_b()) t.h_b += detail::plog2p(x);
    t.h_b_given_a = t.h_ab - t.h_a;
    t.h_a_given_b = t.h_ab - t.h_b;
    t.mutual = t.h_a + t.h_b - t.h_ab;
    return t;
}

struct QuantumInfoTable {
    double s_a, s_b, s_ab;
    double s_b_given_a, s_a_given_b;  // may be negative
    double mutual;                    // S(A:B)
};

inline QuantumInfoTable quantum_info_table(const DensityMatrix& rho) {
    QuantumInfoTable t{};
    t.s_ab = von_neumann_entropy(rho.mat);
    t.s_a = von_neumann_entropy(partial_trace(rho, Subsystem::A));
    t.s_b = von_neumann_entropy(partial_trace(rho, Subsystem::B));
    t.s_b_given_a = t.s_ab - t.s_a;
    t.s_a_given_b = t.s_ab - t.s_b;
    t.mutual = t.s_a + t.s_b - t.s_ab;
    return t;
}

/// S(rho||sigma) = -S(rho) - tr(rho log2 sigma). Infinite (SupportViolation)
/// when rho has weight outside the support of sigma.
inline double quantum_relative_entropy(const CMatrix& rho, const CMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw Error(ErrorCode::DimMismatch, "relative entropy dims mismatch");
    const EigResult es = hermitian_eig(sigma);
    double tr_rho_log_sigma = 0.0;
    for (int k = 0; k < sigma.dim(); ++k) {
        const double s = es.eigenvalues[k];
        const double w = expectation(rho, eig_column(es, k));
        if (s <= kSupportTol) {
            if (w > kSupportTol)
                throw Error(ErrorCode::SupportViolation,
                            "support of rho is not contained in support of sigma");
            continue;
        }
        tr_rho_log_sigma += w * std::log2(s);
    }
    return -von_neumann_entropy(rho) - tr_rho_log_sigma;
}

/// H(p||q) = sum_j p_j log2(p_j/q_j) >= 0.
inline double classical_relative_information(const ProbVector& p, const ProbVector& q) {
    if (p.probs.size() != q.probs.size())
        throw Error(ErrorCode::DimMismatch, "relative information alphabet mismatch");
    double h = 0.0;
    for (std::size_t j = 0; j < p.probs.size(); ++j) {
        const double pj = p.probs[j];
        if (pj <= kProbZero) continue;
        if (q.probs[j] <= kSupportTol)
            throw Error(ErrorCode::SupportViolation, "q vanishes where p does not");
        h += pj * std::log2(pj / q.probs[j]);
    }
    return h;
}

}  // namespace qcorr
