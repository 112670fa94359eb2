// Local measurement machinery: rank-one POVMs, qubit projective pairs,
// conditioned measurement strategies and their outcome distributions.
#pragma once

#include <utility>
#include <vector>

#include "qcorr/density.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/geometry.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

/// POVM whose elements are E_a = mu_a |m_a><m_a| with unit kets.
/// Completeness forces sum_a E_a = I and sum_a mu_a = dim.
struct RankOnePovm {
    int dim = 0;
    struct Element {
        double weight;  // mu in (0, 1]
        Ket ket;        // unit vector
    };
    std::vector<Element> elements;

    int size() const noexcept { return static_cast<int>(elements.size()); }

    CMatrix element_matrix(int a) const {
        CMatrix e = outer(elements[a].ket);
        e *= cplx(elements[a].weight, 0.0);
        return e;
    }

    void validate(double tol = 1e-9) const {
        CMatrix sum(dim);
        double mu_total = 0.0;
        for (const auto& el : elements) {
            if (!(el.weight > 0.0 && el.weight <= 1.0 + tol))
                throw Error(ErrorCode::InvalidArgument,
                            "POVM weight out of (0,1]: " + std::to_string(el.weight));
            if (static_cast<int>(el.ket.size()) != dim)
                throw Error(ErrorCode::DimMismatch, "POVM ket dimension mismatch");
            CMatrix p = outer(el.ket);
            p *= cplx(el.weight, 0.0);
            sum += p;
            mu_total += el.weight;
        }
        if (sum.max_abs_diff(CMatrix::identity(dim)) > tol)
            throw Error(ErrorCode::InvalidArgument, "POVM completeness violated");
        if (std::abs(mu_total - dim) > tol)
            throw Error(ErrorCode::InvalidArgument, "POVM weights do not sum to dim");
    }
};

/// Orthogonal qubit pair |e0> = cos(t)|0> + e^{i p} sin(t)|1>,
/// |e1> = -sin(t)|0> + e^{i p} cos(t)|1>.
struct QubitProjectivePair {
    double theta = 0.0;  // [0, pi/2]
    double phi = 0.0;    // [0, 2 pi)
};

/// Bloch vector of the first projector of the pair.
inline Vec3 projective_pair_axis(const QubitProjectivePair& ang) {
    return {std::sin(2 * ang.theta) * std::cos(ang.phi), std::sin(2 * ang.theta) * std::sin(ang.phi),
            std::cos(2 * ang.theta)};
}

inline RankOnePovm projective_pair_povm(const QubitProjectivePair& ang) {
    const double c = std::cos(ang.theta), s = std::sin(ang.theta);
    const cplx e = std::polar(1.0, ang.phi);
    RankOnePovm povm;
    povm.dim = 2;
    povm.elements = {{1.0, Ket{c, e * s}}, {1.0, Ket{-s, e * c}}};
    return povm;
}

/// Projectors onto the eigenbasis of a marginal density operator.
/// The flag reports an eigenvalue gap below `degeneracy_tol` (basis not unique).
inline std::pair<RankOnePovm, bool> marginal_eigenbasis_povm(const CMatrix& rho_marg,
                                                             double degeneracy_tol = 1e-9) {
    const EigResult e = hermitian_eig(rho_marg);
    RankOnePovm povm;
    povm.dim = rho_marg.dim();
    bool degenerate = false;
    for (int k = 0; k < rho_marg.dim(); ++k) {
        povm.elements.push_back({1.0, eig_column(e, k)});
        if (k > 0 && e.eigenvalues[k - 1] - e.eigenvalues[k] < degeneracy_tol) degenerate = true;
    }
    return {std::move(povm), degenerate};
}

/// p_{ab} = tr(E_a (x) F_b rho).
inline JointDistribution joint_distribution_unconditioned(const DensityMatrix& rho,
                                                          const RankOnePovm& e,
                                                          const RankOnePovm& f) {
    if (e.dim != rho.d_a || f.dim != rho.d_b)
        throw Error(ErrorCode::DimMismatch, "POVM dims do not match state dims");
    JointDistribution jd(e.size(), f.size());
    for (int a = 0; a < e.size(); ++a)
        for (int b = 0; b < f.size(); ++b) {
            const Ket v = tensor_product(e.elements[a].ket, f.elements[b].ket);
            jd(a, b) = e.elements[a].weight * f.elements[b].weight * expectation(rho.mat, v);
        }
    jd.validate();
    return jd;
}

/// Conditional state of B given outcome a on A, with its probability.
struct ConditionalStateB {
    double p_a;
    CMatrix rho_b;  // normalized
};

/// rho_{B|a} = tr_A(E_a rho) / p_a. Outcomes with p_a < 1e-12 are dropped.
inline std::vector<ConditionalStateB> conditional_states_B(const DensityMatrix& rho,
                                                           const RankOnePovm& e) {
    if (e.dim != rho.d_a) throw Error(ErrorCode::DimMismatch, "POVM dim does not match d_a");
    const int da = rho.d_a, db = rho.d_b;
    std::vector<ConditionalStateB> out;
    for (int a = 0; a < e.size(); ++a) {
        const Ket& m = e.elements[a].ket;
        const double mu = e.elements[a].weight;
        CMatrix rb(db);
        for (int k = 0; k < db; ++k)
            for (int l = 0; l < db; ++l) {
                cplx s = 0.0;
                for (int i = 0; i < da; ++i)
                    for (int j = 0; j < da; ++j)
                        s += std::conj(m[i]) * m[j] * rho.mat(i * db + k, j * db + l);
                rb(k, l) = mu * s;
            }
        const double pa = std::real(rb.trace());
        if (pa < 1e-12) continue;
        rb *= cplx(1.0 / pa, 0.0);
        out.push_back({pa, std::move(rb)});
    }
    return out;
}

/// Strategy (c): A's outcome a selects, through the label c(a), which POVM
/// is measured on B. A single label reproduces the unconditioned strategy.
struct ConditionedStrategy {
    RankOnePovm a_povm;
    std::vector<int> label_of_a;       // one label per A outcome, in [0, b_povms.size())
    std::vector<RankOnePovm> b_povms;  // one POVM per label

    void validate() const {
        a_povm.validate();
        if (label_of_a.size() != a_povm.elements.size())
            throw Error(ErrorCode::InvalidArgument, "label map size does not match A outcomes");
        for (int c : label_of_a)
            if (c < 0 || c >= static_cast<int>(b_povms.size()))
                throw Error(ErrorCode::InvalidArgument, "label maps to a missing B measurement");
        for (const auto& f : b_povms) f.validate();
    }
};

/// Joint distribution for strategy (c). The B-outcome alphabet is the disjoint
/// union over labels; p_{ab} = 0 whenever b is not in the block of c(a).
inline JointDistribution joint_distribution_conditioned(const DensityMatrix& rho,
                                                        const ConditionedStrategy& s) {
    if (s.a_povm.dim != rho.d_a) throw Error(ErrorCode::DimMismatch, "A POVM dim mismatch");
    std::vector<int> offset(s.b_povms.size() + 1, 0);
    for (std::size_t c = 0; c < s.b_povms.size(); ++c) {
        if (s.b_povms[c].dim != rho.d_b) throw Error(ErrorCode::DimMismatch, "B POVM dim mismatch");
        offset[c + 1] = offset[c] + s.b_povms[c].size();
    }

    JointDistribution jd(s.a_povm.size(), offset.back());
    const int da = rho.d_a, db = rho.d_b;
    for (int a = 0; a < s.a_povm.size(); ++a) {
        const Ket& m = s.a_povm.elements[a].ket;
        const double mu = s.a_povm.elements[a].weight;
        CMatrix rb(db);
        for (int k = 0; k < db; ++k)
            for (int l = 0; l < db; ++l) {
                cplx acc = 0.0;
                for (int i = 0; i < da; ++i)
                    for (int j = 0; j < da; ++j)
                        acc += std::conj(m[i]) * m[j] * rho.mat(i * db + k, j * db + l);
                rb(k, l) = mu * acc;
            }
        const double pa = std::real(rb.trace());
        if (pa < 1e-12) continue;  // zero-probability branch
        const int c = s.label_of_a[a];
        const auto& f = s.b_povms[c];
        for (int b = 0; b < f.size(); ++b)
            jd(a, offset[c] + b) = f.elements[b].weight * expectation(rb, f.elements[b].ket);
    }
    jd.validate();
    return jd;
}

/// POVM with qubit elements E_a = q_a (I + m_a . sigma); needs sum q_a = 1 and
/// sum q_a m_a = 0 for completeness.
inline RankOnePovm povm_from_bloch_weights(const std::vector<Vec3>& axes,
                                           const std::vector<double>& q) {
    if (axes.size() != q.size()) throw Error(ErrorCode::DimMismatch, "axes/weights size mismatch");
    RankOnePovm povm;
    povm.dim = 2;
    for (std::size_t a = 0; a < axes.size(); ++a) {
        const Vec3& m = axes[a];
        const double alpha = std::acos(std::clamp(m[2], -1.0, 1.0));
        const double beta = std::atan2(m[1], m[0]);
        const Ket ket{std::cos(alpha / 2), std::polar(std::sin(alpha / 2), beta)};
        povm.elements.push_back({2.0 * q[a], ket});
    }
    povm.validate();
    return povm;
}

enum class SymmetricPovmKind { Trine, Tetrahedron };

inline std::vector<Vec3> symmetric_bloch_vertices(SymmetricPovmKind kind) {
    const double s3 = std::sqrt(3.0);
    if (kind == SymmetricPovmKind::Trine)
        return {{0, 0, 1}, {s3 / 2, 0, -0.5}, {-s3 / 2, 0, -0.5}};
    const double r = 2.0 * std::sqrt(2.0) / 3.0;
    return {{0, 0, 1},
            {r, 0, -1.0 / 3.0},
            {-r / 2, std::sqrt(2.0 / 3.0), -1.0 / 3.0},
            {-r / 2, -std::sqrt(2.0 / 3.0), -1.0 / 3.0}};
}

/// Trine (3 outcomes, mu = 2/3) or tetrahedron (4 outcomes, mu = 1/2) qubit POVM,
/// optionally rotated.
inline RankOnePovm symmetric_qubit_povm(SymmetricPovmKind kind, const Mat3& orientation = identity3()) {
    std::vector<Vec3> axes = symmetric_bloch_vertices(kind);
    for (auto& m : axes) m = mat_vec(orientation, m);
    return povm_from_bloch_weights(axes, std::vector<double>(axes.size(), 1.0 / axes.size()));
}

/// Bloch vector of a qubit ket.
inline Vec3 bloch_of_ket(const Ket& v) {
    if (v.size() != 2) throw Error(ErrorCode::DimMismatch, "bloch_of_ket needs a qubit ket");
    const cplx c = std::conj(v[0]) * v[1];
    return {2.0 * std::real(c), 2.0 * std::imag(c), std::norm(v[0]) - std::norm(v[1])};
}

/// Split general POVM elements into rank-one pieces via their eigendecompositions.
/// Returns the pieces and, per piece, the index of the coarse element it refines.
inline std::pair<RankOnePovm, std::vector<int>> fine_grain_rank_one(
    const std::vector<CMatrix>& elements) {
    if (elements.empty()) throw Error(ErrorCode::InvalidArgument, "empty POVM");
    RankOnePovm povm;
    povm.dim = elements.front().dim();
    std::vector<int> parent;
    for (std::size_t a = 0; a < elements.size(); ++a) {
        const EigResult e = hermitian_eig(elements[a]);
        for (int k = 0; k < elements[a].dim(); ++k) {
            if (e.eigenvalues[k] < 1e-12) continue;
            povm.elements.push_back({e.eigenvalues[k], eig_column(e, k)});
            parent.push_back(static_cast<int>(a));
        }
    }
    return {std::move(povm), std::move(parent)};
}

/// p_{ab} for general (possibly coarse) POVM elements on both sides.
inline JointDistribution joint_distribution_general(const DensityMatrix& rho,
                                                    const std::vector<CMatrix>& e,
                                                    const std::vector<CMatrix>& f) {
    JointDistribution jd(static_cast<int>(e.size()), static_cast<int>(f.size()));
    for (std::size_t a = 0; a < e.size(); ++a)
        for (std::size_t b = 0; b < f.size(); ++b) {
            const CMatrix op = tensor_product(e[a], f[b]) * rho.mat;
            jd(static_cast<int>(a), static_cast<int>(b)) = std::real(op.trace());
        }
    jd.validate();
    return jd;
}

}  // namespace qcorr
