// State factories: random densities (Hilbert-Schmidt ensemble), Bell states,
// two-qubit Pauli/Bloch decomposition, classical-quantum ensembles, and the
// product/Bell-diagonal mixture family used for the alignment sweep.
#pragma once

#include <string>
#include <vector>

#include "qcorr/density.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/geometry.hpp"
#include "qcorr/matrix.hpp"
#include "qcorr/random.hpp"

namespace qcorr {

inline const CMatrix& pauli(int j) {  // 0 -> I, 1..3 -> x,y,z
    static const std::vector<CMatrix> sigma = [] {
        std::vector<CMatrix> s(4, CMatrix(2));
        s[0] = CMatrix::identity(2);
        s[1](0, 1) = 1.0;
        s[1](1, 0) = 1.0;
        s[2](0, 1) = cplx(0.0, -1.0);
        s[2](1, 0) = cplx(0.0, 1.0);
        s[3](0, 0) = 1.0;
        s[3](1, 1) = -1.0;
        return s;
    }();
    return sigma[j];
}

/// Pure qubit state (I + n . sigma)/2; |n| may be < 1 for mixed states.
inline CMatrix qubit_from_bloch(const Vec3& n) {
    CMatrix rho = CMatrix::identity(2);
    for (int j = 0; j < 3; ++j) rho += cplx(n[j], 0.0) * pauli(j + 1);
    rho *= cplx(0.5, 0.0);
    return rho;
}

/// rho = G G^dagger / tr(G G^dagger) with G a (d_a d_b) x rank complex Ginibre
/// matrix; rank = d_a d_b samples the Hilbert-Schmidt measure.
inline DensityMatrix random_density(int d_a, int d_b, int rank, Rng& rng) {
    const int n = d_a * d_b;
    if (rank < 1 || rank > n) throw Error(ErrorCode::InvalidArgument, "rank must be in [1, d_a*d_b]");
    std::vector<Ket> cols(rank);
    for (auto& c : cols) {
        c.resize(n);
        for (auto& x : c) x = rng.complex_gaussian();
    }
    CMatrix g(n);
    for (const auto& c : cols) g += outer(c);
    g *= cplx(1.0 / std::real(g.trace()), 0.0);
    return validate_density_matrix(g, d_a, d_b);
}

inline DensityMatrix random_density(int d_a, int d_b, int rank, std::uint64_t seed) {
    Rng rng(seed);
    return random_density(d_a, d_b, rank, rng);
}

inline DensityMatrix random_pure(int d_a, int d_b, Rng& rng) {
    return random_density(d_a, d_b, 1, rng);
}

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline DensityMatrix bell_state(BellKind kind) {
    const double r = 1.0 / std::sqrt(2.0);
    Ket v(4, 0.0);
    switch (kind) {
        case BellKind::PhiPlus: v[0] = r; v[3] = r; break;
        case BellKind::PhiMinus: v[0] = r; v[3] = -r; break;
        case BellKind::PsiPlus: v[1] = r; v[2] = r; break;
        case BellKind::PsiMinus: v[1] = r; v[2] = -r; break;
    }
    return validate_density_matrix(outer(v), 2, 2);
}

/// Two-qubit Pauli decomposition rho = (I + a.sigma x I + I x b.sigma
/// + sum_jk c_jk sigma_j x sigma_k) / 4.
struct BlochForm {
    Vec3 a{};
    Vec3 b{};
    Mat3 c{};
};

inline DensityMatrix from_bloch(const BlochForm& bf) {
    CMatrix m = tensor_product(CMatrix::identity(2), CMatrix::identity(2));
    for (int j = 0; j < 3; ++j) {
        m += cplx(bf.a[j], 0.0) * tensor_product(pauli(j + 1), pauli(0));
        m += cplx(bf.b[j], 0.0) * tensor_product(pauli(0), pauli(j + 1));
        for (int k = 0; k < 3; ++k)
            m += cplx(bf.c[j][k], 0.0) * tensor_product(pauli(j + 1), pauli(k + 1));
    }
    m *= cplx(0.25, 0.0);
    return validate_density_matrix(m, 2, 2);  // PSD is not guaranteed by arbitrary (a,b,c)
}

inline BlochForm to_bloch(const DensityMatrix& rho) {
    if (rho.d_a != 2 || rho.d_b != 2)
        throw Error(ErrorCode::DimMismatch, "Bloch form requires a two-qubit state");
    BlochForm bf;
    auto trace_with = [&](const CMatrix& op) {
        const CMatrix prod = op * rho.mat;
        return std::real(prod.trace());
    };
    for (int j = 0; j < 3; ++j) {
        bf.a[j] = trace_with(tensor_product(pauli(j + 1), pauli(0)));
        bf.b[j] = trace_with(tensor_product(pauli(0), pauli(j + 1)));
        for (int k = 0; k < 3; ++k) bf.c[j][k] = trace_with(tensor_product(pauli(j + 1), pauli(k + 1)));
    }
    return bf;
}

/// One-parameter family (1-mix) * pure product + mix * Bell-diagonal, with
/// a = (1,0,0), b = (1/sqrt2, -1/2, 1/2) and c = diag(-0.9, -0.8, -0.7).
inline DensityMatrix product_belldiag_mixture(double mix) {
    if (!(mix >= 0.0 && mix <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "mixture parameter must be in [0,1]");
    const Vec3 a{1.0, 0.0, 0.0};
    const Vec3 b{1.0 / std::sqrt(2.0), -0.5, 0.5};
    const CMatrix prod = tensor_product(qubit_from_bloch(a), qubit_from_bloch(b));
    BlochForm bd;
    bd.c = {{{-0.9, 0, 0}, {0, -0.8, 0}, {0, 0, -0.7}}};
    const CMatrix bell_diag = from_bloch(bd).mat;
    CMatrix m = prod;
    m *= cplx(1.0 - mix, 0.0);
    CMatrix t = bell_diag;
    t *= cplx(mix, 0.0);
    m += t;
    return validate_density_matrix(m, 2, 2);
}

/// Qubit ensemble {p_j, n_j} defining the cq state sum_j p_j rho_j x |e_j><e_j|.
struct CqEnsemble {
    std::vector<double> probs;
    std::vector<Vec3> bloch_vectors;  // unit vectors

    int d_b() const noexcept { return static_cast<int>(probs.size()); }

    void validate() const {
        validate_probabilities(probs);
        if (probs.size() != bloch_vectors.size())
            throw Error(ErrorCode::DimMismatch, "ensemble probs/vectors size mismatch");
        for (const auto& n : bloch_vectors)
            if (std::abs(norm(n) - 1.0) > 1e-9)
                throw Error(ErrorCode::InvalidArgument, "ensemble Bloch vector is not unit");
    }

    Vec3 mean_bloch() const {
        Vec3 m{};
        for (std::size_t j = 0; j < probs.size(); ++j) m = m + probs[j] * bloch_vectors[j];
        return m;
    }
};

inline DensityMatrix cq_state(const CqEnsemble& ens) {
    ens.validate();
    const int db = ens.d_b();
    CMatrix m(2 * db);
    for (int j = 0; j < db; ++j) {
        const CMatrix rho_j = qubit_from_bloch(ens.bloch_vectors[j]);
        for (int i = 0; i < 2; ++i)
            for (int i2 = 0; i2 < 2; ++i2) m(i * db + j, i2 * db + j) = ens.probs[j] * rho_j(i, i2);
    }
    return validate_density_matrix(m, 2, db);
}

inline CqEnsemble triangle_ensemble() {
    CqEnsemble ens;
    ens.probs = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    const double s3 = std::sqrt(3.0);
    ens.bloch_vectors = {{0, 0, 1}, {s3 / 2, 0, -0.5}, {-s3 / 2, 0, -0.5}};
    return ens;
}

inline CqEnsemble tetrahedron_ensemble() {
    CqEnsemble ens;
    ens.probs = {0.25, 0.25, 0.25, 0.25};
    const double r = 2.0 * std::sqrt(2.0) / 3.0;
    ens.bloch_vectors = {{0, 0, 1},
                         {r, 0, -1.0 / 3.0},
                         {-r / 2, std::sqrt(2.0 / 3.0), -1.0 / 3.0},
                         {-r / 2, -std::sqrt(2.0 / 3.0), -1.0 / 3.0}};
    return ens;
}

/// Random state diagonal in a random product basis (local unitaries applied to
/// a random diagonal) — the zero set of the strategy-(a)/(b) measures.
inline DensityMatrix random_product_basis_diagonal(int d_a, int d_b, Rng& rng) {
    const CMatrix ua = random_unitary(d_a, rng);
    const CMatrix ub = random_unitary(d_b, rng);
    const CMatrix u = tensor_product(ua, ub);
    const std::vector<double> lam = random_simplex(d_a * d_b, rng);
    CMatrix d(d_a * d_b);
    for (int i = 0; i < d_a * d_b; ++i) d(i, i) = lam[i];
    return validate_density_matrix(u * d * u.adjoint(), d_a, d_b);
}

/// Random two-qubit cq state sum_j p_j rho_j x |e_j><e_j| (classical side B):
/// zero discord and zero demon discord conditioning on B. Bloch radii are kept
/// in [0.5, 1], p in [0.2, 0.8], and the two ensemble directions are resampled
/// until |n0.n1| <= 0.9 so the strategy-(b) measures stay generically nonzero.
inline DensityMatrix random_cq_two_qubit(Rng& rng) {
    Vec3 n0{}, n1{};
    do {
        n0 = sphere_point(std::acos(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 2 * kPi));
        n1 = sphere_point(std::acos(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 2 * kPi));
    } while (std::abs(dot(n0, n1)) > 0.9);
    const double r0 = rng.uniform(0.5, 1.0), r1 = rng.uniform(0.5, 1.0);
    const double p = rng.uniform(0.2, 0.8);
    const CMatrix ub = random_unitary(2, rng);

    CMatrix m(4);
    const CMatrix rho0 = qubit_from_bloch(r0 * n0);
    const CMatrix rho1 = qubit_from_bloch(r1 * n1);
    Ket e0{ub(0, 0), ub(1, 0)}, e1{ub(0, 1), ub(1, 1)};
    const CMatrix p0 = outer(e0), p1 = outer(e1);
    CMatrix t0 = tensor_product(rho0, p0);
    t0 *= cplx(p, 0.0);
    CMatrix t1 = tensor_product(rho1, p1);
    t1 *= cplx(1.0 - p, 0.0);
    m = t0 + t1;
    return validate_density_matrix(m, 2, 2);
}

}  // namespace qcorr
