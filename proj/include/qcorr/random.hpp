// Seeded generators for states, unitaries and POVMs. Gaussians come from a
// hand-rolled Box-Muller so output streams do not depend on the standard
// library's distribution implementations.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qcorr/geometry.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // [0, 1)
        return (engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * kPi * uniform();
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    cplx complex_gaussian() {
        const double re = gaussian();
        return {re, gaussian()};
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

inline Ket random_ket(int dim, Rng& rng) {
    Ket v(dim);
    for (auto& x : v) x = rng.complex_gaussian();
    return normalized(std::move(v));
}

/// Haar-distributed unitary via QR of a Ginibre matrix (modified Gram-Schmidt
/// with phase-fixed diagonal).
inline CMatrix random_unitary(int dim, Rng& rng) {
    std::vector<Ket> cols(dim);
    for (int c = 0; c < dim; ++c) {
        Ket v(dim);
        for (auto& x : v) x = rng.complex_gaussian();
        for (int p = 0; p < c; ++p) {
            const cplx proj = inner(cols[p], v);
            for (int i = 0; i < dim; ++i) v[i] -= proj * cols[p][i];
        }
        cols[c] = normalized(std::move(v));
    }
    CMatrix u(dim);
    for (int c = 0; c < dim; ++c)
        for (int r = 0; r < dim; ++r) u(r, c) = cols[c][r];
    return u;
}

/// Uniform point on the probability simplex (normalized exponentials).
inline std::vector<double> random_simplex(int n, Rng& rng) {
    std::vector<double> p(n);
    double sum = 0.0;
    for (auto& x : p) {
        double u = rng.uniform();
        while (u <= 0.0) u = rng.uniform();
        x = -std::log(u);
        sum += x;
    }
    for (auto& x : p) x /= sum;
    return p;
}

/// Random rank-one POVM with `n_outcomes >= dim` elements: raw Gaussian kets
/// whitened by M^{-1/2}, M = sum |v><v|.
inline std::vector<CMatrix> random_rank_one_povm_elements(int dim, int n_outcomes, Rng& rng) {
    std::vector<Ket> raw(n_outcomes);
    CMatrix m(dim);
    for (auto& v : raw) {
        v.resize(dim);
        for (auto& x : v) x = rng.complex_gaussian();
        m += outer(v);
    }
    const CMatrix white = psd_power(m, -0.5);
    std::vector<CMatrix> elements;
    for (const auto& v : raw) elements.push_back(outer(white.apply(v)));
    return elements;
}

/// Random POVM with general-rank elements (each built from `rank` Gaussian kets).
inline std::vector<CMatrix> random_coarse_povm_elements(int dim, int n_outcomes, int rank, Rng& rng) {
    std::vector<CMatrix> raw(n_outcomes, CMatrix(dim));
    CMatrix m(dim);
    for (auto& g : raw) {
        for (int k = 0; k < rank; ++k) {
            Ket v(dim);
            for (auto& x : v) x = rng.complex_gaussian();
            g += outer(v);
        }
        m += g;
    }
    const CMatrix white = psd_power(m, -0.5);
    std::vector<CMatrix> elements;
    for (const auto& g : raw) elements.push_back(white * g * white);
    return elements;
}

}  // namespace qcorr
