// Two-qubit concurrence and entanglement of formation (Wootters).
#pragma once

#include <algorithm>

#include "qcorr/density.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/matrix.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

struct EntanglementPair {
    double concurrence;  // [0, 1]
    double eof;          // bits, [0, 1]
};

/// C(rho) = max(0, l1 - l2 - l3 - l4), the l_j being the descending square
/// roots of the eigenvalues of rho * rho_tilde. The spectrum is computed from
/// the Hermitian-similar form sqrt(rho) rho_tilde sqrt(rho).
inline double concurrence(const DensityMatrix& rho) {
    if (rho.d_a != 2 || rho.d_b != 2)
        throw Error(ErrorCode::DimMismatch, "concurrence requires a two-qubit state");
    const CMatrix yy = tensor_product(pauli(2), pauli(2));
    CMatrix conj_rho(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) conj_rho(i, j) = std::conj(rho.mat(i, j));
    const CMatrix rho_tilde = yy * conj_rho * yy;
    const CMatrix root = sqrt_psd(rho.mat);
    const EigResult e = hermitian_eig(root * rho_tilde * root);

    double c = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double lam = std::sqrt(std::max(e.eigenvalues[k], 0.0));
        c += (k == 0 ? lam : -lam);
        if (e.eigenvalues[k] < -1e-10)
            throw Error(ErrorCode::NegativeEigenvalue, "rho*rho_tilde spectrum is negative");
    }
    return std::clamp(c, 0.0, 1.0);
}

/// E_f(rho) = h((1 + sqrt(1 - C^2)) / 2) with h the binary entropy.
inline double entanglement_of_formation(const DensityMatrix& rho) {
    const double c = concurrence(rho);
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

inline EntanglementPair entanglement_pair(const DensityMatrix& rho) {
    const double c = concurrence(rho);
    return {c, binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))))};
}

}  // namespace qcorr
