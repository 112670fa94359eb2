// Bipartite density matrices: validation, partial traces, subsystem swap.
#pragma once

#include <utility>

#include "qcorr/matrix.hpp"

namespace qcorr {

inline constexpr int kMaxJointDim = 16;
inline constexpr double kHermTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdClipTol = 1e-10;  // eigenvalues in [-clip, 0) are noise, not errors

enum class Subsystem { A, B };

/// Validated bipartite state. Joint index convention is A-major: (a, b) -> a*d_b + b.
struct DensityMatrix {
    int d_a = 0;
    int d_b = 0;
    CMatrix mat;

    int dim() const noexcept { return d_a * d_b; }
};

/// Checks Hermiticity, unit trace and positivity; clips eigenvalues in
/// [-1e-10, 0) to zero (renormalizing), rejects anything more negative.
inline DensityMatrix validate_density_matrix(const CMatrix& mat, int d_a, int d_b) {
    if (d_a <= 0 || d_b <= 0 || mat.dim() != d_a * d_b)
        throw Error(ErrorCode::DimMismatch, "density matrix dimension does not match subsystem dims");
    if (d_a * d_b > kMaxJointDim)
        throw Error(ErrorCode::DimMismatch, "joint dimension exceeds supported maximum of 16");
    if (mat.hermiticity_defect() > kHermTol)
        throw Error(ErrorCode::NotHermitian, "density matrix is not Hermitian (defect " +
                                                 std::to_string(mat.hermiticity_defect()) + ")");
    const double tr = std::real(mat.trace());
    if (std::abs(tr - 1.0) > kTraceTol)
        throw Error(ErrorCode::TraceNotOne, "density matrix trace is " + std::to_string(tr));

    EigResult eig = hermitian_eig(mat);
    const double min_eig = eig.eigenvalues.back();
    if (min_eig < -kPsdClipTol)
        throw Error(ErrorCode::NegativeEigenvalue,
                    "density matrix has eigenvalue " + std::to_string(min_eig));

    DensityMatrix rho{d_a, d_b, mat};
    if (min_eig < 0.0) {
        // rebuild from the clipped spectrum
        const int n = mat.dim();
        CMatrix fixed(n);
        double total = 0.0;
        for (int k = 0; k < n; ++k) total += std::max(eig.eigenvalues[k], 0.0);
        for (int k = 0; k < n; ++k) {
            const double lam = std::max(eig.eigenvalues[k], 0.0) / total;
            if (lam == 0.0) continue;
            const Ket vk = eig_column(eig, k);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) fixed(i, j) += lam * vk[i] * std::conj(vk[j]);
        }
        rho.mat = fixed;
    } else if (tr != 1.0) {
        rho.mat *= cplx(1.0 / tr, 0.0);
    }
    return rho;
}

inline CMatrix partial_trace_a(const CMatrix& m, int d_a, int d_b) {
    if (m.dim() != d_a * d_b) throw Error(ErrorCode::DimMismatch, "partial_trace: dims mismatch");
    CMatrix out(d_b);
    for (int k = 0; k < d_b; ++k)
        for (int l = 0; l < d_b; ++l) {
            cplx s = 0.0;
            for (int i = 0; i < d_a; ++i) s += m(i * d_b + k, i * d_b + l);
            out(k, l) = s;
        }
    return out;
}

inline CMatrix partial_trace_b(const CMatrix& m, int d_a, int d_b) {
    if (m.dim() != d_a * d_b) throw Error(ErrorCode::DimMismatch, "partial_trace: dims mismatch");
    CMatrix out(d_a);
    for (int i = 0; i < d_a; ++i)
        for (int j = 0; j < d_a; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < d_b; ++k) s += m(i * d_b + k, j * d_b + k);
            out(i, j) = s;
        }
    return out;
}

/// Marginal of the kept subsystem; trace preserved.
inline CMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
    return keep == Subsystem::A ? partial_trace_b(rho.mat, rho.d_a, rho.d_b)
                                : partial_trace_a(rho.mat, rho.d_a, rho.d_b);
}

/// Exchange the roles of A and B (reindexes the joint basis).
inline DensityMatrix swap_subsystems(const DensityMatrix& rho) {
    const int da = rho.d_a, db = rho.d_b;
    CMatrix out(da * db);
    for (int a = 0; a < da; ++a)
        for (int b = 0; b < db; ++b)
            for (int a2 = 0; a2 < da; ++a2)
                for (int b2 = 0; b2 < db; ++b2)
                    out(b * da + a, b2 * da + a2) = rho.mat(a * db + b, a2 * db + b2);
    return DensityMatrix{db, da, out};
}

inline double purity(const DensityMatrix& rho) {
    double s = 0.0;
    const int n = rho.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += std::norm(rho.mat(i, j));
    return s;  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
}

}  // namespace qcorr
