// Correlation-matrix SVD and the alignment of optimal measurement axes with
// the maximal singular vectors.
#pragma once

#include <array>

#include "qcorr/geometry.hpp"
#include "qcorr/matrix.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

struct CorrelationSvd {
    std::array<double, 3> singular_values;  // descending, >= 0
    std::array<Vec3, 3> left;               // n_j with c m_j = lambda_j n_j
    std::array<Vec3, 3> right;              // m_j, eigenvectors of c^T c
};

/// SVD of the 3x3 spin correlation matrix via the eigendecomposition of c^T c.
inline CorrelationSvd correlation_svd(const Mat3& c) {
    CMatrix ctc(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += c[k][i] * c[k][j];
            ctc(i, j) = s;
        }
    const EigResult e = hermitian_eig(ctc);

    CorrelationSvd out;
    for (int j = 0; j < 3; ++j) {
        out.singular_values[j] = std::sqrt(std::max(e.eigenvalues[j], 0.0));
        for (int i = 0; i < 3; ++i) out.right[j][i] = std::real(e.eigenvectors(i, j));
        const double rn = norm(out.right[j]);
        for (int i = 0; i < 3; ++i) out.right[j][i] /= rn;
    }
    const double tol = 1e-12 * std::max(1.0, out.singular_values[0]);
    for (int j = 0; j < 3; ++j) {
        if (out.singular_values[j] > tol) {
            Vec3 n = mat_vec(c, out.right[j]);
            for (int k = 0; k < j; ++k) n = n + (-dot(n, out.left[k])) * out.left[k];
            out.left[j] = (1.0 / norm(n)) * n;
        } else if (j == 2) {
            out.left[2] = cross(out.left[0], out.left[1]);
        } else if (j == 1) {
            // null direction: any unit vector orthogonal to n_0
            const Vec3 seed = std::abs(out.left[0][0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
            Vec3 n = cross(out.left[0], seed);
            out.left[1] = (1.0 / norm(n)) * n;
        } else {
            out.left = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
            break;
        }
    }
    return out;
}

enum class AlignmentMeasure { Wpm, M2b, M3b };

/// Cosines between the optimal measurement axes of a strategy-(b) measure and
/// the maximal singular vectors of the correlation matrix. Cosines are
/// absolute values (a projective pair identifies +/- its axis); a degenerate
/// maximal singular value widens the comparison to the degenerate subspace.
struct SvdAlignment {
    CorrelationSvd svd;
    double measure_bits = 0.0;
    std::vector<double> angles;
    double cos_a = 0.0;
    double cos_b = 0.0;
    bool measure_degenerate = false;   // measure ~ 0, optimal axes not unique
    bool singular_degenerate = false;  // top singular value degenerate
};

inline SvdAlignment svd_alignment(const DensityMatrix& rho, AlignmentMeasure which,
                                  const OptimConfig& cfg = {}) {
    MeasureValue mv;
    switch (which) {
        case AlignmentMeasure::Wpm: mv = wpm(rho, cfg); break;
        case AlignmentMeasure::M2b: mv = m2b(rho, Direction::AtoB, cfg); break;
        case AlignmentMeasure::M3b: mv = m3b(rho, cfg); break;
    }

    SvdAlignment out;
    out.svd = correlation_svd(to_bloch(rho).c);
    out.measure_bits = mv.bits;
    out.angles = mv.angles;
    out.measure_degenerate = std::abs(mv.bits) < 1e-9;

    const Vec3 axis_a = projective_pair_axis({mv.angles[0], mv.angles[1]});
    const Vec3 axis_b = projective_pair_axis({mv.angles[2], mv.angles[3]});

    int top = 1;
    while (top < 3 && out.svd.singular_values[0] - out.svd.singular_values[top] < 1e-9) ++top;
    out.singular_degenerate = top > 1;

    auto cosine = [&](const Vec3& axis, const std::array<Vec3, 3>& basis) {
        double s = 0.0;
        for (int j = 0; j < top; ++j) s += dot(axis, basis[j]) * dot(axis, basis[j]);
        return std::min(1.0, std::sqrt(s));
    };
    out.cos_a = cosine(axis_a, out.svd.left);
    out.cos_b = cosine(axis_b, out.svd.right);
    return out;
}

}  // namespace qcorr
