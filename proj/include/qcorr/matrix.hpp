// Dense complex matrix kernel for small quantum systems (joint dimension <= 16).
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcorr {

using cplx = std::complex<double>;
using Ket = std::vector<cplx>;

enum class ErrorCode {
    DimMismatch,
    NotHermitian,
    TraceNotOne,
    NegativeEigenvalue,
    SupportViolation,
    InvalidProbability,
    InvalidArgument,
    NonFiniteObjective,
    ParseError,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Square complex matrix, row-major storage.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {
        if (dim <= 0) throw Error(ErrorCode::InvalidArgument, "matrix dimension must be positive");
    }

    static CMatrix identity(int dim) {
        CMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const noexcept { return dim_; }

    cplx& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * dim_ + c]; }

    CMatrix& operator+=(const CMatrix& o) {
        require_same_dim(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    CMatrix& operator-=(const CMatrix& o) {
        require_same_dim(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    CMatrix& operator*=(cplx s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
    friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
        a.require_same_dim(b);
        const int n = a.dim_;
        CMatrix out(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (int j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    CMatrix adjoint() const {
        CMatrix out(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    double max_abs_diff(const CMatrix& o) const {
        require_same_dim(o);
        double m = 0.0;
        for (std::size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - o.a_[i]));
        return m;
    }

    double hermiticity_defect() const {
        double m = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = i; j < dim_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

    bool is_hermitian(double tol = 1e-10) const { return hermiticity_defect() <= tol; }

    Ket apply(const Ket& v) const {
        if (static_cast<int>(v.size()) != dim_)
            throw Error(ErrorCode::DimMismatch, "matrix/vector dimension mismatch");
        Ket out(v.size());
        for (int i = 0; i < dim_; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * v[j];
            out[i] = s;
        }
        return out;
    }

private:
    void require_same_dim(const CMatrix& o) const {
        if (dim_ != o.dim_) throw Error(ErrorCode::DimMismatch, "matrix dimension mismatch");
    }

    int dim_ = 0;
    std::vector<cplx> a_;
};

inline cplx inner(const Ket& a, const Ket& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimMismatch, "ket dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline double norm(const Ket& v) { return std::sqrt(std::real(inner(v, v))); }

inline Ket normalized(Ket v) {
    const double n = norm(v);
    if (n < 1e-300) throw Error(ErrorCode::InvalidArgument, "cannot normalize zero vector");
    for (auto& x : v) x /= n;
    return v;
}

/// |v><v|
inline CMatrix outer(const Ket& v) {
    CMatrix m(static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = v[i] * std::conj(v[j]);
    return m;
}

/// <v|M|v>, real part (M Hermitian in all call sites).
inline double expectation(const CMatrix& m, const Ket& v) { return std::real(inner(v, m.apply(v))); }

/// Kronecker product; joint index is A-major: (i*dim_y + k, j*dim_y + l).
inline CMatrix tensor_product(const CMatrix& x, const CMatrix& y) {
    const int dx = x.dim(), dy = y.dim();
    CMatrix out(dx * dy);
    for (int i = 0; i < dx; ++i)
        for (int j = 0; j < dx; ++j) {
            const cplx xij = x(i, j);
            if (xij == cplx{}) continue;
            for (int k = 0; k < dy; ++k)
                for (int l = 0; l < dy; ++l) out(i * dy + k, j * dy + l) = xij * y(k, l);
        }
    return out;
}

inline Ket tensor_product(const Ket& x, const Ket& y) {
    Ket out(x.size() * y.size());
    std::size_t idx = 0;
    for (const auto& xi : x)
        for (const auto& yk : y) out[idx++] = xi * yk;
    return out;
}

struct EigResult {
    std::vector<double> eigenvalues;  // descending
    CMatrix eigenvectors;             // orthonormal columns, same order
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Input must be Hermitian within `herm_tol` (max element defect); the strictly
/// Hermitian average (H + H^dagger)/2 is what gets diagonalized.
inline EigResult hermitian_eig(const CMatrix& h, double herm_tol = 1e-10) {
    const int n = h.dim();
    if (h.hermiticity_defect() > herm_tol)
        throw Error(ErrorCode::NotHermitian, "hermitian_eig: input is not Hermitian (defect " +
                                                 std::to_string(h.hermiticity_defect()) + ")");

    CMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
    CMatrix v = CMatrix::identity(n);

    const double scale = std::max(1.0, a.max_abs());
    const double stop = 1e-15 * scale;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= stop) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r <= stop) continue;
                const double phase = std::arg(a(p, q));
                const cplx eip = std::polar(1.0, phase);
                const double app = std::real(a(p, p));
                const double aqq = std::real(a(q, q));
                const double theta = 0.5 * std::atan2(2.0 * r, app - aqq);
                const double c = std::cos(theta), s = std::sin(theta);

                // columns: A <- A J with J = [[c, -s e^{i phi}], [s e^{-i phi}, c]]
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp + s * std::conj(eip) * akq;
                    a(k, q) = -s * eip * akp + c * akq;
                }
                // rows: A <- J^dagger A
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + s * eip * aqk;
                    a(q, k) = -s * std::conj(eip) * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp + s * std::conj(eip) * vkq;
                    v(k, q) = -s * eip * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return std::real(a(i, i)) > std::real(a(j, j)); });

    EigResult res;
    res.eigenvalues.resize(n);
    res.eigenvectors = CMatrix(n);
    for (int c = 0; c < n; ++c) {
        res.eigenvalues[c] = std::real(a(order[c], order[c]));
        for (int rw = 0; rw < n; ++rw) res.eigenvectors(rw, c) = v(rw, order[c]);
    }
    return res;
}

inline Ket eig_column(const EigResult& e, int col) {
    Ket v(e.eigenvectors.dim());
    for (int i = 0; i < e.eigenvectors.dim(); ++i) v[i] = e.eigenvectors(i, col);
    return v;
}

/// H^p for Hermitian PSD H via the spectral decomposition. Eigenvalues below
/// `eigen_floor` are treated as zero (error for negative exponents).
inline CMatrix psd_power(const CMatrix& h, double exponent, double eigen_floor = 1e-12) {
    const EigResult e = hermitian_eig(h);
    const int n = h.dim();
    CMatrix out(n);
    for (int k = 0; k < n; ++k) {
        double lam = e.eigenvalues[k];
        if (lam < eigen_floor) {
            if (exponent < 0.0)
                throw Error(ErrorCode::InvalidArgument, "psd_power: singular matrix with negative exponent");
            if (lam < -1e-9)
                throw Error(ErrorCode::NegativeEigenvalue, "psd_power: matrix is not PSD");
            continue;
        }
        const double w = std::pow(lam, exponent);
        const Ket vk = eig_column(e, k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out(i, j) += w * vk[i] * std::conj(vk[j]);
    }
    return out;
}

inline CMatrix sqrt_psd(const CMatrix& h) { return psd_power(h, 0.5); }

}  // namespace qcorr
