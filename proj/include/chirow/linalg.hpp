// Small dense complex linear algebra: fixed 2x2/4x4 transfer blocks, a dynamic
// Hermitian matrix type, a cyclic-Jacobi Hermitian eigensolver and an LU solver.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace chirow {

using cplx = std::complex<double>;

// Raised when an iterative numerical routine fails to converge.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Fixed-size matrices for the transfer-matrix engine (row-major).

template <std::size_t N>
struct MatN {
    std::array<cplx, N * N> a{};

    cplx& operator()(std::size_t i, std::size_t j) { return a[i * N + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * N + j]; }

    static MatN identity() {
        MatN m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    MatN operator*(const MatN& rhs) const {
        MatN r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const cplx v = (*this)(i, k);
                if (v == cplx{}) continue;
                for (std::size_t j = 0; j < N; ++j) r(i, j) += v * rhs(k, j);
            }
        return r;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a) m = std::max(m, std::abs(v));
        return m;
    }
};

using Mat2 = MatN<2>;
using Mat4 = MatN<4>;

inline cplx det(const Mat2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

// ---------------------------------------------------------------------------
// Dynamic dense complex matrix (row-major), sized for chains of a few hundred sites.

class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    bool is_hermitian(double tol) const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        return true;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

inline std::vector<cplx> matvec(const CMatrix& m, const std::vector<cplx>& x) {
    std::vector<cplx> y(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cplx s{};
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

// ---------------------------------------------------------------------------
// LU solve with partial pivoting (in-place copy). Used for resolvent oracles
// and the 2x2/4x4 boundary systems are small enough to reuse it too.

inline std::vector<cplx> lu_solve(CMatrix a, std::vector<cplx> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw std::invalid_argument("lu_solve: shape mismatch");
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > best) { best = std::abs(a(i, k)); p = i; }
        if (best < 1e-300) throw NumericalFailure("lu_solve: singular matrix");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(b[k], b[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = a(i, k) / a(k, k);
            a(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    for (std::size_t ii = n; ii-- > 0;) {
        cplx s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * b[j];
        b[ii] = s / a(ii, ii);
    }
    return b;
}

// Resolvent column: solves (omega*I - H) x = e_k and returns x.
inline std::vector<cplx> resolvent_column(const CMatrix& h, cplx omega, std::size_t k) {
    const std::size_t n = h.rows();
    CMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = (i == j ? omega : cplx{}) - h(i, j);
    std::vector<cplx> e(n);
    e[k] = 1.0;
    return lu_solve(std::move(a), std::move(e));
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi eigensolver for complex Hermitian matrices.
//
// Sweeps annihilate each off-diagonal pair with a complex plane rotation until
// the off-diagonal Frobenius mass is at machine level. Eigenvalues come back
// ascending with orthonormal eigenvector columns.

struct EigenResult {
    std::vector<double> eigenvalues;   // ascending
    CMatrix eigenvectors;              // column i pairs with eigenvalues[i]
};

inline EigenResult eigh(CMatrix h, int max_sweeps = 60) {
    const std::size_t n = h.rows();
    if (h.cols() != n) throw std::invalid_argument("eigh: matrix not square");
    const double scale = std::max(h.max_abs(), 1e-300);
    if (!h.is_hermitian(1e-12 * scale))
        throw std::invalid_argument("eigh: matrix not Hermitian");

    CMatrix v = CMatrix::identity(n);
    const double tol = 1e-15 * scale;

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += std::norm(h(i, j));
        return std::sqrt(2.0 * s);
    };

    int sweep = 0;
    while (off_norm() > tol * std::sqrt(double(n))) {
        if (++sweep > max_sweeps)
            throw NumericalFailure("eigh: Jacobi sweeps did not converge");
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = h(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                // Phase out the complex part, then a real Jacobi rotation.
                const cplx phase = apq / std::abs(apq);
                const double m = std::abs(apq);
                const double tau = (aqq - app) / (2.0 * m);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = s * phase;  // rotation applied to column q against p

                for (std::size_t k = 0; k < n; ++k) {
                    const cplx hkp = h(k, p), hkq = h(k, q);
                    h(k, p) = c * hkp - std::conj(sp) * hkq;
                    h(k, q) = sp * hkp + c * hkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx hpk = h(p, k), hqk = h(q, k);
                    h(p, k) = c * hpk - sp * hqk;
                    h(q, k) = std::conj(sp) * hpk + c * hqk;
                }
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - std::conj(sp) * vkq;
                    v(k, q) = sp * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return h(a, a).real() < h(b, b).real(); });

    EigenResult r;
    r.eigenvalues.resize(n);
    r.eigenvectors = CMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        r.eigenvalues[i] = h(order[i], order[i]).real();
        for (std::size_t k = 0; k < n; ++k) r.eigenvectors(k, i) = v(k, order[i]);
    }
    return r;
}

}  // namespace chirow
