#pragma once

// Dense complex linear algebra on top of Eigen: tensor products, Hermitian
// eigendecomposition, Takagi and antisymmetric canonical factorizations,
// partial traces and the (anti)symmetric subspace embeddings of H (x) H.

#include "witnesslab/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace witnesslab {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Orthonormal columns spanning a subspace of a larger space.
struct Isometry {
    CMatrix columns;

    [[nodiscard]] Index ambient_dim() const { return columns.rows(); }
    [[nodiscard]] Index subspace_dim() const { return columns.cols(); }

    static Isometry identity(Index dim) { return {CMatrix::Identity(dim, dim)}; }
};

namespace tensor {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kSymmetryTol = 1e-10;
inline constexpr double kGroupTol = 1e-8;
inline constexpr double kZeroTol = 1e-10;

inline double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const CMatrix& m, double rel_tol = kHermitianTol) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m - m.adjoint()) <= rel_tol * max_abs(m);
}

inline bool is_symmetric(const CMatrix& m, double rel_tol = kSymmetryTol) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m - m.transpose()) <= rel_tol * std::max(1.0, max_abs(m));
}

inline bool is_antisymmetric(const CMatrix& m, double rel_tol = kSymmetryTol) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m + m.transpose()) <= rel_tol * std::max(1.0, max_abs(m));
}

/// (a (x) b)[(i*rb + k), (j*cb + l)] = a[i,j] * b[k,l]
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const Index rb = b.rows(), cb = b.cols();
    CMatrix out(a.rows() * rb, a.cols() * cb);
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

inline CVector kron(const CVector& a, const CVector& b) {
    CVector out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

struct EigenDecomposition {
    RVector values;  // ascending
    CMatrix vectors; // column k belongs to values(k)
};

inline EigenDecomposition eigh(const CMatrix& m) {
    require(is_hermitian(m), ErrorKind::NonHermitian,
            "matrix of side " + std::to_string(m.rows()) + " is not Hermitian");
    const CMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Singular values in descending order.
inline RVector singular_values(const CMatrix& m) {
    if (m.size() == 0) return RVector(0);
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues();
}

/// A run of eigenvalues treated as one eigenspace.
struct EigenGroup {
    double value = 0.0;
    Index first = 0;
    Index count = 0;
};

inline double group_tolerance(const RVector& values) {
    const double top = values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
    return kGroupTol * (1.0 + top);
}

/// Groups ascending eigenvalues whose neighbours differ by at most `tol`.
inline std::vector<EigenGroup> group_eigenvalues(const RVector& ascending, double tol) {
    std::vector<EigenGroup> groups;
    Index start = 0;
    for (Index k = 1; k <= ascending.size(); ++k) {
        if (k == ascending.size() || ascending(k) - ascending(k - 1) > tol) {
            const Index count = k - start;
            groups.push_back({ascending.segment(start, count).mean(), start, count});
            start = k;
        }
    }
    return groups;
}

/// Orthonormal basis of the orthogonal complement of the (orthonormal) columns of q.
inline CMatrix orthonormal_complement(const CMatrix& q, Index dim) {
    if (q.cols() == 0) return CMatrix::Identity(dim, dim);
    Eigen::HouseholderQR<CMatrix> qr(q);
    const CMatrix full = qr.householderQ() * CMatrix::Identity(dim, dim);
    return full.rightCols(dim - q.cols());
}

struct Takagi {
    RVector coeffs; // descending, one per row of v
    CMatrix u;      // unitary with v = u * diag(coeffs) * u^T
};

/// Takagi factorization of a complex symmetric matrix.
///
/// Writes v = A + iB and diagonalizes the real symmetric embedding
/// [[A, B], [B, -A]]. An eigenvector [x; y] with eigenvalue s > 0 gives a
/// column u = x + iy with v * conj(u) = s * u. Eigenvectors for distinct
/// positive eigenvalues stay orthonormal as complex vectors, so degenerate
/// coefficients need no special treatment. Columns for vanishing coefficients
/// are completed from the orthogonal complement of the range of v.
inline Takagi takagi(const CMatrix& v) {
    require(v.rows() == v.cols(), ErrorKind::DimensionMismatch, "takagi expects a square matrix");
    require(is_symmetric(v), ErrorKind::NotSymmetric, "takagi expects v == v^T");
    const Index n = v.rows();
    if (n == 0) return {RVector(0), CMatrix(0, 0)};

    const RMatrix a = v.real();
    const RMatrix b = v.imag();
    RMatrix embed(2 * n, 2 * n);
    embed << a, b, b, -a;
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(0.5 * (embed + embed.transpose()));
    const RVector& lam = solver.eigenvalues();
    const RMatrix& vec = solver.eigenvectors();

    const double largest = std::max(0.0, lam(2 * n - 1));
    const double zero = kZeroTol * (largest + 1.0);

    std::vector<CVector> columns;
    std::vector<double> values;
    for (Index k = 2 * n - 1; k >= n && lam(k) > zero; --k) {
        CVector col(n);
        for (Index i = 0; i < n; ++i) col(i) = cplx(vec(i, k), vec(n + i, k));
        // Guard against slight mixing with the -s partner for tiny s.
        for (const auto& prev : columns) col -= prev.dot(col) * prev;
        col.normalize();
        columns.push_back(col);
        values.push_back(lam(k));
    }

    const auto rank = static_cast<Index>(columns.size());
    CMatrix u(n, n);
    for (Index k = 0; k < rank; ++k) u.col(k) = columns[static_cast<std::size_t>(k)];
    if (rank < n) u.rightCols(n - rank) = orthonormal_complement(u.leftCols(rank), n);

    RVector coeffs = RVector::Zero(n);
    for (Index k = 0; k < rank; ++k) coeffs(k) = values[static_cast<std::size_t>(k)];
    return {coeffs, u};
}

struct BlockCanonical {
    RVector coeffs; // positive z_i, descending
    CMatrix u;      // unitary with u * w * u^T = diag([[0, z_i], [-z_i, 0]], ..., 0)
};

/// Canonical block-diagonal form of a complex antisymmetric matrix.
///
/// Repeatedly takes the top eigenvector p of w w^dagger (eigenvalue z^2),
/// pairs it with q = -w conj(p) / z and deflates w by z (p q^T - q p^T).
inline BlockCanonical antisym_block_diagonalize(const CMatrix& w) {
    require(w.rows() == w.cols(), ErrorKind::DimensionMismatch,
            "antisym_block_diagonalize expects a square matrix");
    require(is_antisymmetric(w), ErrorKind::NotAntisymmetric,
            "antisym_block_diagonalize expects w == -w^T");
    const Index n = w.rows();

    const auto initial = singular_values(w);
    const double largest = initial.size() == 0 ? 0.0 : initial(0);
    const double zero = kZeroTol * (largest + 1.0);

    CMatrix residual = w;
    std::vector<CVector> frame;
    std::vector<double> coeffs;
    while (static_cast<Index>(frame.size()) + 2 <= n) {
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(residual * residual.adjoint());
        const double z2 = solver.eigenvalues()(n - 1);
        const double z = std::sqrt(std::max(0.0, z2));
        if (z <= zero) break;
        CVector p = solver.eigenvectors().col(n - 1);
        for (const auto& f : frame) p -= f.dot(p) * f;
        p.normalize();
        CVector q = -(residual * p.conjugate()) / z;
        for (const auto& f : frame) q -= f.dot(q) * f;
        q -= p.dot(q) * p;
        q.normalize();
        residual -= z * (p * q.transpose() - q * p.transpose());
        frame.push_back(p);
        frame.push_back(q);
        coeffs.push_back(z);
    }

    const auto used = static_cast<Index>(frame.size());
    CMatrix basis(n, n);
    for (Index k = 0; k < used; ++k) basis.col(k) = frame[static_cast<std::size_t>(k)];
    if (used < n) basis.rightCols(n - used) = orthonormal_complement(basis.leftCols(used), n);

    RVector z(static_cast<Index>(coeffs.size()));
    for (Index k = 0; k < z.size(); ++k) z(k) = coeffs[static_cast<std::size_t>(k)];
    return {z, basis.adjoint()};
}

/// The block matrix diag([[0, z_1], [-z_1, 0]], ..., 0) of side n.
inline CMatrix antisym_block_form(const RVector& coeffs, Index n) {
    CMatrix out = CMatrix::Zero(n, n);
    for (Index k = 0; k < coeffs.size(); ++k) {
        out(2 * k, 2 * k + 1) = coeffs(k);
        out(2 * k + 1, 2 * k) = -coeffs(k);
    }
    return out;
}

/// result[k,l] = sum_i m[(i,k),(i,l)]
inline CMatrix partial_trace_first(const CMatrix& m, Index dim_first, Index dim_second) {
    require(m.rows() == m.cols() && m.rows() == dim_first * dim_second, ErrorKind::DimensionMismatch,
            "partial_trace_first: matrix side " + std::to_string(m.rows()) + " != " +
                std::to_string(dim_first) + "*" + std::to_string(dim_second));
    CMatrix out = CMatrix::Zero(dim_second, dim_second);
    for (Index i = 0; i < dim_first; ++i) out += m.block(i * dim_second, i * dim_second, dim_second, dim_second);
    return out;
}

/// Permutation matrix exchanging the two factors of C^d (x) C^d.
inline CMatrix swap_operator(Index d) {
    CMatrix s = CMatrix::Zero(d * d, d * d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
    return s;
}

/// S1|ijkl> = |kjil> and S2|ijkl> = |ilkj> on (C^n)^{(x)4}.
inline std::pair<CMatrix, CMatrix> copy_swap_operators(Index n) {
    require(n >= 2, ErrorKind::BadDimension, "copy_swap_operators needs n >= 2");
    const Index dim = n * n * n * n;
    const auto idx = [n](Index i, Index j, Index k, Index l) { return ((i * n + j) * n + k) * n + l; };
    CMatrix s1 = CMatrix::Zero(dim, dim);
    CMatrix s2 = CMatrix::Zero(dim, dim);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            for (Index k = 0; k < n; ++k)
                for (Index l = 0; l < n; ++l) {
                    s1(idx(k, j, i, l), idx(i, j, k, l)) = 1.0;
                    s2(idx(i, l, k, j), idx(i, j, k, l)) = 1.0;
                }
    return {s1, s2};
}

/// Columns |ii> and (|ij> + |ji>)/sqrt(2) for i < j, pairs in lexicographic order.
inline Isometry sym_subspace_isometry(Index n) {
    require(n >= 1, ErrorKind::BadDimension, "sym_subspace_isometry needs n >= 1");
    CMatrix v = CMatrix::Zero(n * n, n * (n + 1) / 2);
    const double r = 1.0 / std::sqrt(2.0);
    Index col = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j, ++col) {
            if (i == j) {
                v(i * n + i, col) = 1.0;
            } else {
                v(i * n + j, col) = r;
                v(j * n + i, col) = r;
            }
        }
    return {v};
}

/// Columns (|ij> - |ji>)/sqrt(2) for i < j, pairs in lexicographic order.
inline Isometry antisym_subspace_isometry(Index n) {
    require(n >= 2, ErrorKind::BadDimension, "antisym_subspace_isometry needs n >= 2");
    CMatrix v = CMatrix::Zero(n * n, n * (n - 1) / 2);
    const double r = 1.0 / std::sqrt(2.0);
    Index col = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j, ++col) {
            v(i * n + j, col) = r;
            v(j * n + i, col) = -r;
        }
    return {v};
}

/// Row-major reshape of a vector of length d*d into a d x d matrix.
inline CMatrix unvec(const CVector& v, Index d) {
    require(v.size() == d * d, ErrorKind::DimensionMismatch, "unvec: length is not d*d");
    CMatrix m(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) m(i, j) = v(i * d + j);
    return m;
}

/// Row-major flattening, inverse of unvec.
inline CVector vec(const CMatrix& m) {
    CVector v(m.size());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
    return v;
}

} // namespace tensor
} // namespace witnesslab
