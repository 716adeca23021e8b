#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "psiconc/errors.hpp"

namespace psiconc {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct SymmetricEigen {
    VectorX<Scalar> values;
    /// Columns are the eigenvectors.
    MatrixX<Scalar> vectors;
    int sweeps = 0;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Sweeps until the
/// off-diagonal Frobenius norm is at most tol * ||A||_F; throws
/// NumericFailure after max_sweeps.
template <typename Derived>
SymmetricEigen<typename Derived::Scalar> jacobi_eigen(const Eigen::MatrixBase<Derived>& input,
                                                      typename Derived::Scalar tol = 1e-12,
                                                      int max_sweeps = 100) {
    using Scalar = typename Derived::Scalar;
    if (input.rows() != input.cols()) throw DimensionMismatch("jacobi_eigen needs a square matrix");
    MatrixX<Scalar> a = input;
    const Eigen::Index n = a.rows();
    MatrixX<Scalar> v = MatrixX<Scalar>::Identity(n, n);
    const Scalar norm = a.norm();

    auto off = [&] {
        Scalar s = 0;
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                if (i != j) s += a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    SymmetricEigen<Scalar> out;
    while (off() > tol * norm) {
        if (out.sweeps == max_sweeps) throw NumericFailure("Jacobi eigensolver did not converge");
        ++out.sweeps;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Scalar apq = a(p, q);
                if (apq == Scalar(0)) continue;
                const Scalar tau = (a(q, q) - a(p, p)) / (2 * apq);
                const Scalar t = (tau >= 0 ? Scalar(1) : Scalar(-1)) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                const Scalar c = 1 / std::sqrt(1 + t * t);
                const Scalar s = t * c;

                VectorX<Scalar> col_p = a.col(p);
                a.col(p) = c * col_p - s * a.col(q);
                a.col(q) = s * col_p + c * a.col(q);
                Eigen::Matrix<Scalar, 1, Eigen::Dynamic> row_p = a.row(p);
                a.row(p) = c * row_p - s * a.row(q);
                a.row(q) = s * row_p + c * a.row(q);
                a(p, q) = a(q, p) = Scalar(0);

                VectorX<Scalar> vp = v.col(p);
                v.col(p) = c * vp - s * v.col(q);
                v.col(q) = s * vp + c * v.col(q);
            }
        }
    }
    out.values = a.diagonal();
    out.vectors = std::move(v);
    return out;
}

/// V f(D) V^T for a symmetric matrix, f applied to the eigenvalues.
template <typename Scalar, typename F>
MatrixX<Scalar> spectral_apply(const SymmetricEigen<Scalar>& e, F&& f) {
    const VectorX<Scalar> fd = e.values.unaryExpr(f);
    MatrixX<Scalar> m = e.vectors * fd.asDiagonal() * e.vectors.transpose();
    return (m + m.transpose()) / 2;
}

/// Principal matrix logarithm of an SPD matrix. Throws NotSpd.
template <typename Derived>
MatrixX<typename Derived::Scalar> spd_log(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    const auto e = jacobi_eigen(m);
    if (e.values.minCoeff() <= Scalar(0)) throw NotSpd("matrix has a non-positive eigenvalue");
    return spectral_apply(e, [](Scalar x) { return std::log(x); });
}

/// Matrix exponential of a symmetric matrix.
template <typename Derived>
MatrixX<typename Derived::Scalar> sym_exp(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    return spectral_apply(jacobi_eigen(m), [](Scalar x) { return std::exp(x); });
}

}  // namespace psiconc
