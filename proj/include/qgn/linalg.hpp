#pragma once

#include "qgn/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <string>

namespace qgn {

template<typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template<typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Throws NumericalFailure if any coefficient of `m` is NaN or infinite.
template<typename Derived>
void ensure_finite(const Eigen::MatrixBase<Derived>& m, const std::string& what)
{
    if(!m.allFinite())
        throw NumericalFailure(what + " contains non-finite entries");
}

/// Gauss-Newton step: the h minimising ||f + J h||_2, i.e. the solution of
/// (J^T J) h = -J^T f for full-column-rank J.
///
/// Solved through a column-pivoting Householder QR of J followed by one pass
/// of iterative refinement; J^T J is never formed. A column counts as
/// dependent when its R diagonal falls below max(m, n) * eps * |R_00|.
template<typename Scalar>
DenseVector<Scalar> solve_gn_step(const DenseMatrix<Scalar>& jacobian,
                                  const DenseVector<Scalar>& residuals)
{
    const Index m = jacobian.rows();
    const Index n = jacobian.cols();
    if(n < 1 || m < n)
        throw DomainError("solve_gn_step requires m >= n >= 1, got " + std::to_string(m) + "x" +
                          std::to_string(n));
    if(residuals.size() != m)
        throw DomainError("solve_gn_step: residual length " + std::to_string(residuals.size()) +
                          " does not match Jacobian rows " + std::to_string(m));
    ensure_finite(jacobian, "Jacobian");
    ensure_finite(residuals, "residual vector");

    Eigen::ColPivHouseholderQR<DenseMatrix<Scalar>> qr(jacobian);
    qr.setThreshold(static_cast<Scalar>(std::max(m, n)) * std::numeric_limits<Scalar>::epsilon());
    if(qr.rank() < n)
        throw SingularSystem(qr.rank(), n);

    const DenseVector<Scalar> rhs = -residuals;
    DenseVector<Scalar> step = qr.solve(rhs);
    const DenseVector<Scalar> correction_rhs = rhs - jacobian * step;
    step += qr.solve(correction_rhs);

    ensure_finite(step, "Gauss-Newton step");
    return step;
}

/// True iff h is a descent direction for F = 1/2 ||f||^2, i.e. h^T (J^T f) < 0.
template<typename Scalar>
bool descent_check(const DenseMatrix<Scalar>& jacobian,
                   const DenseVector<Scalar>& residuals,
                   const DenseVector<Scalar>& step)
{
    if(jacobian.rows() != residuals.size() || jacobian.cols() != step.size())
        throw DomainError("descent_check: inconsistent shapes");
    const DenseVector<Scalar> gradient = jacobian.transpose() * residuals;
    return step.dot(gradient) < Scalar(0);
}

} // namespace qgn
