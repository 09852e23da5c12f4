#pragma once

#include "qgn/error.hpp"
#include "qgn/linalg.hpp"
#include "qgn/qcalc.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <utility>

namespace qgn {

/// A map R^n -> R^m with a fixed output length.
template<typename Scalar = double>
class VectorField
{
public:
    using Evaluator = std::function<DenseVector<Scalar>(const DenseVector<Scalar>&)>;

    VectorField(Index n, Index m, Evaluator evaluator)
        : n_(n), m_(m), evaluator_(std::move(evaluator))
    {
        if(n_ < 1 || m_ < 1)
            throw DomainError("VectorField dimensions must be positive");
        if(!evaluator_)
            throw DomainError("VectorField requires an evaluator");
    }

    Index input_dim() const noexcept { return n_; }
    Index output_dim() const noexcept { return m_; }

    DenseVector<Scalar> operator()(const DenseVector<Scalar>& x) const
    {
        if(x.size() != n_)
            throw DomainError("VectorField: input has length " + std::to_string(x.size()) +
                              ", expected " + std::to_string(n_));
        DenseVector<Scalar> out = evaluator_(x);
        if(out.size() != m_)
            throw DomainError("VectorField: evaluator returned length " +
                              std::to_string(out.size()) + ", expected " + std::to_string(m_));
        return out;
    }

private:
    Index n_;
    Index m_;
    Evaluator evaluator_;
};

/// Nonlinear least-squares problem: minimise 1/2 sum_i f_i(x)^2 over x in R^n.
template<typename Scalar = double>
class ResidualProblem
{
public:
    /// Analytic q-Jacobian: (x, q, zero_threshold) -> m x n matrix.
    using JacobianEvaluator = std::function<DenseMatrix<Scalar>(
        const DenseVector<Scalar>&, const DilationParams<Scalar>&, Scalar)>;
    /// Returns false for points where the residuals (or their dilations) are undefined.
    using DomainGuard = std::function<bool(
        const DenseVector<Scalar>&, const DilationParams<Scalar>&, Scalar)>;

    ResidualProblem(std::string name, VectorField<Scalar> residuals,
                    JacobianEvaluator analytic_q_jacobian = {}, DomainGuard domain_guard = {})
        : name_(std::move(name)), residuals_(std::move(residuals)),
          analytic_q_jacobian_(std::move(analytic_q_jacobian)),
          domain_guard_(std::move(domain_guard))
    {
        if(residuals_.output_dim() < residuals_.input_dim())
            throw DomainError("problem '" + name_ + "' needs m >= n");
    }

    const std::string& name() const noexcept { return name_; }
    Index n() const noexcept { return residuals_.input_dim(); }
    Index m() const noexcept { return residuals_.output_dim(); }

    const VectorField<Scalar>& field() const noexcept { return residuals_; }
    DenseVector<Scalar> residuals(const DenseVector<Scalar>& x) const { return residuals_(x); }

    bool has_analytic_q_jacobian() const noexcept { return static_cast<bool>(analytic_q_jacobian_); }

    DenseMatrix<Scalar> analytic_q_jacobian(const DenseVector<Scalar>& x,
                                            const DilationParams<Scalar>& q,
                                            Scalar zero_threshold = Scalar(kDefaultZeroThreshold)) const
    {
        if(!analytic_q_jacobian_)
            throw DomainError("problem '" + name_ + "' has no analytic q-Jacobian");
        DenseMatrix<Scalar> jac = analytic_q_jacobian_(x, q, zero_threshold);
        if(jac.rows() != m() || jac.cols() != n())
            throw DomainError("analytic q-Jacobian of '" + name_ + "' has the wrong shape");
        ensure_finite(jac, "analytic q-Jacobian");
        return jac;
    }

    bool admits(const DenseVector<Scalar>& x, const DilationParams<Scalar>& q,
                Scalar zero_threshold = Scalar(kDefaultZeroThreshold)) const
    {
        if(x.size() != n())
            return false;
        return !domain_guard_ || domain_guard_(x, q, zero_threshold);
    }

    bool admits(const DenseVector<Scalar>& x) const
    {
        return x.size() == n() && admits(x, DilationParams<Scalar>::classical(n()));
    }

private:
    std::string name_;
    VectorField<Scalar> residuals_;
    JacobianEvaluator analytic_q_jacobian_;
    DomainGuard domain_guard_;
};

template<typename Scalar = double>
struct ObjectiveValue
{
    Scalar sse;
    DenseVector<Scalar> residuals;
};

/// Residual vector f(x) and F(x) = 1/2 ||f(x)||^2.
template<typename Scalar>
ObjectiveValue<Scalar> evaluate_objective(const ResidualProblem<Scalar>& problem,
                                          const DenseVector<Scalar>& x)
{
    if(x.size() != problem.n())
        throw DomainError("evaluate_objective: point has the wrong dimension");
    if(!problem.admits(x))
        throw InvalidPoint("point rejected by the domain guard of '" + problem.name() + "'");
    DenseVector<Scalar> r = problem.residuals(x);
    ensure_finite(r, "residual vector");
    const Scalar sse = Scalar(0.5) * r.squaredNorm();
    return {sse, std::move(r)};
}

// ---------------------------------------------------------------------------
// Built-in problems

/// f(x) = 2 - (exp(-x^2) + 2 exp(-(x-3)^2)), n = m = 1.
template<typename Scalar = double>
ResidualProblem<Scalar> builtin_example1()
{
    using std::exp;
    auto f = [](Scalar x) { return Scalar(2) - (exp(-(x * x)) + Scalar(2) * exp(-((x - Scalar(3)) * (x - Scalar(3))))); };
    auto df = [](Scalar x) {
        return Scalar(2) * x * exp(-(x * x)) + Scalar(4) * (x - Scalar(3)) * exp(-((x - Scalar(3)) * (x - Scalar(3))));
    };

    VectorField<Scalar> field(1, 1, [f](const DenseVector<Scalar>& x) {
        DenseVector<Scalar> r(1);
        r(0) = f(x(0));
        return r;
    });

    auto jacobian = [df](const DenseVector<Scalar>& v, const DilationParams<Scalar>& qp,
                         Scalar zero_threshold) {
        using std::abs;
        const Scalar x = v(0);
        const Scalar q = qp[0];
        DenseMatrix<Scalar> jac(1, 1);
        if(q == Scalar(1) || abs(x) <= zero_threshold)
        {
            jac(0, 0) = df(x);
        }
        else
        {
            const Scalar qx = q * x;
            jac(0, 0) = (-exp(-(x * x)) + exp(-(qx * qx)) - Scalar(2) * exp(-((x - Scalar(3)) * (x - Scalar(3)))) +
                         Scalar(2) * exp(-((qx - Scalar(3)) * (qx - Scalar(3))))) /
                        ((Scalar(1) - q) * x);
        }
        return jac;
    };

    return ResidualProblem<Scalar>("example1", std::move(field), jacobian);
}

/// Powell's badly scaled pair: f1 = x1, f2 = 10 x1 / (x1 + 0.1) + 2 x2^2.
/// The pole x1 = -0.1 is excluded, for both x1 and its dilation q x1.
template<typename Scalar = double>
ResidualProblem<Scalar> builtin_example2()
{
    VectorField<Scalar> field(2, 2, [](const DenseVector<Scalar>& x) {
        DenseVector<Scalar> r(2);
        r(0) = x(0);
        r(1) = Scalar(10) * x(0) / (x(0) + Scalar(0.1)) + Scalar(2) * x(1) * x(1);
        return r;
    });

    auto jacobian = [](const DenseVector<Scalar>& x, const DilationParams<Scalar>& q,
                       Scalar zero_threshold) {
        using std::abs;
        DenseMatrix<Scalar> jac(2, 2);
        jac(0, 0) = Scalar(1);
        jac(0, 1) = Scalar(0);
        if(q[0] == Scalar(1) || abs(x(0)) <= zero_threshold)
            jac(1, 0) = Scalar(1) / ((x(0) + Scalar(0.1)) * (x(0) + Scalar(0.1)));
        else
            jac(1, 0) = Scalar(1) / ((x(0) + Scalar(0.1)) * (q[0] * x(0) + Scalar(0.1)));
        if(q[1] == Scalar(1) || abs(x(1)) <= zero_threshold)
            jac(1, 1) = Scalar(4) * x(1);
        else
            jac(1, 1) = Scalar(2) * (Scalar(1) + q[1]) * x(1);
        return jac;
    };

    auto guard = [](const DenseVector<Scalar>& x, const DilationParams<Scalar>& q,
                    Scalar zero_threshold) {
        using std::abs;
        const Scalar pole(-0.1);
        return abs(x(0) - pole) > zero_threshold && abs(q[0] * x(0) - pole) > zero_threshold;
    };

    return ResidualProblem<Scalar>("example2", std::move(field), jacobian, guard);
}

/// f = (x1 - 0.4, x2 - 8, x1^2 + x2^2 - 1); a large-residual problem, n = 2, m = 3.
template<typename Scalar = double>
ResidualProblem<Scalar> builtin_example3()
{
    VectorField<Scalar> field(2, 3, [](const DenseVector<Scalar>& x) {
        DenseVector<Scalar> r(3);
        r(0) = x(0) - Scalar(0.4);
        r(1) = x(1) - Scalar(8);
        r(2) = x(0) * x(0) + x(1) * x(1) - Scalar(1);
        return r;
    });

    // (1 + q_i) x_i is exact for every q_i, including q_i = 1 and x_i = 0.
    auto jacobian = [](const DenseVector<Scalar>& x, const DilationParams<Scalar>& q, Scalar) {
        DenseMatrix<Scalar> jac(3, 2);
        jac << Scalar(1), Scalar(0),
               Scalar(0), Scalar(1),
               (Scalar(1) + q[0]) * x(0), (Scalar(1) + q[1]) * x(1);
        return jac;
    };

    return ResidualProblem<Scalar>("example3", std::move(field), jacobian);
}

} // namespace qgn
