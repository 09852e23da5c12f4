#pragma once

#include "qgn/error.hpp"
#include "qgn/linalg.hpp"
#include "qgn/model.hpp"
#include "qgn/qcalc.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qgn {

enum class JacobianMode
{
    AnalyticIfAvailable,
    ForceNumeric,
};

enum class StoppingNorm
{
    StepNorm, ///< ||h||_2 of the step just taken
    Sse,      ///< F(x) = 1/2 ||f(x)||^2 at the new iterate
};

template<typename Scalar = double>
struct SolveConfig
{
    Scalar stop_tol = Scalar(1e-6);
    int max_iter = 100;
    Scalar alpha = Scalar(1);
    JacobianMode jacobian_mode = JacobianMode::AnalyticIfAvailable;
    Scalar zero_threshold = Scalar(kDefaultZeroThreshold);
    StoppingNorm stopping_norm = StoppingNorm::StepNorm;

    void validate() const
    {
        if(!(stop_tol > Scalar(0)))
            throw DomainError("stop_tol must be positive");
        if(max_iter < 1)
            throw DomainError("max_iter must be at least 1");
        if(!(alpha > Scalar(0) && alpha <= Scalar(1)))
            throw DomainError("alpha must lie in (0, 1]");
        if(!(zero_threshold >= Scalar(0)))
            throw DomainError("zero_threshold must be non-negative");
    }
};

enum class SolveStatus
{
    Converged,
    MaxIterationsReached,
    SingularSystem,
    NumericalFailure,
    InvalidPoint,
};

constexpr std::string_view to_string(SolveStatus status)
{
    switch(status)
    {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterationsReached: return "max_iterations";
    case SolveStatus::SingularSystem: return "singular_system";
    case SolveStatus::NumericalFailure: return "numerical_failure";
    case SolveStatus::InvalidPoint: return "invalid_point";
    }
    return "unknown";
}

/// True for the statuses that indicate the solve could not proceed.
constexpr bool is_error(SolveStatus status)
{
    return status == SolveStatus::SingularSystem || status == SolveStatus::NumericalFailure ||
           status == SolveStatus::InvalidPoint;
}

template<typename Scalar = double>
struct IterationRecord
{
    int k;                          ///< 1-based update counter
    DenseVector<Scalar> x;          ///< iterate after the update
    DenseVector<Scalar> residuals;  ///< f(x)
    Scalar sse;                     ///< 1/2 ||f(x)||^2
    Scalar step_norm;               ///< ||h||_2
};

template<typename Scalar = double>
struct SolveResult
{
    SolveStatus status = SolveStatus::MaxIterationsReached;
    DenseVector<Scalar> final_x;
    DenseVector<Scalar> final_residuals;
    Scalar final_sse = Scalar(0);
    Scalar final_norm = Scalar(0);
    int iterations = 0;
    std::vector<IterationRecord<Scalar>> trace;
    std::string message;

    bool converged() const noexcept { return status == SolveStatus::Converged; }
};

/// q-Gauss-Newton iteration x <- x + alpha h, where h minimises ||f + J_q h||.
///
/// J_q comes from the problem's analytic q-Jacobian when one exists and the
/// config allows it, otherwise from the numeric q_jacobian. The iteration
/// stops when the configured norm drops to stop_tol or after max_iter
/// updates. Failures (rank-deficient J_q, non-finite values, iterates outside
/// the problem's domain) end the solve with the matching status; the trace
/// accumulated so far is kept.
template<typename Scalar>
SolveResult<Scalar> q_gauss_newton(const ResidualProblem<Scalar>& problem,
                                   const DenseVector<Scalar>& x0,
                                   const DilationParams<Scalar>& q,
                                   const SolveConfig<Scalar>& cfg = {})
{
    cfg.validate();
    if(x0.size() != problem.n())
        throw DomainError("initial point has length " + std::to_string(x0.size()) + ", expected " +
                          std::to_string(problem.n()));
    if(q.size() != problem.n())
        throw DomainError("dilation length does not match the problem dimension");

    const bool analytic =
        cfg.jacobian_mode == JacobianMode::AnalyticIfAvailable && problem.has_analytic_q_jacobian();

    SolveResult<Scalar> result;
    result.final_x = x0;

    auto fail = [&](SolveStatus status, std::string message) {
        result.status = status;
        result.message = std::move(message);
        return result;
    };

    if(!problem.admits(x0, q, cfg.zero_threshold))
        return fail(SolveStatus::InvalidPoint, "initial point rejected by the domain guard");

    DenseVector<Scalar> x = x0;
    DenseVector<Scalar> fx = problem.residuals(x);
    if(!fx.allFinite())
        return fail(SolveStatus::NumericalFailure, "residuals not finite at the initial point");
    result.final_residuals = fx;
    result.final_sse = Scalar(0.5) * fx.squaredNorm();

    for(int k = 1; k <= cfg.max_iter; ++k)
    {
        DenseVector<Scalar> step;
        try
        {
            const DenseMatrix<Scalar> jac =
                analytic ? problem.analytic_q_jacobian(x, q, cfg.zero_threshold)
                         : q_jacobian(problem.field(), x, q, cfg.zero_threshold);
            step = solve_gn_step(jac, fx);
        }
        catch(const qgn::SingularSystem& e)
        {
            return fail(SolveStatus::SingularSystem, e.what());
        }
        catch(const qgn::NumericalFailure& e)
        {
            return fail(SolveStatus::NumericalFailure, e.what());
        }

        DenseVector<Scalar> next = x + cfg.alpha * step;
        if(!problem.admits(next, q, cfg.zero_threshold))
            return fail(SolveStatus::InvalidPoint,
                        "iterate " + std::to_string(k) + " rejected by the domain guard");
        DenseVector<Scalar> fnext = problem.residuals(next);
        if(!fnext.allFinite())
            return fail(SolveStatus::NumericalFailure,
                        "residuals not finite at iterate " + std::to_string(k));

        const Scalar step_norm = step.norm();
        const Scalar sse = Scalar(0.5) * fnext.squaredNorm();
        const Scalar norm = cfg.stopping_norm == StoppingNorm::StepNorm ? step_norm : sse;

        x = std::move(next);
        fx = std::move(fnext);
        result.trace.push_back({k, x, fx, sse, step_norm});
        result.iterations = k;
        result.final_x = x;
        result.final_residuals = fx;
        result.final_sse = sse;
        result.final_norm = norm;

        if(norm <= cfg.stop_tol)
        {
            result.status = SolveStatus::Converged;
            return result;
        }
    }
    result.status = SolveStatus::MaxIterationsReached;
    return result;
}

/// Classical Gauss-Newton: q_gauss_newton with every q_i = 1.
template<typename Scalar>
SolveResult<Scalar> gauss_newton(const ResidualProblem<Scalar>& problem,
                                 const DenseVector<Scalar>& x0,
                                 const SolveConfig<Scalar>& cfg = {})
{
    return q_gauss_newton(problem, x0, DilationParams<Scalar>::classical(problem.n()), cfg);
}

} // namespace qgn
