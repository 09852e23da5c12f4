#pragma once

#include "qgn/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qgn {

/// Derivative-free Nelder-Mead simplex minimisation of a scalar field.
///
/// Standard coefficients: reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2. The initial simplex perturbs each coordinate of x0 by 5%
/// (0.00025 for zero coordinates). Stops once both the simplex diameter
/// (max-norm distance to the best vertex) and the spread of function values
/// are <= stop_tol.
///
/// Records carry residuals = [f(best)] and sse = 1/2 f(best)^2 so the
/// result has the same shape as a least-squares solve; step_norm holds
/// max(diameter, spread).
template<typename Scalar, typename Field>
SolveResult<Scalar> nelder_mead(const Field& f, const DenseVector<Scalar>& x0,
                                const SolveConfig<Scalar>& cfg = {})
{
    cfg.validate();
    const Index n = x0.size();
    if(n < 1)
        throw DomainError("nelder_mead needs at least one coordinate");

    SolveResult<Scalar> result;
    result.final_x = x0;

    struct Vertex
    {
        DenseVector<Scalar> x;
        Scalar value;
    };

    bool failed = false;
    auto eval = [&](const DenseVector<Scalar>& x) {
        const Scalar v = f(x);
        if(!std::isfinite(v))
            failed = true;
        return v;
    };
    auto fail = [&] {
        result.status = SolveStatus::NumericalFailure;
        result.message = "objective not finite";
        return result;
    };

    std::vector<Vertex> simplex;
    simplex.reserve(static_cast<std::size_t>(n + 1));
    simplex.push_back({x0, eval(x0)});
    for(Index i = 0; i < n; ++i)
    {
        DenseVector<Scalar> v = x0;
        v(i) = v(i) != Scalar(0) ? Scalar(1.05) * v(i) : Scalar(0.00025);
        simplex.push_back({v, eval(v)});
    }
    if(failed)
        return fail();

    auto order = [&] {
        std::stable_sort(simplex.begin(), simplex.end(),
                         [](const Vertex& a, const Vertex& b) { return a.value < b.value; });
    };
    auto spread = [&] {
        Scalar diameter(0), values(0);
        for(std::size_t i = 1; i < simplex.size(); ++i)
        {
            diameter = std::max(diameter, (simplex[i].x - simplex[0].x).cwiseAbs().maxCoeff());
            values = std::max(values, std::abs(simplex[i].value - simplex[0].value));
        }
        return std::max(diameter, values);
    };
    auto record = [&](int k, Scalar norm) {
        DenseVector<Scalar> r(1);
        r(0) = simplex[0].value;
        const Scalar sse = Scalar(0.5) * r(0) * r(0);
        result.trace.push_back({k, simplex[0].x, r, sse, norm});
        result.iterations = k;
        result.final_x = simplex[0].x;
        result.final_residuals = r;
        result.final_sse = sse;
        result.final_norm = norm;
    };

    order();
    {
        DenseVector<Scalar> r(1);
        r(0) = simplex[0].value;
        result.final_x = simplex[0].x;
        result.final_residuals = r;
        result.final_sse = Scalar(0.5) * r(0) * r(0);
        result.final_norm = spread();
    }
    if(result.final_norm <= cfg.stop_tol)
    {
        result.status = SolveStatus::Converged;
        return result;
    }

    const std::size_t worst = static_cast<std::size_t>(n);
    for(int k = 1; k <= cfg.max_iter; ++k)
    {
        DenseVector<Scalar> centroid = DenseVector<Scalar>::Zero(n);
        for(std::size_t i = 0; i < worst; ++i)
            centroid += simplex[i].x;
        centroid /= static_cast<Scalar>(n);

        const DenseVector<Scalar> reflected = centroid + (centroid - simplex[worst].x);
        const Scalar fr = eval(reflected);
        if(failed)
            return fail();

        bool shrink = false;
        if(fr < simplex[0].value)
        {
            const DenseVector<Scalar> expanded = centroid + Scalar(2) * (centroid - simplex[worst].x);
            const Scalar fe = eval(expanded);
            if(failed)
                return fail();
            simplex[worst] = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
        }
        else if(fr < simplex[worst - 1].value)
        {
            simplex[worst] = {reflected, fr};
        }
        else if(fr < simplex[worst].value)
        {
            const DenseVector<Scalar> outside = centroid + Scalar(0.5) * (reflected - centroid);
            const Scalar fc = eval(outside);
            if(failed)
                return fail();
            if(fc <= fr)
                simplex[worst] = {outside, fc};
            else
                shrink = true;
        }
        else
        {
            const DenseVector<Scalar> inside = centroid + Scalar(0.5) * (simplex[worst].x - centroid);
            const Scalar fc = eval(inside);
            if(failed)
                return fail();
            if(fc < simplex[worst].value)
                simplex[worst] = {inside, fc};
            else
                shrink = true;
        }

        if(shrink)
        {
            for(std::size_t i = 1; i < simplex.size(); ++i)
            {
                simplex[i].x = simplex[0].x + Scalar(0.5) * (simplex[i].x - simplex[0].x);
                simplex[i].value = eval(simplex[i].x);
            }
            if(failed)
                return fail();
        }

        order();
        const Scalar norm = spread();
        record(k, norm);
        if(norm <= cfg.stop_tol)
        {
            result.status = SolveStatus::Converged;
            return result;
        }
    }
    result.status = SolveStatus::MaxIterationsReached;
    return result;
}

} // namespace qgn
