#pragma once

// Solver-level properties shared by the unit tests and the acceptance runner.

#include "oracles.hpp"

#include "qgn/registry.hpp"
#include "qgn/solver.hpp"

#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace solver_props {

struct Outcome
{
    std::string name;
    bool ok = true;
    std::string detail;
};

inline bool same_trace(const qgn::SolveResult<double>& a, const qgn::SolveResult<double>& b)
{
    if(a.status != b.status || a.iterations != b.iterations || a.trace.size() != b.trace.size())
        return false;
    for(std::size_t k = 0; k < a.trace.size(); ++k)
    {
        const auto& ra = a.trace[k];
        const auto& rb = b.trace[k];
        if(ra.k != rb.k || ra.x != rb.x || ra.residuals != rb.residuals || ra.sse != rb.sse ||
           ra.step_norm != rb.step_norm)
            return false;
    }
    return true;
}

inline qgn::SolveConfig<double> config_for(const qgn::RegisteredProblem& entry,
                                           qgn::JacobianMode mode = qgn::JacobianMode::AnalyticIfAvailable)
{
    qgn::SolveConfig<double> cfg;
    cfg.stop_tol = entry.default_tol;
    cfg.max_iter = 100;
    cfg.jacobian_mode = mode;
    return cfg;
}

// q = 1 q-GN against classical GN, both Jacobian modes, bit for bit.
inline Outcome classical_equivalence()
{
    Outcome out{"q=1 q-GN equals classical GN"};
    for(const auto& entry : qgn::builtin_problems())
        for(auto mode : {qgn::JacobianMode::AnalyticIfAvailable, qgn::JacobianMode::ForceNumeric})
        {
            const auto cfg = config_for(entry, mode);
            const auto a = qgn::q_gauss_newton(entry.problem, entry.default_x0,
                                               qgn::DilationParams<double>(entry.problem.n(), 1.0), cfg);
            const auto b = qgn::gauss_newton(entry.problem, entry.default_x0, cfg);
            if(!same_trace(a, b) || a.trace.empty())
            {
                out.ok = false;
                out.detail += entry.problem.name() + " ";
            }
        }
    return out;
}

// Linear residuals Ax - b: the first iterate is the least-squares solution and
// any second step is a rounding-level correction. With the exact Jacobian A
// the first iterate must match to 1e-10; the difference-quotient Jacobian
// carries O(1e-8) truncation and rounding error, so it gets 1e-6.
inline Outcome linear_one_step(int count, std::uint64_t seed)
{
    Outcome out{"linear problems converge in one step"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> un(1, 4), extra(0, 2);
    int worst_iters = 0;
    double worst_exact = 0.0, worst_numeric = 0.0;
    for(int t = 0; t < count; ++t)
    {
        const int n = un(rng), m = std::min(6, n + extra(rng));
        const oracle::Mat a = oracle::well_conditioned(rng, m, n);
        const oracle::Vec b = oracle::random_vector(rng, m, -3.0, 3.0);
        const oracle::Vec x0 = oracle::random_vector(rng, n, -2.0, 2.0);
        qgn::VectorField<double> field(n, m, [a, b](const oracle::Vec& x) { return oracle::Vec(a * x - b); });
        const qgn::ResidualProblem<double> numeric("linear", field);
        const qgn::ResidualProblem<double> exact_jac(
            "linear", field, [a](const oracle::Vec&, const qgn::DilationParams<double>&, double) { return a; });
        const oracle::Vec exact = x0 + oracle::normal_equations_step(a, oracle::Vec(a * x0 - b));
        for(double q : {0.5, 0.9, 0.99, 0.9995, 1.0})
        {
            const qgn::DilationParams<double> dil(n, q);
            for(const auto* problem : {&exact_jac, &numeric})
            {
                const auto r = qgn::q_gauss_newton(*problem, x0, dil);
                const double err =
                    r.trace.empty() ? 1e300 : (r.trace.front().x - exact).norm() / std::max(1.0, exact.norm());
                const bool is_exact = problem == &exact_jac;
                double& worst = is_exact ? worst_exact : worst_numeric;
                worst = std::max(worst, err);
                worst_iters = std::max(worst_iters, r.iterations);
                if(!r.converged() || r.iterations > 2 || !(err <= (is_exact ? 1e-10 : 1e-6)))
                    out.ok = false;
            }
        }
    }
    std::ostringstream os;
    os << "worst first-iterate error " << worst_exact << " exact J, " << worst_numeric << " numeric J; max iterations "
       << worst_iters;
    out.detail = os.str();
    return out;
}

// Every accepted step of the reference runs is a descent direction for the
// q-Jacobian model it was computed from.
inline Outcome descent_along_traces()
{
    Outcome out{"descent at every accepted step"};
    int steps = 0, bad = 0;
    for(const auto& entry : qgn::builtin_problems())
        for(double q : {0.9, 0.95, 0.99, 0.9995, 1.0})
        {
            const qgn::DilationParams<double> dil(entry.problem.n(), q);
            const auto r = qgn::q_gauss_newton(entry.problem, entry.default_x0, dil, config_for(entry));
            oracle::Vec prev = entry.default_x0;
            for(const auto& rec : r.trace)
            {
                const oracle::Mat jac = entry.problem.analytic_q_jacobian(prev, dil);
                const oracle::Vec f = entry.problem.residuals(prev);
                const oracle::Vec h = rec.x - prev;
                if((jac.transpose() * f).norm() > 1e-300 && h.norm() > 0.0)
                {
                    ++steps;
                    if(!qgn::descent_check(jac, f, h))
                        ++bad;
                }
                prev = rec.x;
            }
        }
    out.ok = steps > 0 && bad == 0;
    out.detail = std::to_string(bad) + " of " + std::to_string(steps) + " steps not descent";
    return out;
}

inline Outcome step_matches_oracle(int count, std::uint64_t seed)
{
    Outcome out{"GN step matches normal equations"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> un(1, 4), extra(0, 2);
    double worst = 0.0;
    for(int t = 0; t < count; ++t)
    {
        const int n = un(rng), m = n + extra(rng);
        const oracle::Mat j = oracle::well_conditioned(rng, m, n);
        const oracle::Vec f = oracle::random_vector(rng, m);
        const oracle::Vec h = qgn::solve_gn_step(j, f);
        const oracle::Vec ref = oracle::normal_equations_step(j, f);
        worst = std::max(worst, (h - ref).norm() / std::max(1e-300, ref.norm()));
    }
    out.ok = worst <= 1e-8;
    std::ostringstream os;
    os << "worst relative error " << worst;
    out.detail = os.str();
    return out;
}

inline std::vector<Outcome> run_all(std::uint64_t seed = 7)
{
    return {classical_equivalence(), linear_one_step(100, seed), descent_along_traces(),
            step_matches_oracle(100, seed + 1)};
}

} // namespace solver_props
