#pragma once

// q-Jacobians of the built-in problems against a central-difference
// classical Jacobian, at q = 1 - 1e-4 and at q = 1.

#include "oracles.hpp"

#include "qgn/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace classical_limit {

struct Outcome
{
    std::string problem;
    double q = 1.0;
    int points = 0;
    int failed_entries = 0;
    double worst = 0.0; // worst tolerance-normalised entry error

    bool ok() const { return points > 0 && failed_entries == 0; }
};

// Sampling boxes. Example 1 leaves out two short windows around the zeros of
// f' (near 1.35 and 3), where an entrywise relative bound at q = 1 - 1e-4 is
// meaningless; Example 2 stays 0.05 away from its pole.
inline bool valid_point(const std::string& name, const oracle::Vec& x)
{
    if(name == "example1")
        return !(x(0) > 1.338 && x(0) < 1.365) && !(x(0) > 2.970 && x(0) < 3.030);
    if(name == "example2")
        return std::abs(x(0) + 0.1) >= 0.05;
    return true;
}

inline oracle::Vec draw_point(std::mt19937_64& rng, const std::string& name, Eigen::Index n)
{
    for(;;)
    {
        oracle::Vec x = name == "example1" ? oracle::random_vector(rng, n, -4.0, 6.0)
                      : name == "example2" ? oracle::random_vector(rng, n, -1.0, 1.0) * 2.0
                                           : oracle::random_vector(rng, n, -5.0, 5.0);
        if(valid_point(name, x))
            return x;
    }
}

// Entry passes when within rel (relative) or 1e-6 (absolute, near-zero entries).
inline double entry_error(double got, double ref, double rel)
{
    const double abs_err = std::abs(got - ref);
    if(abs_err == 0.0)
        return 0.0;
    const double by_abs = abs_err / 1e-6;
    return ref == 0.0 ? by_abs : std::min(abs_err / (rel * std::abs(ref)), by_abs);
}

// Checks the analytic q-Jacobian and the numeric one.
inline Outcome check(const qgn::ResidualProblem<double>& problem, double q, double rel, int points,
                     std::uint64_t seed)
{
    Outcome out{problem.name(), q};
    std::mt19937_64 rng(seed);
    auto f = [&](const oracle::Vec& x) { return problem.residuals(x); };
    const qgn::DilationParams<double> dil(problem.n(), q);
    for(int p = 0; p < points; ++p)
    {
        const oracle::Vec x = draw_point(rng, problem.name(), problem.n());
        const oracle::Mat ref = oracle::fd_jacobian(f, x);
        std::vector<oracle::Mat> candidates{qgn::q_jacobian(problem.field(), x, dil)};
        if(problem.has_analytic_q_jacobian())
            candidates.push_back(problem.analytic_q_jacobian(x, dil));
        for(const auto& jac : candidates)
            for(Eigen::Index i = 0; i < jac.rows(); ++i)
                for(Eigen::Index j = 0; j < jac.cols(); ++j)
                {
                    const double e = entry_error(jac(i, j), ref(i, j), rel);
                    out.worst = std::max(out.worst, e);
                    if(!(e <= 1.0))
                        ++out.failed_entries;
                }
        ++out.points;
    }
    return out;
}

inline std::vector<Outcome> run_all(int points = 50, std::uint64_t seed = 77)
{
    std::vector<Outcome> outs;
    const std::vector<qgn::ResidualProblem<double>> problems{qgn::builtin_example1(), qgn::builtin_example2(),
                                                             qgn::builtin_example3()};
    for(std::size_t k = 0; k < problems.size(); ++k)
    {
        outs.push_back(check(problems[k], 1.0 - 1e-4, 5e-3, points, seed + k));
        outs.push_back(check(problems[k], 1.0, 1e-6, points, seed + 10 + k));
    }
    return outs;
}

} // namespace classical_limit
