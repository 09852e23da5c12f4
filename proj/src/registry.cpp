#include "qgn/registry.hpp"

namespace qgn {

namespace {

DenseVector<double> vec(std::initializer_list<double> values)
{
    DenseVector<double> v(static_cast<Index>(values.size()));
    Index i = 0;
    for(double x : values)
        v(i++) = x;
    return v;
}

} // namespace

const std::vector<RegisteredProblem>& builtin_problems()
{
    // Tolerances are on the step norm and reproduce the reference iteration counts.
    static const std::vector<RegisteredProblem> problems{
        {builtin_example1<double>(), vec({2.1}), 1e-3,
         "f(x) = 2 - (exp(-x^2) + 2 exp(-(x-3)^2))"},
        {builtin_example2<double>(), vec({-1.0, 1.0}), 1e-5,
         "Powell: f = (x1, 10 x1/(x1+0.1) + 2 x2^2)"},
        {builtin_example3<double>(), vec({0.0, 0.0}), 1e-6,
         "f = (x1 - 0.4, x2 - 8, x1^2 + x2^2 - 1)"},
    };
    return problems;
}

std::optional<RegisteredProblem> find_builtin(std::string_view name)
{
    for(const auto& entry : builtin_problems())
        if(entry.problem.name() == name)
            return entry;
    return std::nullopt;
}

std::vector<std::string> builtin_names()
{
    std::vector<std::string> names;
    for(const auto& entry : builtin_problems())
        names.push_back(entry.problem.name());
    return names;
}

} // namespace qgn
