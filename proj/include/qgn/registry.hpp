#pragma once

#include "qgn/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qgn {

/// A built-in problem together with its reference start and step tolerance.
struct RegisteredProblem
{
    ResidualProblem<double> problem;
    DenseVector<double> default_x0;
    double default_tol;
    std::string description;
};

/// Built-ins keyed by name: "example1", "example2", "example3".
const std::vector<RegisteredProblem>& builtin_problems();

std::optional<RegisteredProblem> find_builtin(std::string_view name);

std::vector<std::string> builtin_names();

} // namespace qgn
