#pragma once

// Line-oriented problem files:
//
//   # Powell's badly scaled problem
//   name     = powell
//   n        = 2
//   residual = x1
//   residual = 10*x1/(x1 + 0.1) + 2*x2^2
//   x0       = -1, 1
//   notes    = optional free text (repeatable)
//
// Blank lines and lines starting with '#' are ignored. `residual` is
// repeatable and defines m in order of appearance; expressions use the
// grammar of qgn/expr.hpp with the declared n.

#include "qgn/error.hpp"
#include "qgn/expr.hpp"
#include "qgn/model.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qgn {

struct ProblemFile
{
    std::string name;
    int n = 0;
    std::vector<std::string> residual_sources;
    expr::ParsedProblem parsed;
    std::optional<DenseVector<double>> x0;
    std::string notes;

    ResidualProblem<double> to_problem() const;
};

/// Malformed problem file. line and column are 1-based; column 0 means the
/// error concerns the file as a whole.
class ProblemFileError : public Error
{
public:
    ProblemFileError(std::size_t line, std::size_t column, const std::string& message);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

ProblemFile parse_problem_file(std::string_view text);
ProblemFile load_problem_file(const std::filesystem::path& path);

/// Comma-separated reals ("1, 2.5,-3e-2"). Throws DomainError on malformed input.
std::vector<double> parse_number_list(std::string_view text);

} // namespace qgn
