#pragma once

#include "qgn/solver.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qgn {

/// One labelled solve, as emitted by the CLI.
struct RunSummary
{
    std::string problem;
    std::optional<double> q; ///< empty for derivative-free runs
    SolveResult<double> result;
};

/// CSV trace: header `k,x_1..x_n,f_1..f_m,sse,step_norm`, one row per
/// iteration, reals in fixed notation with 6 decimals.
void write_trace_csv(std::ostream& out, const SolveResult<double>& result, Index n, Index m);

/// Human-readable run report (4 decimals, as in the reference tables).
void write_trace_table(std::ostream& out, const RunSummary& run, Index n, Index m);

/// JSON run summary: problem, q, status, iterations, final_norm, final_sse,
/// final_x, final_residuals, message, trace. See docs/summary.schema.json.
std::string summary_json(const RunSummary& run, int indent = 2);

/// JSON array of run summaries.
std::string sweep_json(const std::vector<RunSummary>& runs, int indent = 2);

/// One summary row per run: q, status, iterations, final norm, final x, final residuals.
void write_sweep_table(std::ostream& out, const std::vector<RunSummary>& runs, Index n, Index m);
void write_sweep_csv(std::ostream& out, const std::vector<RunSummary>& runs, Index n, Index m);

} // namespace qgn
