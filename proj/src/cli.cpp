#include "qgn/cli.hpp"

#include "qgn/nelder_mead.hpp"
#include "qgn/problem_file.hpp"
#include "qgn/registry.hpp"
#include "qgn/report.hpp"
#include "qgn/solver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iomanip>
#include <locale>
#include <optional>
#include <ostream>
#include <sstream>

namespace qgn::cli {

namespace {

class UsageError : public Error
{
public:
    using Error::Error;
};

struct CommonOptions
{
    std::string problem;
    std::string file;
    std::string q_list;
    std::string x0;
    std::optional<double> tol;
    int max_iter = 100;
    double alpha = 1.0;
    std::string jacobian = "analytic";
    std::string stop_on = "step";
    std::string format = "table";
    std::string output;
};

void add_common(CLI::App& cmd, CommonOptions& o, bool q_required)
{
    auto* problem = cmd.add_option("--problem", o.problem, "Built-in problem (example1, example2, example3)");
    auto* file = cmd.add_option("--file", o.file, "Problem file");
    problem->excludes(file);
    auto* q = cmd.add_option("--q", o.q_list, "Dilation parameter(s), comma separated, each in (0,1]");
    if(q_required)
        q->required();
    cmd.add_option("--x0", o.x0, "Initial point, comma separated (default: the problem's own)");
    cmd.add_option("--tol", o.tol, "Stopping tolerance (default: problem's reference tolerance, else 1e-6)");
    cmd.add_option("--max-iter", o.max_iter, "Maximum number of iterations")->capture_default_str();
    cmd.add_option("--alpha", o.alpha, "Step factor in (0,1]")->capture_default_str();
    cmd.add_option("--jacobian", o.jacobian, "analytic (when available) or numeric")
        ->check(CLI::IsMember({"analytic", "numeric"}))
        ->capture_default_str();
    cmd.add_option("--stop-on", o.stop_on, "Stopping quantity: step or sse")
        ->check(CLI::IsMember({"step", "sse"}))
        ->capture_default_str();
    cmd.add_option("--format", o.format, "csv, json or table")
        ->check(CLI::IsMember({"csv", "json", "table"}))
        ->capture_default_str();
    cmd.add_option("--output", o.output, "Write to this path instead of stdout");
}

struct LoadedProblem
{
    ResidualProblem<double> problem;
    std::optional<DenseVector<double>> default_x0;
    double default_tol;
};

LoadedProblem load(const CommonOptions& o)
{
    if(o.problem.empty() == o.file.empty())
        throw UsageError("exactly one of --problem or --file is required");
    if(!o.problem.empty())
    {
        auto entry = find_builtin(o.problem);
        if(!entry)
        {
            std::string names;
            for(const auto& n : builtin_names())
                names += (names.empty() ? "" : ", ") + n;
            throw UsageError("unknown problem '" + o.problem + "' (available: " + names + ")");
        }
        return {entry->problem, entry->default_x0, entry->default_tol};
    }
    ProblemFile pf = load_problem_file(o.file);
    return {pf.to_problem(), pf.x0, 1e-6};
}

DenseVector<double> initial_point(const CommonOptions& o, const LoadedProblem& lp)
{
    if(o.x0.empty())
    {
        if(!lp.default_x0)
            throw UsageError("no initial point: pass --x0 or set x0 in the problem file");
        return *lp.default_x0;
    }
    const std::vector<double> values = parse_number_list(o.x0);
    if(values.size() != static_cast<std::size_t>(lp.problem.n()))
        throw UsageError("--x0 has " + std::to_string(values.size()) + " entries, problem has n = " +
                         std::to_string(lp.problem.n()));
    return Eigen::Map<const DenseVector<double>>(values.data(), lp.problem.n());
}

std::vector<double> q_values(const std::string& text)
{
    std::vector<double> qs = parse_number_list(text);
    for(double q : qs)
        if(!(q > 0.0 && q <= 1.0))
            throw UsageError("every q must lie in (0, 1]");
    return qs;
}

SolveConfig<double> make_config(const CommonOptions& o, const LoadedProblem& lp)
{
    SolveConfig<double> cfg;
    cfg.stop_tol = o.tol.value_or(lp.default_tol);
    cfg.max_iter = o.max_iter;
    cfg.alpha = o.alpha;
    cfg.jacobian_mode = o.jacobian == "numeric" ? JacobianMode::ForceNumeric : JacobianMode::AnalyticIfAvailable;
    cfg.stopping_norm = o.stop_on == "sse" ? StoppingNorm::Sse : StoppingNorm::StepNorm;
    cfg.validate();
    return cfg;
}

int exit_code(SolveStatus status)
{
    if(status == SolveStatus::Converged)
        return kConverged;
    if(status == SolveStatus::MaxIterationsReached)
        return kMaxIterations;
    return kSolverError;
}

int worst_exit_code(const std::vector<RunSummary>& runs)
{
    int code = kConverged;
    for(const auto& run : runs)
    {
        const int c = exit_code(run.result.status);
        if(c == kSolverError || (c == kMaxIterations && code == kConverged))
            code = c;
    }
    return code;
}

/// Solves once per q; runs are independent and execute concurrently, results
/// keep the input order.
std::vector<RunSummary> run_sweep(const LoadedProblem& lp, const DenseVector<double>& x0,
                                  const std::vector<double>& qs, const SolveConfig<double>& cfg)
{
    std::vector<std::future<SolveResult<double>>> futures;
    futures.reserve(qs.size());
    for(double q : qs)
    {
        futures.push_back(std::async(std::launch::async, [&lp, &x0, &cfg, q] {
            return q_gauss_newton(lp.problem, x0, DilationParams<double>(lp.problem.n(), q), cfg);
        }));
    }
    std::vector<RunSummary> runs;
    runs.reserve(qs.size());
    for(std::size_t i = 0; i < qs.size(); ++i)
        runs.push_back({lp.problem.name(), qs[i], futures[i].get()});
    return runs;
}

template<typename Body>
int with_output(const CommonOptions& o, std::ostream& out, Body&& body)
{
    if(o.output.empty())
        return body(out);
    std::ofstream file(o.output);
    if(!file)
        throw UsageError("cannot open output file '" + o.output + "'");
    return body(file);
}

int cmd_solve(const CommonOptions& o, std::ostream& out)
{
    const LoadedProblem lp = load(o);
    const auto qs = q_values(o.q_list.empty() ? "1" : o.q_list);
    if(qs.size() != 1)
        throw UsageError("solve takes a single --q value; use sweep for several");
    const DenseVector<double> x0 = initial_point(o, lp);
    const SolveConfig<double> cfg = make_config(o, lp);

    RunSummary run{lp.problem.name(), qs.front(),
                   q_gauss_newton(lp.problem, x0, DilationParams<double>(lp.problem.n(), qs.front()), cfg)};

    return with_output(o, out, [&](std::ostream& os) {
        if(o.format == "csv")
            write_trace_csv(os, run.result, lp.problem.n(), lp.problem.m());
        else if(o.format == "json")
            os << summary_json(run);
        else
            write_trace_table(os, run, lp.problem.n(), lp.problem.m());
        return exit_code(run.result.status);
    });
}

int cmd_sweep(const CommonOptions& o, std::ostream& out)
{
    const LoadedProblem lp = load(o);
    const auto qs = q_values(o.q_list);
    const DenseVector<double> x0 = initial_point(o, lp);
    const SolveConfig<double> cfg = make_config(o, lp);
    const auto runs = run_sweep(lp, x0, qs, cfg);

    return with_output(o, out, [&](std::ostream& os) {
        if(o.format == "csv")
            write_sweep_csv(os, runs, lp.problem.n(), lp.problem.m());
        else if(o.format == "json")
            os << sweep_json(runs);
        else
        {
            if(runs.size() == 1)
            {
                write_trace_table(os, runs.front(), lp.problem.n(), lp.problem.m());
                os << '\n';
            }
            write_sweep_table(os, runs, lp.problem.n(), lp.problem.m());
        }
        return worst_exit_code(runs);
    });
}

struct CompareOptions
{
    double nm_tol = 1e-8;
    int nm_max_iter = 1000;
};

int cmd_compare_nm(const CommonOptions& o, const CompareOptions& c, std::ostream& out)
{
    const LoadedProblem lp = load(o);
    if(lp.problem.m() != 1)
        throw UsageError("compare-nm needs a scalar problem (m = 1); '" + lp.problem.name() + "' has m = " +
                         std::to_string(lp.problem.m()));
    const auto qs = q_values(o.q_list.empty() ? "1" : o.q_list);
    const DenseVector<double> x0 = initial_point(o, lp);
    const SolveConfig<double> cfg = make_config(o, lp);
    const auto gn_runs = run_sweep(lp, x0, qs, cfg);

    SolveConfig<double> nm_cfg;
    nm_cfg.stop_tol = c.nm_tol;
    nm_cfg.max_iter = c.nm_max_iter;
    nm_cfg.validate();
    const auto& problem = lp.problem;
    RunSummary nm{problem.name(), std::nullopt,
                  nelder_mead([&problem](const DenseVector<double>& x) { return problem.residuals(x)(0); }, x0,
                              nm_cfg)};

    return with_output(o, out, [&](std::ostream& os) {
        if(o.format == "json")
        {
            os << "{\n\"q_gauss_newton\": " << sweep_json(gn_runs) << ",\n\"nelder_mead\": " << summary_json(nm)
               << "}\n";
        }
        else
        {
            std::ostringstream ss;
            ss.imbue(std::locale::classic());
            const char* sep = o.format == "csv" ? "," : "";
            const int w = o.format == "csv" ? 0 : 14;
            ss << std::setw(w) << "method" << sep << std::setw(w) << "q" << sep << std::setw(w) << "status" << sep
               << std::setw(w) << "iterations" << sep << std::setw(w) << "x_final" << sep << std::setw(w)
               << "f_final" << '\n';
            auto row = [&](const std::string& method, const std::string& q, const SolveResult<double>& r) {
                std::ostringstream xs, fs;
                xs.imbue(std::locale::classic());
                fs.imbue(std::locale::classic());
                for(Index i = 0; i < r.final_x.size(); ++i)
                    xs << (i ? " " : "") << std::fixed << std::setprecision(6) << r.final_x(i);
                fs << std::scientific << std::setprecision(6) << (r.final_residuals.size() ? r.final_residuals(0) : 0.0);
                ss << std::setw(w) << method << sep << std::setw(w) << q << sep << std::setw(w) << to_string(r.status)
                   << sep << std::setw(w) << r.iterations << sep << std::setw(w) << xs.str() << sep << std::setw(w)
                   << fs.str() << '\n';
            };
            for(const auto& run : gn_runs)
            {
                std::ostringstream q;
                q.imbue(std::locale::classic());
                q << *run.q;
                row("q-GN", q.str(), run.result);
            }
            row("Nelder-Mead", "-", nm.result);
            os << ss.str();
        }
        return worst_exit_code(gn_runs);
    });
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"q-Gauss-Newton nonlinear least squares"};
    app.name("qgn");
    app.require_subcommand(1);

    CommonOptions solve_opts, sweep_opts, compare_opts;
    CompareOptions nm_opts;
    auto* solve = app.add_subcommand("solve", "Run one q-Gauss-Newton solve and print its trace");
    add_common(*solve, solve_opts, false);
    auto* sweep = app.add_subcommand("sweep", "Solve once per q value and print a summary");
    add_common(*sweep, sweep_opts, true);
    auto* compare = app.add_subcommand("compare-nm", "Compare q-Gauss-Newton with Nelder-Mead on a scalar problem");
    add_common(*compare, compare_opts, false);
    compare->add_option("--nm-tol", nm_opts.nm_tol, "Nelder-Mead simplex tolerance")->capture_default_str();
    compare->add_option("--nm-max-iter", nm_opts.nm_max_iter, "Nelder-Mead iteration limit")->capture_default_str();

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.push_back("qgn");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for(auto& s : storage)
        argv.push_back(s.data());

    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch(const CLI::CallForHelp&)
    {
        const auto parsed = app.get_subcommands();
        out << (parsed.empty() ? app.help() : parsed.front()->help("qgn"));
        return kConverged;
    }
    catch(const CLI::ParseError& e)
    {
        err << "qgn: " << e.what() << '\n';
        return kUsageError;
    }

    try
    {
        if(solve->parsed())
            return cmd_solve(solve_opts, out);
        if(sweep->parsed())
            return cmd_sweep(sweep_opts, out);
        return cmd_compare_nm(compare_opts, nm_opts, out);
    }
    catch(const Error& e)
    {
        err << "qgn: " << e.what() << '\n';
        return kUsageError;
    }
}

} // namespace qgn::cli
