#include "qgn/report.hpp"

#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>

namespace qgn {

namespace {

using nlohmann::json;

json to_json(const DenseVector<double>& v)
{
    json arr = json::array();
    for(Index i = 0; i < v.size(); ++i)
        arr.push_back(v(i));
    return arr;
}

json run_to_json(const RunSummary& run)
{
    const auto& r = run.result;
    json trace = json::array();
    for(const auto& rec : r.trace)
    {
        trace.push_back({{"k", rec.k},
                         {"x", to_json(rec.x)},
                         {"residuals", to_json(rec.residuals)},
                         {"sse", rec.sse},
                         {"step_norm", rec.step_norm}});
    }
    json out = {{"problem", run.problem},
                {"q", run.q ? json(*run.q) : json(nullptr)},
                {"status", std::string(to_string(r.status))},
                {"iterations", r.iterations},
                {"final_norm", r.final_norm},
                {"final_sse", r.final_sse},
                {"final_x", to_json(r.final_x)},
                {"final_residuals", to_json(r.final_residuals)},
                {"message", r.message},
                {"trace", std::move(trace)}};
    return out;
}

// Streams always use the classic locale so '.' is the decimal separator.
std::ostringstream classic_stream()
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    return os;
}

// values that round to zero print without a sign
double tidy(double v, int decimals)
{
    return std::abs(v) < 0.5 * std::pow(10.0, -decimals) ? 0.0 : v;
}

double tidy6(double v) { return tidy(v, 6); }

std::string fixed(double v, int decimals)
{
    auto os = classic_stream();
    os << std::fixed << std::setprecision(decimals) << tidy(v, decimals);
    return os.str();
}

std::string sci(double v)
{
    auto os = classic_stream();
    os << std::scientific << std::setprecision(4) << v;
    return os.str();
}

void header_cells(std::ostream& out, Index n, Index m, int width)
{
    for(Index i = 0; i < n; ++i)
        out << std::setw(width) << ("x" + std::to_string(i + 1));
    for(Index i = 0; i < m; ++i)
        out << std::setw(width) << ("f" + std::to_string(i + 1));
}

void value_cells(std::ostream& out, const DenseVector<double>& x, const DenseVector<double>& f,
                 Index n, Index m, int width)
{
    for(Index i = 0; i < n; ++i)
        out << std::setw(width) << (i < x.size() ? fixed(x(i), 4) : "-");
    for(Index i = 0; i < m; ++i)
        out << std::setw(width) << (i < f.size() ? fixed(f(i), 4) : "-");
}

} // namespace

void write_trace_csv(std::ostream& out, const SolveResult<double>& result, Index n, Index m)
{
    auto os = classic_stream();
    os << "k";
    for(Index i = 0; i < n; ++i)
        os << ",x_" << i + 1;
    for(Index i = 0; i < m; ++i)
        os << ",f_" << i + 1;
    os << ",sse,step_norm\n";

    os << std::fixed << std::setprecision(6);
    for(const auto& rec : result.trace)
    {
        os << rec.k;
        for(Index i = 0; i < rec.x.size(); ++i)
            os << ',' << tidy6(rec.x(i));
        for(Index i = 0; i < rec.residuals.size(); ++i)
            os << ',' << tidy6(rec.residuals(i));
        os << ',' << tidy6(rec.sse) << ',' << tidy6(rec.step_norm) << '\n';
    }
    out << os.str();
}

void write_trace_table(std::ostream& out, const RunSummary& run, Index n, Index m)
{
    const auto& r = run.result;
    auto os = classic_stream();
    os << "problem: " << run.problem;
    if(run.q)
        os << "  q=" << *run.q;
    os << "\nstatus: " << to_string(r.status) << "  Iterations = " << r.iterations
       << "  norm = " << sci(r.final_norm) << '\n';
    if(!r.message.empty())
        os << "message: " << r.message << '\n';

    os << std::setw(5) << "k";
    header_cells(os, n, m, 11);
    os << std::setw(12) << "sse" << std::setw(12) << "step_norm" << '\n';
    for(const auto& rec : r.trace)
    {
        os << std::setw(5) << rec.k;
        value_cells(os, rec.x, rec.residuals, n, m, 11);
        os << std::setw(12) << sci(rec.sse) << std::setw(12) << sci(rec.step_norm) << '\n';
    }
    out << os.str();
}

std::string summary_json(const RunSummary& run, int indent) { return run_to_json(run).dump(indent) + "\n"; }

std::string sweep_json(const std::vector<RunSummary>& runs, int indent)
{
    json arr = json::array();
    for(const auto& run : runs)
        arr.push_back(run_to_json(run));
    return arr.dump(indent) + "\n";
}

void write_sweep_table(std::ostream& out, const std::vector<RunSummary>& runs, Index n, Index m)
{
    auto os = classic_stream();
    if(!runs.empty())
        os << "problem: " << runs.front().problem << '\n';
    os << std::setw(9) << "q" << std::setw(19) << "status" << std::setw(12) << "iterations"
       << std::setw(12) << "norm";
    header_cells(os, n, m, 11);
    os << '\n';
    for(const auto& run : runs)
    {
        const auto& r = run.result;
        os << std::setw(9) << (run.q ? fixed(*run.q, 4) : "-") << std::setw(19) << to_string(r.status)
           << std::setw(12) << r.iterations << std::setw(12) << sci(r.final_norm);
        value_cells(os, r.final_x, r.final_residuals, n, m, 11);
        os << '\n';
    }
    out << os.str();
}

void write_sweep_csv(std::ostream& out, const std::vector<RunSummary>& runs, Index n, Index m)
{
    auto os = classic_stream();
    os << "q,status,iterations,final_norm";
    for(Index i = 0; i < n; ++i)
        os << ",x_" << i + 1;
    for(Index i = 0; i < m; ++i)
        os << ",f_" << i + 1;
    os << '\n' << std::fixed << std::setprecision(6);
    for(const auto& run : runs)
    {
        const auto& r = run.result;
        if(run.q)
            os << *run.q;
        os << ',' << to_string(r.status) << ',' << r.iterations << ',' << tidy6(r.final_norm);
        for(Index i = 0; i < n; ++i)
        {
            os << ',';
            if(i < r.final_x.size())
                os << tidy6(r.final_x(i));
        }
        for(Index i = 0; i < m; ++i)
        {
            os << ',';
            if(i < r.final_residuals.size())
                os << tidy6(r.final_residuals(i));
        }
        os << '\n';
    }
    out << os.str();
}

} // namespace qgn
