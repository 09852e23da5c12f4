#include "qgn/problem_file.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace qgn {

namespace {

std::string_view trim(std::string_view s)
{
    while(!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while(!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string location(std::size_t line, std::size_t column)
{
    std::string out = "line " + std::to_string(line);
    if(column > 0)
        out += ", column " + std::to_string(column);
    return out;
}

} // namespace

ProblemFileError::ProblemFileError(std::size_t line, std::size_t column, const std::string& message)
    : Error(line > 0 ? location(line, column) + ": " + message : message), line_(line), column_(column)
{ }

std::vector<double> parse_number_list(std::string_view text)
{
    std::vector<double> values;
    std::size_t start = 0;
    for(;;)
    {
        const std::size_t comma = text.find(',', start);
        const std::string_view item =
            trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        double value = 0.0;
        const char* first = item.data();
        const char* last = item.data() + item.size();
        if(!item.empty() && *first == '+')
            ++first;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if(item.empty() || ec != std::errc() || ptr != last)
            throw DomainError("malformed number '" + std::string(item) + "' in list '" + std::string(text) + "'");
        values.push_back(value);
        if(comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return values;
}

ProblemFile parse_problem_file(std::string_view text)
{
    struct PendingResidual
    {
        std::string source;
        std::size_t line;
        std::size_t column;
    };

    ProblemFile file;
    std::vector<PendingResidual> pending;
    std::optional<std::pair<std::string, std::size_t>> x0_text;
    std::size_t n_line = 0;
    bool have_name = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while(pos <= text.size())
    {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if(!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        const std::string_view content = trim(line);
        if(content.empty() || content.front() == '#')
            continue;

        const std::size_t eq = line.find('=');
        if(eq == std::string_view::npos)
            throw ProblemFileError(line_no, 1, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        std::string_view raw_value = line.substr(eq + 1);
        std::size_t value_col = eq + 2;
        while(!raw_value.empty() && std::isspace(static_cast<unsigned char>(raw_value.front())))
        {
            raw_value.remove_prefix(1);
            ++value_col;
        }
        const std::string value(trim(raw_value));

        if(key == "name")
        {
            if(have_name)
                throw ProblemFileError(line_no, 1, "duplicate key 'name'");
            if(value.empty())
                throw ProblemFileError(line_no, value_col, "empty name");
            file.name = value;
            have_name = true;
        }
        else if(key == "n")
        {
            if(n_line != 0)
                throw ProblemFileError(line_no, 1, "duplicate key 'n'");
            int n = 0;
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
            if(value.empty() || ec != std::errc() || ptr != value.data() + value.size() || n < 1)
                throw ProblemFileError(line_no, value_col, "n must be a positive integer");
            file.n = n;
            n_line = line_no;
        }
        else if(key == "residual")
        {
            if(value.empty())
                throw ProblemFileError(line_no, value_col, "empty residual expression");
            pending.push_back({value, line_no, value_col});
        }
        else if(key == "x0")
        {
            if(x0_text)
                throw ProblemFileError(line_no, 1, "duplicate key 'x0'");
            x0_text.emplace(value, line_no);
        }
        else if(key == "notes")
        {
            if(!file.notes.empty())
                file.notes += '\n';
            file.notes += value;
        }
        else
        {
            throw ProblemFileError(line_no, 1, "unknown key '" + key + "'");
        }
    }

    if(n_line == 0)
        throw ProblemFileError(0, 0, "problem file does not declare n");
    if(pending.empty())
        throw ProblemFileError(0, 0, "problem file declares no residual");
    if(!have_name)
        file.name = "file";

    file.parsed.n = file.n;
    for(const auto& r : pending)
    {
        try
        {
            file.parsed.residuals.push_back(expr::parse(r.source, file.n));
        }
        catch(const expr::ParseError& e)
        {
            throw ProblemFileError(r.line, r.column + e.offset(),
                                   "in residual '" + r.source + "': " + e.what());
        }
        file.residual_sources.push_back(r.source);
    }
    if(file.parsed.residuals.size() < static_cast<std::size_t>(file.n))
        throw ProblemFileError(0, 0, "problem needs at least n residuals (m >= n)");

    if(x0_text)
    {
        std::vector<double> values;
        try
        {
            values = parse_number_list(x0_text->first);
        }
        catch(const DomainError& e)
        {
            throw ProblemFileError(x0_text->second, 0, e.what());
        }
        if(values.size() != static_cast<std::size_t>(file.n))
            throw ProblemFileError(x0_text->second, 0,
                                   "x0 has " + std::to_string(values.size()) + " entries, expected " +
                                       std::to_string(file.n));
        file.x0 = Eigen::Map<const DenseVector<double>>(values.data(), file.n);
    }
    return file;
}

ProblemFile load_problem_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if(!in)
        throw ProblemFileError(0, 0, "cannot open problem file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem_file(buffer.str());
}

ResidualProblem<double> ProblemFile::to_problem() const { return expr::to_vector_field(parsed, name); }

} // namespace qgn
