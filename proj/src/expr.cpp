#include "qgn/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <sstream>
#include <utility>

namespace qgn::expr {

namespace {

constexpr std::array<std::pair<std::string_view, Function>, 6> kFunctions{{
    {"exp", Function::Exp},
    {"sin", Function::Sin},
    {"cos", Function::Cos},
    {"ln", Function::Ln},
    {"sqrt", Function::Sqrt},
    {"abs", Function::Abs},
}};

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for(std::size_t i = 0; i < items.size(); ++i)
    {
        if(i > 0)
            out += i + 1 == items.size() ? " or " : ", ";
        out += items[i];
    }
    return out;
}

std::string describe(std::string_view found)
{
    return found.empty() ? std::string("end of input") : "'" + std::string(found) + "'";
}

class Parser
{
public:
    Parser(std::string_view source, int dimension) : src_(source), dimension_(dimension) { }

    NodePtr parse()
    {
        NodePtr root = expression();
        skip_space();
        if(pos_ < src_.size())
            fail({"operator", "end of input"});
        return root;
    }

private:
    NodePtr expression()
    {
        NodePtr lhs = term();
        for(;;)
        {
            if(accept('+'))
                lhs = make_binary(BinaryOp::Add, lhs, term());
            else if(accept('-'))
                lhs = make_binary(BinaryOp::Sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term()
    {
        NodePtr lhs = unary();
        for(;;)
        {
            if(accept('*'))
                lhs = make_binary(BinaryOp::Mul, lhs, unary());
            else if(accept('/'))
                lhs = make_binary(BinaryOp::Div, lhs, unary());
            else
                return lhs;
        }
    }

    NodePtr unary()
    {
        if(accept('-'))
            return make_negate(unary());
        return power();
    }

    NodePtr power()
    {
        NodePtr base = primary();
        if(accept('^'))
            return make_binary(BinaryOp::Pow, base, unary());
        return base;
    }

    NodePtr primary()
    {
        skip_space();
        if(pos_ >= src_.size())
            fail(primary_expected());

        const char c = src_[pos_];
        if(c == '(')
        {
            ++pos_;
            NodePtr inner = expression();
            expect(')');
            return inner;
        }
        if(std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if(std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return identifier();
        fail(primary_expected());
    }

    NodePtr number()
    {
        const std::size_t start = pos_;
        auto digits = [&] {
            const std::size_t before = pos_;
            while(pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            return pos_ - before;
        };
        std::size_t mantissa = digits();
        if(pos_ < src_.size() && src_[pos_] == '.')
        {
            ++pos_;
            mantissa += digits();
        }
        if(mantissa == 0)
            fail({"digit"});
        if(pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E'))
        {
            ++pos_;
            if(pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
                ++pos_;
            if(digits() == 0)
                fail({"exponent digit"});
        }

        double value = 0.0;
        const char* first = src_.data() + start;
        const char* last = src_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if(ec != std::errc() || ptr != last)
        {
            pos_ = start;
            fail({"number"});
        }
        return make_number(value);
    }

    NodePtr identifier()
    {
        const std::size_t start = pos_;
        while(pos_ < src_.size() &&
              (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);

        for(const auto& [fname, fn] : kFunctions)
        {
            if(name == fname)
            {
                expect('(');
                NodePtr arg = expression();
                expect(')');
                return make_call(fn, arg);
            }
        }

        if(name.size() > 1 && name[0] == 'x' &&
           name.find_first_not_of("0123456789", 1) == std::string_view::npos)
        {
            int index = 0;
            auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
            if(ec != std::errc() || index < 1 || index > dimension_)
                throw VariableOutOfRange(start, ec == std::errc() ? index : -1, dimension_);
            return make_variable(index);
        }
        throw UnknownIdentifier(start, std::string(name));
    }

    std::vector<std::string> primary_expected() const
    {
        return {"number", "variable", "function", "'('", "'-'"};
    }

    void skip_space()
    {
        while(pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if(pos_ < src_.size() && src_[pos_] == c)
        {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if(!accept(c))
            fail({std::string("'") + c + "'"});
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const
    {
        const std::string_view found = pos_ < src_.size() ? src_.substr(pos_, 1) : std::string_view{};
        throw ParseError(pos_, std::move(expected), found);
    }

    std::string_view src_;
    int dimension_;
    std::size_t pos_ = 0;
};

double apply(Function fn, double v)
{
    switch(fn)
    {
    case Function::Exp: return std::exp(v);
    case Function::Sin: return std::sin(v);
    case Function::Cos: return std::cos(v);
    case Function::Ln: return std::log(v);
    case Function::Sqrt: return std::sqrt(v);
    case Function::Abs: return std::abs(v);
    }
    return std::nan("");
}

double evaluate(const Node& node, std::span<const double> x)
{
    struct Visitor
    {
        std::span<const double> x;

        double operator()(const Number& n) const { return n.value; }
        double operator()(const Variable& v) const { return x[static_cast<std::size_t>(v.index - 1)]; }
        double operator()(const Negate& n) const { return -evaluate(*n.operand, x); }
        double operator()(const Call& c) const { return apply(c.function, evaluate(*c.argument, x)); }
        double operator()(const Binary& b) const
        {
            const double l = evaluate(*b.lhs, x);
            const double r = evaluate(*b.rhs, x);
            switch(b.op)
            {
            case BinaryOp::Add: return l + r;
            case BinaryOp::Sub: return l - r;
            case BinaryOp::Mul: return l * r;
            case BinaryOp::Div: return l / r;
            case BinaryOp::Pow: return std::pow(l, r);
            }
            return std::nan("");
        }
    };
    return std::visit(Visitor{x}, node.value);
}

// Binding strength used by the printer; mirrors the grammar levels.
int precedence(const Node& node)
{
    if(const auto* b = std::get_if<Binary>(&node.value))
    {
        switch(b->op)
        {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 4;
        }
    }
    if(std::holds_alternative<Negate>(node.value))
        return 3;
    return 5;
}

void print(const Node& node, std::string& out);

void print_child(const Node& child, bool parenthesize, std::string& out)
{
    if(parenthesize)
        out += '(';
    print(child, out);
    if(parenthesize)
        out += ')';
}

void print(const Node& node, std::string& out)
{
    struct Visitor
    {
        std::string& out;

        void operator()(const Number& n) const
        {
            std::array<char, 64> buf{};
            auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), n.value);
            out.append(buf.data(), ptr);
        }
        void operator()(const Variable& v) const { out += "x" + std::to_string(v.index); }
        void operator()(const Negate& n) const
        {
            out += '-';
            print_child(*n.operand, precedence(*n.operand) < 3, out);
        }
        void operator()(const Call& c) const
        {
            out += function_name(c.function);
            out += '(';
            print(*c.argument, out);
            out += ')';
        }
        void operator()(const Binary& b) const
        {
            if(b.op == BinaryOp::Pow)
            {
                print_child(*b.lhs, precedence(*b.lhs) <= 4, out);
                out += '^';
                print_child(*b.rhs, precedence(*b.rhs) < 3, out);
                return;
            }
            const int level = b.op == BinaryOp::Add || b.op == BinaryOp::Sub ? 1 : 2;
            static constexpr std::array<const char*, 4> symbols{" + ", " - ", " * ", " / "};
            print_child(*b.lhs, precedence(*b.lhs) < level, out);
            out += symbols[static_cast<std::size_t>(b.op)];
            print_child(*b.rhs, precedence(*b.rhs) <= level, out);
        }
    };
    std::visit(Visitor{out}, node.value);
}

} // namespace

NodePtr make_number(double value) { return std::make_shared<const Node>(Node{Number{value}}); }
NodePtr make_variable(int index) { return std::make_shared<const Node>(Node{Variable{index}}); }
NodePtr make_negate(NodePtr operand)
{
    return std::make_shared<const Node>(Node{Negate{std::move(operand)}});
}
NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs)
{
    return std::make_shared<const Node>(Node{Binary{op, std::move(lhs), std::move(rhs)}});
}
NodePtr make_call(Function function, NodePtr argument)
{
    return std::make_shared<const Node>(Node{Call{function, std::move(argument)}});
}

bool same_structure(const Node& a, const Node& b)
{
    if(a.value.index() != b.value.index())
        return false;
    if(const auto* n = std::get_if<Number>(&a.value))
    {
        const double other = std::get<Number>(b.value).value;
        return std::memcmp(&n->value, &other, sizeof(double)) == 0;
    }
    if(const auto* v = std::get_if<Variable>(&a.value))
        return v->index == std::get<Variable>(b.value).index;
    if(const auto* n = std::get_if<Negate>(&a.value))
        return same_structure(*n->operand, *std::get<Negate>(b.value).operand);
    if(const auto* c = std::get_if<Call>(&a.value))
    {
        const auto& o = std::get<Call>(b.value);
        return c->function == o.function && same_structure(*c->argument, *o.argument);
    }
    const auto& x = std::get<Binary>(a.value);
    const auto& y = std::get<Binary>(b.value);
    return x.op == y.op && same_structure(*x.lhs, *y.lhs) && same_structure(*x.rhs, *y.rhs);
}

Expression::Expression(NodePtr root, int dimension) : root_(std::move(root)), dimension_(dimension)
{
    if(!root_)
        throw DomainError("expression has no root");
    if(dimension_ < 1)
        throw DomainError("expression dimension must be positive");
}

double Expression::operator()(std::span<const double> x) const
{
    if(x.size() != static_cast<std::size_t>(dimension_))
        throw DomainError("expression expects " + std::to_string(dimension_) + " variables, got " +
                          std::to_string(x.size()));
    return evaluate(*root_, x);
}

double Expression::operator()(const DenseVector<double>& x) const
{
    return (*this)(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, std::string_view found)
    : Error("syntax error at offset " + std::to_string(offset) + ": expected " + join(expected) +
            ", found " + describe(found)),
      offset_(offset), expected_(std::move(expected))
{ }

UnknownIdentifier::UnknownIdentifier(std::size_t offset, std::string name)
    : ParseError(offset, {"variable", "function"}, name), name_(std::move(name))
{ }

VariableOutOfRange::VariableOutOfRange(std::size_t offset, int index, int dimension)
    : ParseError(offset, {"x1..x" + std::to_string(dimension)},
                 index >= 0 ? "x" + std::to_string(index) : std::string("variable")),
      index_(index)
{ }

Expression parse(std::string_view source, int dimension)
{
    if(dimension < 1)
        throw DomainError("declared dimension must be positive");
    return Expression(Parser(source, dimension).parse(), dimension);
}

double eval(const Expression& expression, std::span<const double> x) { return expression(x); }

std::string to_string(const Node& node)
{
    std::string out;
    print(node, out);
    return out;
}

std::string to_string(const Expression& expression) { return to_string(expression.root()); }

std::string_view function_name(Function function)
{
    for(const auto& [name, fn] : kFunctions)
        if(fn == function)
            return name;
    return "?";
}

ParsedProblem parse_problem(std::span<const std::string> sources, int n)
{
    if(sources.empty())
        throw DomainError("a problem needs at least one residual");
    ParsedProblem problem;
    problem.n = n;
    problem.residuals.reserve(sources.size());
    for(const auto& src : sources)
        problem.residuals.push_back(parse(src, n));
    return problem;
}

ResidualProblem<double> to_vector_field(const ParsedProblem& problem, std::string name)
{
    const auto m = static_cast<Index>(problem.residuals.size());
    VectorField<double> field(problem.n, m, [residuals = problem.residuals](const DenseVector<double>& x) {
        DenseVector<double> r(static_cast<Index>(residuals.size()));
        for(std::size_t i = 0; i < residuals.size(); ++i)
            r(static_cast<Index>(i)) = residuals[i](x);
        return r;
    });
    return ResidualProblem<double>(std::move(name), std::move(field));
}

} // namespace qgn::expr
