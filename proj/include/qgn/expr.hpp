#pragma once

// Arithmetic expressions over the variables x1..xn.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | 'x' digits | func '(' expr ')' | '(' expr ')'
//   func    := exp | sin | cos | ln | sqrt | abs
//
// '^' binds tighter than unary minus, so "-x1^2" is -(x1^2). There is no
// implicit multiplication.

#include "qgn/error.hpp"
#include "qgn/model.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qgn::expr {

enum class BinaryOp
{
    Add,
    Sub,
    Mul,
    Div,
    Pow,
};

enum class Function
{
    Exp,
    Sin,
    Cos,
    Ln,
    Sqrt,
    Abs,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number
{
    double value;
};

struct Variable
{
    int index; ///< 1-based
};

struct Negate
{
    NodePtr operand;
};

struct Binary
{
    BinaryOp op;
    NodePtr lhs;
    NodePtr rhs;
};

struct Call
{
    Function function;
    NodePtr argument;
};

struct Node
{
    std::variant<Number, Variable, Negate, Binary, Call> value;
};

NodePtr make_number(double value);
NodePtr make_variable(int index);
NodePtr make_negate(NodePtr operand);
NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs);
NodePtr make_call(Function function, NodePtr argument);

/// Structural equality (literals compared bitwise).
bool same_structure(const Node& a, const Node& b);

/// Parsed expression: an immutable tree plus the declared dimension n.
class Expression
{
public:
    Expression(NodePtr root, int dimension);

    const Node& root() const noexcept { return *root_; }
    const NodePtr& root_ptr() const noexcept { return root_; }
    int dimension() const noexcept { return dimension_; }

    /// Real evaluation at x (length n). Domain errors surface as NaN or
    /// infinity, never as exceptions.
    double operator()(std::span<const double> x) const;
    double operator()(const DenseVector<double>& x) const;

private:
    NodePtr root_;
    int dimension_;
};

/// Syntax error at a byte offset, with the set of tokens that would have
/// been accepted there.
class ParseError : public Error
{
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, std::string_view found);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class UnknownIdentifier : public ParseError
{
public:
    UnknownIdentifier(std::size_t offset, std::string name);
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class VariableOutOfRange : public ParseError
{
public:
    VariableOutOfRange(std::size_t offset, int index, int dimension);
    int index() const noexcept { return index_; }

private:
    int index_;
};

Expression parse(std::string_view source, int dimension);

double eval(const Expression& expression, std::span<const double> x);

/// Renders an expression that parses back to the same tree.
std::string to_string(const Node& node);
std::string to_string(const Expression& expression);

std::string_view function_name(Function function);

/// n plus m residual expressions over x1..xn.
struct ParsedProblem
{
    int n = 0;
    std::vector<Expression> residuals;
};

/// Parses each source with dimension n.
ParsedProblem parse_problem(std::span<const std::string> sources, int n);

/// Wraps a parsed problem as a ResidualProblem (numeric q-Jacobian only, no domain guard).
ResidualProblem<double> to_vector_field(const ParsedProblem& problem, std::string name = "parsed");

} // namespace qgn::expr
