#pragma once

// Jackson q-calculus: q-analog numbers, q-differentials, q-derivatives and
// their multivariate forms (q-partial, q-gradient, q-Jacobian), plus the
// truncated q-Taylor expansion of polynomials.
//
// A dilation parameter of exactly 1 is accepted everywhere and selects the
// classical derivative. The classical derivative is also used at points whose
// dilated coordinate is within `zero_threshold` of 0, where the Jackson
// quotient is undefined.

#include "qgn/error.hpp"
#include "qgn/linalg.hpp"

#include <cmath>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace qgn {

inline constexpr double kDefaultZeroThreshold = 1e-12;

namespace detail {

template<typename Scalar>
void require_dilation(Scalar q)
{
    if(!(q > Scalar(0) && q <= Scalar(1)))
        throw DomainError("dilation parameter q must satisfy 0 < q <= 1, got " +
                          std::to_string(static_cast<double>(q)));
}

template<typename Scalar>
Scalar require_finite(Scalar value, const char* what)
{
    if(!std::isfinite(value))
        throw NumericalFailure(std::string(what) + " evaluated to a non-finite value");
    return value;
}

// Step of the central-difference fallback.
template<typename Scalar>
Scalar fd_step(Scalar x)
{
    using std::abs;
    return std::max(Scalar(1e-8), Scalar(1e-8) * abs(x));
}

template<typename Scalar>
bool use_classical(Scalar x, Scalar q, Scalar zero_threshold)
{
    using std::abs;
    return q == Scalar(1) || abs(x) <= zero_threshold;
}

} // namespace detail

/// Per-coordinate dilation parameters q_i, each in (0, 1].
template<typename Scalar = double>
class DilationParams
{
public:
    /// Broadcasts one q to all n coordinates.
    DilationParams(Index n, Scalar q)
        : values_(DenseVector<Scalar>::Constant(n, q))
    {
        validate();
    }

    explicit DilationParams(DenseVector<Scalar> values)
        : values_(std::move(values))
    {
        validate();
    }

    DilationParams(std::initializer_list<Scalar> values)
        : values_(static_cast<Index>(values.size()))
    {
        Index i = 0;
        for(Scalar v : values)
            values_(i++) = v;
        validate();
    }

    static DilationParams classical(Index n) { return DilationParams(n, Scalar(1)); }

    Index size() const noexcept { return values_.size(); }
    Scalar operator[](Index i) const { return values_(i); }
    const DenseVector<Scalar>& values() const noexcept { return values_; }

    bool is_classical() const { return (values_.array() == Scalar(1)).all(); }

private:
    void validate() const
    {
        if(values_.size() < 1)
            throw DomainError("DilationParams needs at least one coordinate");
        for(Index i = 0; i < values_.size(); ++i)
            detail::require_dilation(values_(i));
    }

    DenseVector<Scalar> values_;
};

// ---------------------------------------------------------------------------
// q-analog numbers

/// [n]_q = (q^n - 1) / (q - 1); exactly n when q = 1.
template<typename Scalar>
Scalar q_number(int n, Scalar q)
{
    detail::require_dilation(q);
    if(n < 0)
        throw DomainError("q_number requires n >= 0");
    if(q == Scalar(1))
        return static_cast<Scalar>(n);
    using std::pow;
    return (pow(q, n) - Scalar(1)) / (q - Scalar(1));
}

/// [n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1.
template<typename Scalar>
Scalar q_factorial(int n, Scalar q)
{
    detail::require_dilation(q);
    if(n < 0)
        throw DomainError("q_factorial requires n >= 0");
    Scalar result(1);
    for(int k = 1; k <= n; ++k)
        result *= q_number(k, q);
    return result;
}

/// Gaussian binomial coefficient [n over j]_q = [n]! / ([j]! [n-j]!).
template<typename Scalar>
Scalar q_binomial(int n, int j, Scalar q)
{
    detail::require_dilation(q);
    if(j < 0 || j > n)
        throw DomainError("q_binomial requires 0 <= j <= n");
    return q_factorial(n, q) / (q_factorial(j, q) * q_factorial(n - j, q));
}

// ---------------------------------------------------------------------------
// Univariate operators

/// d_q f(x) = f(qx) - f(x).
template<typename Scalar, typename Function>
Scalar q_differential(const Function& f, Scalar x, Scalar q)
{
    detail::require_dilation(q);
    return f(q * x) - f(x);
}

/// Jackson derivative (f(x) - f(qx)) / ((1 - q) x).
///
/// Falls back to a central finite difference when q = 1 or |x| <= zero_threshold.
template<typename Scalar, typename Function>
Scalar q_derivative(const Function& f, Scalar x, Scalar q,
                    Scalar zero_threshold = Scalar(kDefaultZeroThreshold))
{
    detail::require_dilation(q);
    if(detail::use_classical(x, q, zero_threshold))
    {
        const Scalar h = detail::fd_step(x);
        const Scalar fp = detail::require_finite(Scalar(f(x + h)), "f");
        const Scalar fm = detail::require_finite(Scalar(f(x - h)), "f");
        return detail::require_finite((fp - fm) / (Scalar(2) * h), "classical derivative");
    }
    const Scalar fx = detail::require_finite(Scalar(f(x)), "f");
    const Scalar fqx = detail::require_finite(Scalar(f(q * x)), "f");
    return detail::require_finite((fx - fqx) / ((Scalar(1) - q) * x), "q-derivative");
}

/// As above, but the classical branch uses the supplied derivative `df`.
template<typename Scalar, typename Function, typename Derivative>
Scalar q_derivative(const Function& f, Scalar x, Scalar q, Scalar zero_threshold,
                    const Derivative& df)
{
    detail::require_dilation(q);
    if(detail::use_classical(x, q, zero_threshold))
        return detail::require_finite(Scalar(df(x)), "derivative");
    return q_derivative(f, x, q, zero_threshold);
}

// ---------------------------------------------------------------------------
// Multivariate operators

/// q-partial derivative of a scalar field with respect to coordinate i,
/// dilating only x_i.
template<typename Scalar, typename Field>
Scalar q_partial(const Field& f, const DenseVector<Scalar>& x, Index i, Scalar q,
                 Scalar zero_threshold = Scalar(kDefaultZeroThreshold))
{
    detail::require_dilation(q);
    if(i < 0 || i >= x.size())
        throw DomainError("q_partial: coordinate index " + std::to_string(i) +
                          " out of range for dimension " + std::to_string(x.size()));

    DenseVector<Scalar> shifted = x;
    if(detail::use_classical(x(i), q, zero_threshold))
    {
        const Scalar h = detail::fd_step(x(i));
        shifted(i) = x(i) + h;
        const Scalar fp = detail::require_finite(Scalar(f(shifted)), "f");
        shifted(i) = x(i) - h;
        const Scalar fm = detail::require_finite(Scalar(f(shifted)), "f");
        return detail::require_finite((fp - fm) / (Scalar(2) * h), "classical partial");
    }
    shifted(i) = q * x(i);
    const Scalar fx = detail::require_finite(Scalar(f(x)), "f");
    const Scalar fq = detail::require_finite(Scalar(f(shifted)), "f");
    return detail::require_finite((fx - fq) / ((Scalar(1) - q) * x(i)), "q-partial");
}

template<typename Scalar, typename Field>
DenseVector<Scalar> q_gradient(const Field& f, const DenseVector<Scalar>& x,
                               const DilationParams<Scalar>& q,
                               Scalar zero_threshold = Scalar(kDefaultZeroThreshold))
{
    if(q.size() != x.size())
        throw DomainError("q_gradient: dilation length does not match dimension");
    DenseVector<Scalar> grad(x.size());
    for(Index i = 0; i < x.size(); ++i)
        grad(i) = q_partial(f, x, i, q[i], zero_threshold);
    return grad;
}

/// m x n matrix of q-partial derivatives D_{q_j, x_j} f_i(x) of a vector field.
///
/// Computed column by column, which needs one evaluation of f at x plus one
/// dilated evaluation per coordinate (two for classical columns).
template<typename Scalar, typename Field>
DenseMatrix<Scalar> q_jacobian(const Field& f, const DenseVector<Scalar>& x,
                               const DilationParams<Scalar>& q,
                               Scalar zero_threshold = Scalar(kDefaultZeroThreshold))
{
    if(q.size() != x.size())
        throw DomainError("q_jacobian: dilation length does not match dimension");

    const DenseVector<Scalar> fx = f(x);
    ensure_finite(fx, "residual vector");
    DenseMatrix<Scalar> jac(fx.size(), x.size());

    DenseVector<Scalar> shifted = x;
    for(Index j = 0; j < x.size(); ++j)
    {
        const Scalar xj = x(j);
        if(detail::use_classical(xj, q[j], zero_threshold))
        {
            const Scalar h = detail::fd_step(xj);
            shifted(j) = xj + h;
            const DenseVector<Scalar> fp = f(shifted);
            shifted(j) = xj - h;
            const DenseVector<Scalar> fm = f(shifted);
            ensure_finite(fp, "residual vector");
            ensure_finite(fm, "residual vector");
            jac.col(j) = (fp - fm) / (Scalar(2) * h);
        }
        else
        {
            shifted(j) = q[j] * xj;
            const DenseVector<Scalar> fq = f(shifted);
            ensure_finite(fq, "residual vector");
            jac.col(j) = (fx - fq) / ((Scalar(1) - q[j]) * xj);
        }
        shifted(j) = xj;
    }
    ensure_finite(jac, "q-Jacobian");
    return jac;
}

// ---------------------------------------------------------------------------
// Polynomials and the q-Taylor expansion

/// Dense polynomial with coefficients in ascending powers.
template<typename Scalar = double>
class Polynomial
{
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { }
    Polynomial(std::initializer_list<Scalar> coeffs) : coeffs_(coeffs) { }

    const std::vector<Scalar>& coefficients() const noexcept { return coeffs_; }

    /// Degree of the stored coefficient list; -1 for the empty polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    Scalar operator()(Scalar x) const
    {
        Scalar acc(0);
        for(auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

private:
    std::vector<Scalar> coeffs_;
};

/// Exact q-derivative of a polynomial: a_k x^k maps to a_k [k]_q x^(k-1).
template<typename Scalar>
Polynomial<Scalar> q_derivative(const Polynomial<Scalar>& p, Scalar q)
{
    const auto& a = p.coefficients();
    if(a.size() <= 1)
        return Polynomial<Scalar>{};
    std::vector<Scalar> b(a.size() - 1);
    for(std::size_t k = 1; k < a.size(); ++k)
        b[k - 1] = a[k] * q_number(static_cast<int>(k), q);
    return Polynomial<Scalar>(std::move(b));
}

/// The q-shifted power (x - c)_q^j = prod_{k=0}^{j-1} (x - q^k c).
template<typename Scalar = double>
struct QPolyPower
{
    Scalar center;
    int degree;

    Scalar operator()(Scalar x, Scalar q) const
    {
        Scalar result(1);
        Scalar qk(1);
        for(int k = 0; k < degree; ++k)
        {
            result *= x - qk * center;
            qk *= q;
        }
        return result;
    }
};

/// Truncated q-Taylor expansion of p about c, evaluated at x:
///   sum_{j=0}^{degree} (D_q^j p)(c) (x - c)_q^j / [j]_q!
/// Exact (up to rounding) whenever p.degree() <= degree.
template<typename Scalar>
Scalar q_taylor_eval(const Polynomial<Scalar>& p, Scalar c, Scalar q, Scalar x, int degree)
{
    detail::require_dilation(q);
    if(degree < 0)
        throw DomainError("q_taylor_eval requires degree >= 0");

    Scalar sum(0);
    Polynomial<Scalar> derivative = p;
    for(int j = 0; j <= degree; ++j)
    {
        if(derivative.degree() < 0)
            break;
        sum += derivative(c) * QPolyPower<Scalar>{c, j}(x, q) / q_factorial(j, q);
        derivative = q_derivative(derivative, q);
    }
    return sum;
}

} // namespace qgn
