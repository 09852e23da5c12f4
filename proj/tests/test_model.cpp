#include "oracles.hpp"

#include "qgn/model.hpp"
#include "qgn/registry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using Vec = oracle::Vec;
using Mat = oracle::Mat;
using qgn::DilationParams;

TEST(VectorField, ChecksDimensions)
{
    qgn::VectorField<double> f(2, 1, [](const Vec& x) { return Vec::Constant(1, x.sum()); });
    EXPECT_EQ(f(Vec{{1.0, 2.0}})(0), 3.0);
    EXPECT_THROW(f(Vec{{1.0}}), qgn::DomainError);
    qgn::VectorField<double> bad(2, 2, [](const Vec& x) { return Vec::Constant(1, x.sum()); });
    EXPECT_THROW(bad(Vec{{1.0, 2.0}}), qgn::DomainError);
    EXPECT_THROW(qgn::VectorField<double>(0, 1, [](const Vec& x) { return x; }), qgn::DomainError);
}

TEST(ResidualProblem, RequiresMAtLeastN)
{
    qgn::VectorField<double> f(2, 1, [](const Vec& x) { return Vec::Constant(1, x.sum()); });
    EXPECT_THROW(qgn::ResidualProblem<double>("under", f), qgn::DomainError);
}

TEST(Example1, Values)
{
    const auto p = qgn::builtin_example1();
    EXPECT_EQ(p.n(), 1);
    EXPECT_EQ(p.m(), 1);
    EXPECT_NEAR(p.residuals(Vec{{2.1}})(0), 2.0 - (std::exp(-4.41) + 2.0 * std::exp(-0.81)), 1e-15);
    EXPECT_NEAR(p.residuals(Vec{{3.0}})(0), -std::exp(-9.0), 1e-15);
}

TEST(Example2, Values)
{
    const auto p = qgn::builtin_example2();
    const Vec r = p.residuals(Vec{{-1.0, 1.0}});
    EXPECT_NEAR(r(0), -1.0, 1e-15);
    EXPECT_NEAR(r(1), 13.1111, 5e-5);
    EXPECT_EQ(p.residuals(Vec{{0.0, 0.0}}).norm(), 0.0);
}

TEST(Example2, DomainGuard)
{
    const auto p = qgn::builtin_example2();
    EXPECT_FALSE(p.admits(Vec{{-0.1, 1.0}}));
    EXPECT_FALSE(p.admits(Vec{{-0.2, 1.0}}, DilationParams<double>(2, 0.5)));
    EXPECT_TRUE(p.admits(Vec{{-0.2, 1.0}}));
    EXPECT_THROW(qgn::evaluate_objective(p, Vec{{-0.1, 0.0}}), qgn::InvalidPoint);
}

TEST(Example2, AnalyticQJacobian)
{
    const auto p = qgn::builtin_example2();
    const double q = 0.95;
    const Mat jac = p.analytic_q_jacobian(Vec{{1.0, 1.0}}, DilationParams<double>(2, q));
    EXPECT_EQ(jac(0, 0), 1.0);
    EXPECT_EQ(jac(0, 1), 0.0);
    EXPECT_NEAR(jac(1, 0), 1.0 / ((1.0 + 0.1) * (q + 0.1)), 1e-10);
    EXPECT_NEAR(jac(1, 1), 2.0 * (1.0 + q), 1e-10);
}

TEST(Example3, Values)
{
    const auto p = qgn::builtin_example3();
    const auto obj = qgn::evaluate_objective(p, Vec{{0.4, 8.0}});
    EXPECT_NEAR(obj.residuals(0), 0.0, 1e-15);
    EXPECT_NEAR(obj.residuals(1), 0.0, 1e-15);
    EXPECT_NEAR(obj.residuals(2), 63.16, 1e-12);
    EXPECT_NEAR(obj.sse, 0.5 * 63.16 * 63.16, 1e-9);

    const Vec r = p.residuals(Vec{{0.0845, 1.6908}});
    EXPECT_NEAR(r(0), -0.3155, 1e-4);
    EXPECT_NEAR(r(1), -6.3092, 1e-4);
    EXPECT_NEAR(r(2), 1.8658, 2e-4);
}

TEST(Example3, AnalyticQJacobian)
{
    const auto p = qgn::builtin_example3();
    Mat expect(3, 2);
    expect << 1, 0, 0, 1, 1.9, 3.8;
    EXPECT_LT((p.analytic_q_jacobian(Vec{{1.0, 2.0}}, DilationParams<double>(2, 0.9)) - expect).norm(), 1e-14);
    expect << 1, 0, 0, 1, 0, 0;
    EXPECT_EQ(p.analytic_q_jacobian(Vec{{0.0, 0.0}}, DilationParams<double>(2, 0.7)), expect);
    expect << 1, 0, 0, 1, 2, 2;
    EXPECT_EQ(p.analytic_q_jacobian(Vec{{1.0, 1.0}}, DilationParams<double>::classical(2)), expect);
    const Mat numeric = qgn::q_jacobian(p.field(), Vec{{1.0, 2.0}}, DilationParams<double>(2, 0.9));
    expect << 1, 0, 0, 1, 1.9, 3.8;
    EXPECT_LT((numeric - expect).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Builtins, AnalyticMatchesNumericQJacobian)
{
    std::mt19937_64 rng(21);
    for(const auto& entry : qgn::builtin_problems())
    {
        const auto& p = entry.problem;
        ASSERT_TRUE(p.has_analytic_q_jacobian());
        for(double q : {0.9, 0.95, 0.99, 0.9995})
        {
            const DilationParams<double> dil(p.n(), q);
            for(int t = 0; t < 50; ++t)
            {
                Vec x = oracle::random_vector(rng, p.n(), -2.0, 2.0);
                if(!p.admits(x, dil) || std::abs(x(0) + 0.1) < 0.05)
                    continue;
                const Mat a = p.analytic_q_jacobian(x, dil);
                const Mat n = qgn::q_jacobian(p.field(), x, dil);
                for(Eigen::Index i = 0; i < a.size(); ++i)
                    EXPECT_TRUE(oracle::close_rel(a(i), n(i), 1e-6, 1e-8))
                        << p.name() << " q=" << q << " entry " << i << ": " << a(i) << " vs " << n(i);
            }
        }
    }
}

TEST(Objective, SseProperties)
{
    std::mt19937_64 rng(8);
    const auto p = qgn::builtin_example3();
    for(int t = 0; t < 20; ++t)
    {
        const Vec x = oracle::random_vector(rng, 2, -3.0, 3.0);
        const auto obj = qgn::evaluate_objective(p, x);
        EXPECT_GE(obj.sse, 0.0);
        EXPECT_DOUBLE_EQ(obj.sse, 0.5 * obj.residuals.squaredNorm());
    }
    const auto root = qgn::evaluate_objective(qgn::builtin_example2(), Vec{{0.0, 0.0}});
    EXPECT_EQ(root.sse, 0.0);
}

TEST(Objective, NonFiniteResidual)
{
    qgn::VectorField<double> f(1, 1, [](const Vec& x) { return Vec::Constant(1, std::log(x(0))); });
    const qgn::ResidualProblem<double> p("log", f);
    EXPECT_THROW(qgn::evaluate_objective(p, Vec{{-1.0}}), qgn::NumericalFailure);
    EXPECT_THROW(qgn::evaluate_objective(p, Vec{{1.0, 2.0}}), qgn::DomainError);
}

TEST(Registry, Lookup)
{
    EXPECT_EQ(qgn::builtin_names(), (std::vector<std::string>{"example1", "example2", "example3"}));
    const auto e2 = qgn::find_builtin("example2");
    ASSERT_TRUE(e2.has_value());
    EXPECT_EQ(e2->default_x0, (Vec{{-1.0, 1.0}}));
    EXPECT_FALSE(qgn::find_builtin("nope").has_value());
}

TEST(Builtins, LongDoubleInstantiation)
{
    const auto p = qgn::builtin_example3<long double>();
    qgn::DenseVector<long double> x(2);
    x << 0.4L, 8.0L;
    EXPECT_NEAR(static_cast<double>(p.residuals(x)(2)), 63.16, 1e-12);
}
