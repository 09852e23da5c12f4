#include "file_parity.hpp"

#include "qgn/problem_file.hpp"

#include <gtest/gtest.h>

using Vec = oracle::Vec;

TEST(ProblemFile, ParsesAllKeys)
{
    const auto pf = qgn::parse_problem_file("# comment\n"
                                            "name = powell\n"
                                            "n = 2\n"
                                            "\n"
                                            "residual = x1\n"
                                            "residual = 10*x1/(x1 + 0.1) + 2*x2^2\r\n"
                                            "x0 = -1, 1\n"
                                            "notes = first\n"
                                            "notes = second");
    EXPECT_EQ(pf.name, "powell");
    EXPECT_EQ(pf.n, 2);
    ASSERT_EQ(pf.residual_sources.size(), 2u);
    EXPECT_EQ(pf.residual_sources[1], "10*x1/(x1 + 0.1) + 2*x2^2");
    ASSERT_TRUE(pf.x0.has_value());
    EXPECT_EQ(*pf.x0, (Vec{{-1.0, 1.0}}));
    EXPECT_EQ(pf.notes, "first\nsecond");
    const auto p = pf.to_problem();
    EXPECT_EQ(p.name(), "powell");
    EXPECT_NEAR(p.residuals(Vec{{-1.0, 1.0}})(1), 13.1111, 5e-5);
}

TEST(ProblemFile, Defaults)
{
    const auto pf = qgn::parse_problem_file("n = 1\nresidual = x1 - 2\n");
    EXPECT_EQ(pf.name, "file");
    EXPECT_FALSE(pf.x0.has_value());
}

TEST(ProblemFile, ErrorLocations)
{
    auto error_at = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
        try
        {
            qgn::parse_problem_file(text);
        }
        catch(const qgn::ProblemFileError& e)
        {
            return {e.line(), e.column()};
        }
        return {999, 999};
    };
    EXPECT_EQ(error_at("n = 1\nresidual = x1 + * 2\n"), (std::pair<std::size_t, std::size_t>{2, 17}));
    EXPECT_EQ(error_at("n = 1\nbogus = 3\nresidual = x1\n"), (std::pair<std::size_t, std::size_t>{2, 1}));
    EXPECT_EQ(error_at("n = 1\nn = 2\nresidual = x1\n"), (std::pair<std::size_t, std::size_t>{2, 1}));
    EXPECT_EQ(error_at("n = zero\nresidual = x1\n"), (std::pair<std::size_t, std::size_t>{1, 5}));
    EXPECT_EQ(error_at("n = 1\njust text\n"), (std::pair<std::size_t, std::size_t>{2, 1}));
    EXPECT_EQ(error_at("n = 1\nresidual = x1\nx0 = 1, 2\n").first, 3u);
    EXPECT_EQ(error_at("n = 1\nresidual = x1\nx0 = a\n").first, 3u);
    EXPECT_EQ(error_at("residual = x1\n").first, 0u);
    EXPECT_EQ(error_at("n = 1\n").first, 0u);
    EXPECT_EQ(error_at("n = 2\nresidual = x1\n").first, 0u);
    EXPECT_EQ(error_at("n = 1\nresidual = x2\n"), (std::pair<std::size_t, std::size_t>{2, 12}));
}

TEST(ProblemFile, MissingFile)
{
    EXPECT_THROW(qgn::load_problem_file("/nonexistent/problem.prob"), qgn::ProblemFileError);
}

TEST(NumberList, Parses)
{
    EXPECT_EQ(qgn::parse_number_list("1, 2.5,-3e-2, +4"), (std::vector<double>{1.0, 2.5, -0.03, 4.0}));
    EXPECT_THROW(qgn::parse_number_list("1,,2"), qgn::DomainError);
    EXPECT_THROW(qgn::parse_number_list("1 2"), qgn::DomainError);
    EXPECT_THROW(qgn::parse_number_list(""), qgn::DomainError);
}

TEST(ProblemFile, ShippedFilesReproduceBuiltins)
{
    for(const auto& o : file_parity::run_all(QGN_DATA_DIR))
        EXPECT_TRUE(o.ok) << o.name << ": worst " << o.worst << o.detail;
}
