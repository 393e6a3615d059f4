#include <gtest/gtest.h>

#include "support.hpp"

using namespace zonoset;
using namespace zonoset::testing;

namespace {

std::string data(const std::string& name) { return read_text(std::string(ZONOSET_TEST_DATA) + "/" + name); }

}  // namespace

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(-0.0), "0");
    EXPECT_EQ(format_double(3), "3");
    EXPECT_EQ(format_double(1e-300), "1e-300");
    Rng rng(71);
    for (int t = 0; t < 1000; ++t) {
        const double v = uniform(rng, -1e6, 1e6) * std::pow(10.0, uniform(rng, -20, 20));
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
}

TEST(ZpolyIo, ParsesExample1) {
    const auto text = data("example1.zpoly");
    ASSERT_FALSE(text.empty());
    EXPECT_EQ(parse_zpoly(text), example1());
    EXPECT_EQ(parse_zpoly(data("ex4.zpoly")), example4());
}

TEST(ZpolyIo, PointFile) {
    const auto P = parse_zpoly(data("point.zpoly"));
    EXPECT_EQ(P, ZPolytope::point({3}));
}

TEST(ZpolyIo, CrlfLineEndings) {
    EXPECT_EQ(parse_zpoly(data("crlf.zpoly")), ZPolytope::make({0.1, 0.2}, {{1, 2}}, {{1}}, 1));
}

TEST(ZpolyIo, RoundTripsCorpusBitwise) {
    for (const char* name : {"example1.zpoly", "example2.zpoly", "ex4.zpoly", "redundant.zpoly", "square.zpoly", "point.zpoly"}) {
        const auto P = parse_zpoly(data(name));
        const auto text = serialize_zpoly(P);
        EXPECT_EQ(parse_zpoly(text), P) << name;
        EXPECT_EQ(serialize_zpoly(parse_zpoly(text)), text) << name;
    }
    Rng rng(72);
    for (int t = 0; t < 50; ++t) {
        const auto P = random_zpoly(rng, 3, 5, 7, 1e3);
        EXPECT_EQ(parse_zpoly(serialize_zpoly(P)), P);
    }
}

TEST(ZpolyIo, SyntaxErrorsCarryPosition) {
    try {
        parse_zpoly(data("syntax_error.zpoly"));
        FAIL() << "expected parse_error";
    } catch (const parse_error& e) {
        EXPECT_EQ(e.line(), 4u);
        EXPECT_EQ(e.column(), 13u);
    }
    EXPECT_THROW(parse_zpoly("zpoly\ndim 2\nfactors 1\ncenter 0 0\ngen 1 2 1\n"), parse_error);
    EXPECT_THROW(parse_zpoly("vpoly\ndim 2\n"), parse_error);
    EXPECT_THROW(parse_zpoly(""), parse_error);
}

TEST(ZpolyIo, InvalidSetsRaiseValidationError) {
    for (const char* name : {"invalid_repeat.zpoly", "invalid_range.zpoly"}) {
        try {
            parse_zpoly(data(name));
            FAIL() << name;
        } catch (const validation_error& e) {
            EXPECT_EQ(e.violations().size(), 1u) << name;
        }
        EXPECT_NO_THROW(parse_zpoly_unchecked(data(name)));
    }
}

TEST(VpolyIo, ParsesAndRoundTrips) {
    const auto H = parse_vpoly(data("hexagon.vpoly"));
    EXPECT_EQ(H, hexagon());
    EXPECT_EQ(H.vertices.size(), 6u);
    const auto S = parse_vpoly(data("single.vpoly"));
    EXPECT_EQ(S.vertices, (std::vector<Vec>{{1.25, -3}}));
    for (const auto& V : {H, S, parse_vpoly(data("cube.vpoly"))}) EXPECT_EQ(parse_vpoly(serialize_vpoly(V)), V);
    EXPECT_THROW(parse_vpoly("vpoly\ndim 2\n"), parse_error);
    EXPECT_THROW(parse_vpoly("vpoly\ndim 2\nvertex 1\n"), parse_error);
}

TEST(MatrixIo, ParsesAndRoundTrips) {
    const auto M = parse_matrix(data("rotate.matrix"));
    EXPECT_EQ(M, (Matrix{{0, -1}, {1, 0}}));
    EXPECT_EQ(parse_matrix(serialize_matrix(M)), M);
    EXPECT_THROW(parse_matrix("matrix\nrows 1\ncols 2\nrow 1 2\nrow 3 4\n"), parse_error);
    EXPECT_THROW(parse_matrix("matrix\nrows 1\ncols 2\nrow 1\n"), parse_error);
}

TEST(ExprIo, Example4Function) {
    const Expr f = parse_expr(data("ex4.expr"));
    EXPECT_EQ(f, example4_function());
    EXPECT_EQ(f.node_count(), 18u);
    EXPECT_EQ(f.max_variable(), 2u);
    EXPECT_EQ(parse_expr(serialize_expr(f)), f);
}

TEST(ExprIo, SpecialForms) {
    EXPECT_EQ(parse_expr("(pow x1 0)"), Expr::constant(1));
    EXPECT_EQ(parse_expr("(+ x2)"), Expr::var(2));
    EXPECT_EQ(parse_expr("(/ x1 (* 2 3))"), Expr::var(1) / 6.0);
    EXPECT_EQ(parse_expr("  -2.5e1 "), Expr::constant(-25));
    EXPECT_THROW(parse_expr("(/ x1 0)"), parse_error);
    EXPECT_THROW(parse_expr("(/ x1 x2)"), parse_error);
    EXPECT_THROW(parse_expr("(- x1 x2 x3)"), parse_error);
    EXPECT_THROW(parse_expr("(pow x1 1.5)"), parse_error);
    EXPECT_THROW(parse_expr("(tan x1)"), parse_error);
    EXPECT_THROW(parse_expr("x0"), parse_error);
    EXPECT_THROW(parse_expr("x1 x2"), parse_error);
    EXPECT_THROW(parse_expr(""), parse_error);
}

TEST(ExprIo, UnbalancedInputReportsPosition) {
    try {
        parse_expr(data("unbalanced.expr"));
        FAIL() << "expected parse_error";
    } catch (const parse_error& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_NE(std::string(e.what()).find("')'"), std::string::npos);
    }
    try {
        parse_expr("(+ x1\n   (sin x2)))");
        FAIL() << "expected parse_error";
    } catch (const parse_error& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 13u);
    }
}

TEST(ExprIo, RandomRoundTrips) {
    Rng rng(73);
    for (int t = 0; t < 300; ++t) {
        const Expr e = random_expr(rng, 3, 5);
        EXPECT_EQ(parse_expr(serialize_expr(e)), e) << serialize_expr(e);
    }
}
