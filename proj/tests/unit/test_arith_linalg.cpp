#include <designlat/arith.hpp>
#include <designlat/linalg.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace designlat;

namespace {

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c, int lo, int hi)
{
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = static_cast<long>(rng.between(lo, hi));
    return m;
}

void expect_diagonal(const DiagonalForm& df)
{
    EXPECT_EQ(df.P * df.Z * df.Q, df.D);
    EXPECT_EQ(abs(determinant(df.P)), 1);
    EXPECT_EQ(abs(determinant(df.Q)), 1);
    for (std::size_t i = 0; i < df.D.rows(); ++i)
        for (std::size_t j = 0; j < df.D.cols(); ++j)
            if (i != j)
                EXPECT_EQ(df.D(i, j), 0);
    for (std::size_t i = 0; i + 1 < df.rank; ++i)
        EXPECT_EQ(df.diagonal(i + 1) % df.diagonal(i), 0);
}

} // namespace

TEST(Arith, BinomialsAgreeWithMachineArithmetic)
{
    for (int n = 0; n <= 30; ++n)
        for (int k = 0; k <= n; ++k)
            EXPECT_EQ(binomial(n, k), Integer(std::to_string(oracle::binom(n, k))));
    EXPECT_EQ(binomial(5, 7), 0);
    EXPECT_EQ(falling_factorial(7, 3), 210);
    EXPECT_EQ(factorial(10), 3628800);
}

TEST(Arith, BinomialsDoNotOverflow)
{
    EXPECT_EQ(binomial(100, 50), Integer("100891344545564193334812497256"));
}

TEST(Arith, RngIsReproducible)
{
    Rng a(42), b(42), c(43);
    std::vector<std::uint64_t> xa, xb, xc;
    for (int i = 0; i < 5; ++i) {
        xa.push_back(a.next());
        xb.push_back(b.next());
        xc.push_back(c.next());
    }
    EXPECT_EQ(xa, xb);
    EXPECT_NE(xa, xc);
    for (int i = 0; i < 1000; ++i) {
        auto v = a.between(-3, 3);
        EXPECT_GE(v, -3);
        EXPECT_LE(v, 3);
    }
}

TEST(DiagonalForm, Identity)
{
    auto df = diagonal_form(Matrix::identity(3));
    EXPECT_EQ(df.D, Matrix::identity(3));
    EXPECT_EQ(df.rank, 3u);
    expect_diagonal(df);
}

TEST(DiagonalForm, TwoByTwo)
{
    auto df = diagonal_form(Matrix::from_rows({ { 2, 4 }, { 6, 8 } }));
    expect_diagonal(df);
    EXPECT_EQ(abs(df.diagonal(0)), 2);
    EXPECT_EQ(abs(df.diagonal(1)), 4);
}

TEST(DiagonalForm, ZeroMatrix)
{
    auto df = diagonal_form(Matrix(1, 1));
    EXPECT_EQ(df.rank, 0u);
    EXPECT_TRUE(df.nonzero_rows().empty());
    EXPECT_EQ(df.D(0, 0), 0);
}

TEST(DiagonalForm, RandomRectangular)
{
    Rng rng(7);
    for (int t = 0; t < 60; ++t) {
        auto m = random_matrix(rng, 1 + rng.below(6), 1 + rng.below(6), -9, 9);
        expect_diagonal(diagonal_form(m));
    }
}

TEST(IntegerSolve, FindsSolutionsAndRejectsNonMembers)
{
    auto z = Matrix::from_rows({ { 2, 0 }, { 0, 3 } });
    auto x = integer_solve(z, { 4, 9 });
    ASSERT_TRUE(x);
    EXPECT_EQ(z * *x, (IntVec { 4, 9 }));
    EXPECT_FALSE(integer_solve(z, { 1, 0 }));
    // rational but not integral: column (2,2) cannot give (1,1)
    EXPECT_FALSE(integer_solve(Matrix::from_rows({ { 2 }, { 2 } }), { 1, 1 }));
}

TEST(IntegerSolve, RandomRoundTrip)
{
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        auto z = random_matrix(rng, 1 + rng.below(5), 1 + rng.below(5), -5, 5);
        IntVec x0(z.cols());
        for (auto& v : x0)
            v = static_cast<long>(rng.between(-4, 4));
        auto b = z * x0;
        auto x = integer_solve(z, b);
        ASSERT_TRUE(x);
        EXPECT_EQ(z * *x, b);
    }
}

TEST(Kernel, BasisVectorsAnnihilate)
{
    auto z = Matrix::from_rows({ { 1, 1, 1 }, { 0, 1, 2 } });
    auto k = kernel_basis(z);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_TRUE(is_zero(z * k[0]));
    EXPECT_EQ(rank(z), 2u);
}

TEST(SpanTester, DuplicateColumnsAndZeroRows)
{
    SpanTester t({ { 1, 0, 0 }, { 1, 0, 0 }, { 0, 0, 2 } }, 3);
    EXPECT_TRUE(t.contains({ 3, 0, 4 }));
    EXPECT_FALSE(t.contains({ 0, 1, 0 }));
    EXPECT_FALSE(t.contains({ 0, 0, 1 }));
    auto x = t.solve({ 2, 0, -2 });
    ASSERT_TRUE(x);
    EXPECT_EQ(x->size(), 3u);
}

TEST(RationalFeasible, PicksFirstVertex)
{
    auto r = rational_feasible(Matrix::from_rows({ { 1, 1 } }), { 1 });
    ASSERT_TRUE(r.feasible);
    EXPECT_EQ(r.x[0], 1);
    EXPECT_EQ(r.x[1], 0);
}

TEST(RationalFeasible, TrianglesOfK4HaveHalfWeights)
{
    // columns: triangles of K4, rows: its 6 edges
    std::vector<std::array<int, 3>> tri = { { 0, 1, 2 }, { 0, 1, 3 }, { 0, 2, 3 }, { 1, 2, 3 } };
    std::vector<std::pair<int, int>> edges = { { 0, 1 }, { 0, 2 }, { 0, 3 }, { 1, 2 }, { 1, 3 }, { 2, 3 } };
    Matrix z(6, 4);
    for (std::size_t e = 0; e < 6; ++e)
        for (std::size_t t = 0; t < 4; ++t) {
            auto& T = tri[t];
            bool a = std::find(T.begin(), T.end(), edges[e].first) != T.end();
            bool b = std::find(T.begin(), T.end(), edges[e].second) != T.end();
            z(e, t) = a && b ? 1 : 0;
        }
    auto r = rational_feasible(z, IntVec(6, 1));
    ASSERT_TRUE(r.feasible);
    for (auto& v : r.x)
        EXPECT_EQ(v, Rational(1, 2));
}

TEST(RationalFeasible, InfeasibleGivesFarkasCertificate)
{
    auto z = Matrix::from_rows({ { 1, 1 }, { 1, 1 } });
    auto r = rational_feasible(z, { 1, 2 });
    EXPECT_FALSE(r.feasible);
    ASSERT_TRUE(r.farkas);
    auto& y = *r.farkas;
    EXPECT_GT(y[0] * 1 + y[1] * 2, 0);
    for (std::size_t j = 0; j < 2; ++j)
        EXPECT_LE(y[0] * z(0, j) + y[1] * z(1, j), 0);
}

TEST(RationalFeasible, RespectsBounds)
{
    std::vector<Bounds> b = { { 0, Rational(1, 3) }, { 0, 1 } };
    auto r = rational_feasible(Matrix::from_rows({ { 1, 1 } }), { 1 }, b);
    ASSERT_TRUE(r.feasible);
    EXPECT_LE(r.x[0], Rational(1, 3));
    EXPECT_EQ(r.x[0] + r.x[1], 1);
}

TEST(Matrix, TextRoundTrip)
{
    auto m = Matrix::from_rows({ { 1, -2, 3 }, { 4, 5, -6 } });
    EXPECT_EQ(Matrix::from_text(m.to_text()), m);
}

TEST(OracleSelfCheck, RankSmall)
{
    EXPECT_EQ(oracle::rank_small({ { 1, 2 }, { 2, 4 } }), 1);
    EXPECT_EQ(oracle::rank_small({ { 1, 0 }, { 0, 1 }, { 1, 1 } }), 2);
}
