#include <designlat/errors.hpp>
#include <designlat/finite_field.hpp>

#include <gtest/gtest.h>

using namespace designlat;

TEST(FiniteField, Primes)
{
    std::vector<std::uint64_t> small;
    for (std::uint64_t n = 0; n < 50; ++n)
        if (is_prime(n))
            small.push_back(n);
    EXPECT_EQ(small, (std::vector<std::uint64_t> { 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47 }));
    EXPECT_TRUE(is_prime(1'000'000'007ull));
    EXPECT_FALSE(is_prime(3215031751ull)); // strong pseudoprime to bases 2, 3, 5, 7
    EXPECT_EQ(next_prime(14), 17u);
    EXPECT_EQ(mod_inverse(3, 7), 5u);
    EXPECT_EQ(mod_pow(2, 10, 1000), 24u);
}

TEST(GenericMatrix, OneByOne)
{
    auto m = generic_matrix(1, 1, 5);
    ASSERT_EQ(m.entries.size(), 1u);
    EXPECT_EQ(m.entries[0][0], 1u);
    EXPECT_TRUE(check_generic(m).generic);
}

TEST(GenericMatrix, FourByTwo)
{
    auto m = generic_matrix(4, 2, 11);
    EXPECT_EQ(m.rows, 4);
    EXPECT_EQ(m.cols, 2);
    auto rep = check_generic(m);
    EXPECT_TRUE(rep.generic);
    // 8 entries plus 6 two-by-two minors
    EXPECT_EQ(rep.minors_checked, 14u);
}

TEST(GenericMatrix, TooSmallField)
{
    EXPECT_THROW(generic_matrix(3, 2, 3), PreconditionError);
    EXPECT_THROW(generic_matrix(3, 2, 9), PreconditionError);
}

TEST(GenericMatrix, SingularMinorIsFound)
{
    GenericMatrix m { 7, 2, 2, { { 1, 2 }, { 2, 4 } } };
    auto rep = check_generic(m);
    EXPECT_FALSE(rep.generic);
    EXPECT_FALSE(rep.failing_minor.empty());
}

TEST(GenericMatrix, WindowPrime)
{
    auto p = paper_window_prime(2, 2);
    EXPECT_GT(p, 1ull << 16);
    EXPECT_LT(p, 1ull << 18);
    EXPECT_TRUE(is_prime(p));
    EXPECT_TRUE(check_generic(generic_matrix(2, 2, p)).generic);
}
