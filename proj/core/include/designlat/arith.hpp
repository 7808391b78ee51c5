#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace designlat {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVec = std::vector<Integer>;

Integer binomial(long n, long k);
Integer factorial(long n);
Integer falling_factorial(long n, long k);

bool is_zero(const IntVec& v);
IntVec& add_to(IntVec& acc, const IntVec& v, const Integer& scale = 1);
IntVec negated(const IntVec& v);
Integer l1_norm(const IntVec& v);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
std::string to_string(const IntVec& v);

// 64-bit FNV-1a, used for stable identifiers.
class StableHash {
public:
    void add_bytes(const void* data, std::size_t len);
    void add(std::int64_t x) { add_bytes(&x, sizeof x); }
    void add(const Integer& x);
    std::uint64_t value() const { return h_; }
    std::string hex() const;

private:
    std::uint64_t h_ = 1469598103934665603ull;
};

// Seeded generator with portable bounded draws (no reliance on library distributions).
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next();
    std::uint64_t below(std::uint64_t bound);
    std::int64_t between(std::int64_t lo, std::int64_t hi);
    Rational unit_rational(std::uint32_t denominator_bits = 30);

    template <typename T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::uint64_t s_[4];
};

} // namespace designlat
