#include <designlat/arith.hpp>

#include <cstdio>

namespace designlat {

Integer binomial(long n, long k)
{
    if (n < 0 || k < 0 || k > n)
        return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer factorial(long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
    return r;
}

Integer falling_factorial(long n, long k)
{
    if (k < 0 || k > n)
        return 0;
    Integer r = 1;
    for (long i = 0; i < k; ++i)
        r *= n - i;
    return r;
}

bool is_zero(const IntVec& v)
{
    for (auto& x : v)
        if (x != 0)
            return false;
    return true;
}

IntVec& add_to(IntVec& acc, const IntVec& v, const Integer& scale)
{
    if (acc.size() < v.size())
        acc.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        acc[i] += scale * v[i];
    return acc;
}

IntVec negated(const IntVec& v)
{
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = -v[i];
    return r;
}

Integer l1_norm(const IntVec& v)
{
    Integer s = 0;
    for (auto& x : v)
        s += abs(x);
    return s;
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) { return x.get_str(); }

std::string to_string(const IntVec& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

void StableHash::add_bytes(const void* data, std::size_t len)
{
    auto p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h_ ^= p[i];
        h_ *= 1099511628211ull;
    }
}

void StableHash::add(const Integer& x)
{
    auto s = x.get_str(16);
    add_bytes(s.data(), s.size());
    add_bytes(";", 1);
}

std::string StableHash::hex() const
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
}

namespace {
    std::uint64_t splitmix(std::uint64_t& x)
    {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}

Rng::Rng(std::uint64_t seed)
{
    for (auto& s : s_)
        s = splitmix(seed);
}

std::uint64_t Rng::next()
{
    // xoshiro256**
    std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound <= 1)
        return 0;
    std::uint64_t threshold = -bound % bound;
    for (;;) {
        std::uint64_t r = next();
        if (r >= threshold)
            return r % bound;
    }
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi)
{
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

Rational Rng::unit_rational(std::uint32_t denominator_bits)
{
    std::uint64_t den = 1ull << denominator_bits;
    Rational r(Integer(static_cast<unsigned long>(below(den))), Integer(static_cast<unsigned long>(den)));
    r.canonicalize();
    return r;
}

} // namespace designlat
