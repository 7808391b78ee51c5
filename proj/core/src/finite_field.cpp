#include <designlat/errors.hpp>
#include <designlat/finite_field.hpp>

#include <numeric>

namespace designlat {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

} // namespace

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t small : { 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37 }) {
        if (n % small == 0)
            return n == small;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // this witness set is deterministic below 2^64
    for (std::uint64_t a : { 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37 }) {
        auto x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

std::uint64_t next_prime(std::uint64_t lower)
{
    for (auto n = std::max<std::uint64_t>(lower, 2);; ++n)
        if (is_prime(n))
            return n;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p)
{
    if (a % p == 0)
        throw PreconditionError("zero has no inverse");
    return mod_pow(a, p - 2, p);
}

GenericMatrix generic_matrix(int q, int r, std::uint64_t p)
{
    if (q < 1 || r < 1)
        throw PreconditionError("matrix dimensions must be positive");
    if (!is_prime(p))
        throw PreconditionError("modulus " + std::to_string(p) + " is not prime");
    if (p < static_cast<std::uint64_t>(q + r))
        throw PreconditionError("modulus must be at least q + r");
    GenericMatrix m;
    m.p = p;
    m.rows = q;
    m.cols = r;
    m.entries.assign(q, std::vector<std::uint64_t>(r));
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < r; ++j) {
            // x_i + y_j = i - (q + j), nonzero mod p since 0 < q + j - i < p
            auto diff = static_cast<std::uint64_t>(q + j - i) % p;
            m.entries[i][j] = mod_inverse(p - diff, p);
        }
    std::vector<std::uint64_t> row_scale(q), col_scale(r);
    for (int i = 0; i < q; ++i)
        row_scale[i] = mod_inverse(m.entries[i][0], p);
    for (int j = 0; j < r; ++j)
        col_scale[j] = mod_inverse(mul_mod(m.entries[0][j], row_scale[0], p), p);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < r; ++j)
            m.entries[i][j] = mul_mod(mul_mod(m.entries[i][j], row_scale[i], p), col_scale[j], p);
    return m;
}

namespace {

bool singular(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p)
{
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0)
            ++piv;
        if (piv == n)
            return true;
        std::swap(a[piv], a[c]);
        auto inv = mod_inverse(a[c][c], p);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0)
                continue;
            auto f = mul_mod(a[r][c], inv, p);
            for (std::size_t k = c; k < n; ++k)
                a[r][k] = (a[r][k] + p - mul_mod(f, a[c][k], p)) % p;
        }
    }
    return false;
}

std::string describe_minor(const std::vector<int>& rows, const std::vector<int>& cols)
{
    auto list = [](const std::vector<int>& v) {
        std::string s = "{";
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + std::to_string(v[i]);
        return s + "}";
    };
    return "rows " + list(rows) + " cols " + list(cols);
}

// Enumerate k-subsets of [n] as bitmask-free index vectors in lexicographic order.
bool next_subset(std::vector<int>& s, int n)
{
    int k = static_cast<int>(s.size());
    for (int i = k - 1; i >= 0; --i)
        if (s[i] < n - k + i) {
            ++s[i];
            for (int j = i + 1; j < k; ++j)
                s[j] = s[j - 1] + 1;
            return true;
        }
    return false;
}

} // namespace

GenericityReport check_generic(const GenericMatrix& m, std::uint64_t minor_limit)
{
    GenericityReport rep;
    const int kmax = std::min(m.rows, m.cols);
    for (int k = 1; k <= kmax; ++k) {
        std::vector<int> rows(k);
        std::iota(rows.begin(), rows.end(), 0);
        do {
            std::vector<int> cols(k);
            std::iota(cols.begin(), cols.end(), 0);
            do {
                if (++rep.minors_checked > minor_limit)
                    throw BudgetExceeded("minor sweep exceeds the limit of " + std::to_string(minor_limit));
                std::vector<std::vector<std::uint64_t>> a(k, std::vector<std::uint64_t>(k));
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        a[i][j] = m.entries[rows[i]][cols[j]];
                if (singular(std::move(a), m.p)) {
                    rep.generic = false;
                    rep.failing_minor = describe_minor(rows, cols);
                    return rep;
                }
            } while (next_subset(cols, m.cols));
        } while (next_subset(rows, m.rows));
    }
    return rep;
}

std::uint64_t paper_window_prime(int q, int r)
{
    if (q < 1 || 9 * q > 63)
        throw PreconditionError("the prime window only fits in 64 bits for 1 ≤ q ≤ 7");
    std::uint64_t lo = (std::uint64_t { 1 } << (8 * q)) + 1;
    std::uint64_t hi = std::uint64_t { 1 } << (9 * q);
    auto p = next_prime(std::max<std::uint64_t>(lo, static_cast<std::uint64_t>(q + r)));
    if (p >= hi)
        throw ConstructionError("no prime in the window");
    return p;
}

} // namespace designlat
