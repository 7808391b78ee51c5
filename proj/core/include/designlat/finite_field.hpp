#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace designlat {

bool is_prime(std::uint64_t n);

// Smallest prime p ≥ lower.
std::uint64_t next_prime(std::uint64_t lower);

struct GenericMatrix {
    std::uint64_t p = 0;
    int rows = 0, cols = 0;
    std::vector<std::vector<std::uint64_t>> entries;
};

// Normalised Cauchy matrix over F_p: x_i = i, y_j = -(q+j), M_ij = (x_i + y_j)^{-1},
// then rows and columns scaled so the first row and column are all ones.
// Requires p prime and p ≥ q + r so that every x_i + y_j is invertible.
GenericMatrix generic_matrix(int q, int r, std::uint64_t p);

struct GenericityReport {
    bool generic = true;
    std::uint64_t minors_checked = 0;
    std::string failing_minor; // "rows {..} cols {..}" when singular
};

// Every square minor nonsingular. Exhaustive, so only sensible for small q, r.
GenericityReport check_generic(const GenericMatrix& m, std::uint64_t minor_limit = 50'000'000);

// Smallest prime in (2^{8q}, 2^{9q}) that is at least q + r; q ≤ 7 so it fits in 64 bits.
std::uint64_t paper_window_prime(int q, int r);

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m);
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);

} // namespace designlat
