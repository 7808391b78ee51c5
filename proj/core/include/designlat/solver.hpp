#pragma once

#include <designlat/lattice.hpp>
#include <designlat/vector_system.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace designlat {

struct SearchConfig {
    std::uint64_t node_budget = 10'000'000;
    std::string heuristic = "mrv"; // "mrv" or "first"
    std::uint64_t seed = 0;        // 0 keeps canonical candidate order
    bool symmetry_pruning = false;
    double time_limit_seconds = 0; // 0 = none
    unsigned threads = 1;
    bool lattice_precheck = true;
};

enum class SolveStatus { Solved, Unsat, Budget };
std::string to_string(SolveStatus s);

struct SearchStats {
    std::uint64_t nodes = 0;
    std::size_t items = 0;
    std::size_t candidates = 0;
    bool precheck_rejected = false;
};

struct SolveResult {
    SolveStatus status = SolveStatus::Unsat;
    std::optional<Selection> selection;
    SearchStats stats;
    std::string reason;
};

struct CountResult {
    SolveStatus status = SolveStatus::Unsat; // Solved once the count is exact
    Integer count = 0;
    SearchStats stats;
};

// Exact γ(Φ)-decomposition of G (γ elementary), by exact multiset cover over atom items.
SolveResult solve_exact(const VectorSystem& gamma, const LabelledComplex& phi, const EdgeVector& g,
    const SearchConfig& cfg = {});

// Number of decompositions, counted as multisets of distinct molecules.
CountResult count_exact(const VectorSystem& gamma, const LabelledComplex& phi, const EdgeVector& g,
    const SearchConfig& cfg = {});

struct IntegralResult {
    SolveStatus status = SolveStatus::Unsat; // Unsat = not in the lattice
    std::optional<Selection> selection;
    std::size_t molecules = 0;
};

IntegralResult solve_integral(const VectorSystem& gamma, const LabelledComplex& phi, const EdgeVector& j,
    const SearchConfig& cfg = {});

enum class VerifyMode { Set, Integral };

struct Mismatch {
    Injection map;
    int colour = 0;
    Integer expected, actual;
};

struct VerifyReport {
    bool ok = true;
    bool mode_violation = false;
    bool invalid_key = false;
    std::string detail;
    std::vector<Mismatch> diff; // first 20
    std::size_t mismatches = 0;
};

VerifyReport verify(const VectorSystem& gamma, const LabelledComplex& phi, const Selection& psi,
    const EdgeVector& g, VerifyMode mode);

struct NibblePolicy {
    // Weight of a candidate (family, φ); empty = uniform.
    std::function<double(std::size_t, const Injection&)> weight;
};

struct GreedyTrace {
    std::vector<std::pair<std::size_t, Injection>> chosen;
    EdgeVector leave;
    std::size_t target_atoms = 0;
    std::size_t leave_atoms = 0;
    std::size_t target_support = 0;
    std::size_t leave_support = 0;
    std::map<Integer, std::size_t> use_histogram; // residual use at (r−1)-maps → number of maps
    Rational max_use_ratio = 0;                   // max use / |V(Φ)|
    bool residual_nonnegative = true;
    bool fixpoint = true;
};

GreedyTrace nibble_greedy(const VectorSystem& gamma, const LabelledComplex& phi, const EdgeVector& g,
    std::uint64_t seed, const NibblePolicy& policy = {});

} // namespace designlat
