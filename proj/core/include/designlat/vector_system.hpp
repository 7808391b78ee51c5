#pragma once

#include <designlat/arith.hpp>
#include <designlat/complex.hpp>
#include <designlat/group.hpp>
#include <designlat/linalg.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace designlat {

// Sparse Φ_r → ℤ^D; zero entries are never stored.
class EdgeVector {
public:
    using Map = std::map<Injection, IntVec, CanonicalLess>;

    explicit EdgeVector(int dim = 1) : dim_(dim) { }

    int dim() const { return dim_; }
    const Map& entries() const { return entries_; }
    std::size_t support_size() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }

    IntVec get(const Injection& psi) const;
    const IntVec* find(const Injection& psi) const;
    void set(const Injection& psi, const IntVec& v);
    void add(const Injection& psi, const IntVec& v, const Integer& scale = 1);

    EdgeVector& operator+=(const EdgeVector& o);
    EdgeVector& operator-=(const EdgeVector& o);
    EdgeVector& operator*=(const Integer& c);
    friend EdgeVector operator+(EdgeVector a, const EdgeVector& b) { return a += b; }
    friend EdgeVector operator-(EdgeVector a, const EdgeVector& b) { return a -= b; }
    friend EdgeVector operator*(EdgeVector a, const Integer& c) { return a *= c; }
    friend bool operator==(const EdgeVector& a, const EdgeVector& b)
    {
        return a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }

private:
    int dim_;
    Map entries_;
};

// Orders edge vectors by their entry lists (for deduplicating molecules).
struct EntriesLess {
    bool operator()(const EdgeVector::Map& a, const EdgeVector::Map& b) const
    {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](auto& x, auto& y) {
            if (x.first != y.first)
                return canonical_less(x.first, y.first);
            return x.second < y.second;
        });
    }
};

struct SelectionKey {
    std::size_t family = 0;
    Injection map;
    friend bool operator<(const SelectionKey& a, const SelectionKey& b)
    {
        if (a.family != b.family)
            return a.family < b.family;
        return canonical_less(a.map, b.map);
    }
    friend bool operator==(const SelectionKey& a, const SelectionKey& b)
    {
        return a.family == b.family && a.map == b.map;
    }
};

// Sparse 𝒜(Φ) → ℤ.
class Selection {
public:
    const std::map<SelectionKey, Integer>& entries() const { return entries_; }
    void add(std::size_t family, const Injection& phi, const Integer& c = 1);
    void set(std::size_t family, const Injection& phi, const Integer& c);
    Integer get(std::size_t family, const Injection& phi) const;
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    void erase(std::size_t family, const Injection& phi) { entries_.erase({ family, phi }); }

private:
    std::map<SelectionKey, Integer> entries_;
};

struct TypeInfo {
    std::string id;
    IntVec pattern; // γ^t, flattened over Σ^B (in TypeTable::sigma order) × D
    bool zero = false;
    std::vector<std::pair<std::size_t, Injection>> members; // (family index, θ)
};

struct TypeTable {
    LabelSet b;
    std::vector<Injection> sigma; // Σ^B in canonical order; pattern index order
    std::vector<TypeInfo> types;
    std::vector<std::size_t> nonzero; // indices into types
    std::unordered_map<Injection, std::size_t> sigma_index;

    std::size_t type_of(std::size_t family, const Injection& theta) const;
    std::size_t pattern_length(int d) const { return sigma.size() * static_cast<std::size_t>(d); }

    std::vector<std::unordered_map<Injection, std::size_t>> index; // per family: θ → type
};

// Lattice data for the nonzero types at one label set: span tester and the
// integer kernel of the type matrix (used for minimum-norm expressions).
struct TypeSpan {
    SpanTester tester;
    std::vector<IntVec> kernel; // over nonzero types
    Integer c0 = 1;
};

struct FamilyMember {
    std::string name;
    std::unordered_map<Injection, IntVec> gamma; // θ ∈ A_r → γ_θ (nonzero only)
};

class VectorSystem {
public:
    VectorSystem(PermutationGroup sigma, int r, int dim, std::vector<FamilyMember> family);

    // Evaluates fn on every θ ∈ A_r for every family member.
    static VectorSystem from_function(PermutationGroup sigma, int r, int dim, const std::vector<std::string>& names,
        const std::function<IntVec(std::size_t, const Injection&)>& fn);

    const PermutationGroup& group() const { return sigma_; }
    int r() const { return r_; }
    int dim() const { return dim_; }
    LabelSet labels() const { return sigma_.domain(); }
    std::size_t family_size() const { return family_.size(); }
    const FamilyMember& member(std::size_t a) const { return family_[a]; }
    std::optional<std::size_t> family_index(const std::string& name) const;

    const IntVec& value(std::size_t a, const Injection& theta) const;

    const TypeTable& types(LabelSet b) const;
    const TypeSpan& type_span(LabelSet b) const;
    bool elementary() const;

    // Representatives (family, θ) of the classes θΣ with γ^θ ≠ 0.
    const std::vector<std::pair<std::size_t, Injection>>& nonzero_classes() const;

private:
    PermutationGroup sigma_;
    int r_;
    int dim_;
    std::vector<FamilyMember> family_;
    IntVec zero_;

    struct Cache;
    std::shared_ptr<Cache> cache_;
};

// γ(φ) for φ ∈ A(Φ).
EdgeVector molecule(const VectorSystem& gamma, const LabelledComplex& phi, std::size_t family, const Injection& emb);
// ∂Ψ.
EdgeVector boundary(const VectorSystem& gamma, const LabelledComplex& phi, const Selection& psi);

bool check_elementary(const VectorSystem& gamma);

// f_B(J)_ψ for the orbit representative ψ: σ ↦ J_{ψσ}, flattened like type patterns.
IntVec f_vector(const TypeTable& table, const EdgeVector& j, const Injection& rep, int dim);

struct OrbitCoefficients {
    Orbit orbit;
    std::vector<std::pair<std::size_t, Integer>> coefficients; // (type index at the orbit's domain, coefficient)
};

struct AtomDecomposition {
    bool in_span = true;
    std::optional<Orbit> failing;
    bool failing_in_rational_span = false;
    bool cap_binding = false;
    std::vector<OrbitCoefficients> orbits; // ordered by representative
};

// Per-orbit expression of J in atoms (minimum 1-norm when γ is not elementary).
AtomDecomposition atom_decomposition(const VectorSystem& gamma, const EdgeVector& j);

// Orbits of the supports' maps, ordered by representative.
std::vector<Orbit> support_orbits(const PermutationGroup& sigma, const std::vector<Injection>& maps);

struct UseResult {
    std::optional<Integer> value; // nullopt = UNDEFINED
    bool cap_binding = false;
};

UseResult use(const VectorSystem& gamma, const EdgeVector& j, const Injection& psi);

struct BoundednessReport {
    bool defined = true;
    bool bounded = true;
    Rational max_ratio = 0;
    std::optional<Injection> worst;
};

BoundednessReport boundedness(
    const VectorSystem& gamma, const EdgeVector& j, const Rational& theta, std::size_t vertex_count);

// γ[G]^A for every family member: ψ ∈ Φ_r with γ(ψ) ≤_γ G.
std::vector<std::vector<Injection>> edge_atoms_restriction(
    const VectorSystem& gamma, const LabelledComplex& phi, const EdgeVector& g);

// Right action (vτ)_σ = v_{τσ} on vectors indexed by Σ^B × D.
IntVec act(const TypeTable& table, const IntVec& v, const Injection& tau, int dim);

// Minimum-1-norm integer x with Σ x_t γ^t = target over the nonzero types at
// `b`; searched within the kernel up to a cap derived from C₀.
struct MinNormResult {
    std::optional<IntVec> x;
    bool cap_binding = false;
};
MinNormResult min_norm_expression(const VectorSystem& gamma, LabelSet b, const IntVec& target);

} // namespace designlat
