#pragma once

#include <designlat/vector_system.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace designlat {

// ∂_i J = 0, i.e. Σ{J_φ : ψ ⊆ φ} vanishes for every ψ ∈ Φ_i.
std::optional<Injection> null_violation(const EdgeVector& j, int i);
inline bool null_check(const EdgeVector& j, int i) { return !null_violation(j, i).has_value(); }
// Same sums taken over vertex sets, forgetting labels: Σ{J_φ : f ⊆ Im φ} for |f| = i.
std::optional<std::vector<Vertex>> vertex_null_violation(const EdgeVector& j, int i);
inline bool vertex_null_check(const EdgeVector& j, int i) { return !vertex_null_violation(j, i).has_value(); }

// Coordinates Σ^B × [D] for vectors in (ℤ^D)^{Σ^B}, with the right action of Σ^B_B.
struct SymmetricFrame {
    LabelSet b;
    int dim = 1;
    std::vector<Injection> sigma; // Σ^B, canonical order
    std::unordered_map<Injection, std::size_t> index;
    std::vector<Injection> self_maps; // Σ^B_B

    static SymmetricFrame make(const PermutationGroup& group, LabelSet b, int dim);
    std::size_t width() const { return sigma.size() * static_cast<std::size_t>(dim); }
    // (vτ)_σ = v_{τσ}
    IntVec act(const IntVec& v, const Injection& tau) const;
};

// Element of ((ℤ^D)^{Σ^B})^{Φ_B}, sparse.
class SymmetricVector {
public:
    SymmetricVector() = default;
    explicit SymmetricVector(std::size_t width) : width_(width) { }

    std::size_t width() const { return width_; }
    const std::map<Injection, IntVec, CanonicalLess>& entries() const { return entries_; }
    IntVec get(const Injection& psi) const;
    void add(const Injection& psi, const IntVec& v, const Integer& scale = 1);
    SymmetricVector& operator+=(const SymmetricVector& o);
    friend bool operator==(const SymmetricVector& a, const SymmetricVector& b)
    {
        return a.width_ == b.width_ && a.entries_ == b.entries_;
    }

private:
    std::size_t width_ = 0;
    std::map<Injection, IntVec, CanonicalLess> entries_;
};

// ψ*: (i,1) ↦ first(i), (i,2) ↦ second(i).
struct OctahedronEmbedding {
    Injection first, second;
    // ψ*∘ψ for the partite map ψ with ψ(i) = (i, x_i), x given as a bitmask over B (bit set = 2).
    Injection corner(std::uint32_t mask) const;
};

// All Φ-embeddings of B(2) with first(min B) < second(min B) (the others only flip the sign).
std::vector<OctahedronEmbedding> octahedra(const LabelledComplex& phi, LabelSet b);
bool is_octahedron_embedding(const LabelledComplex& phi, const OctahedronEmbedding& e);

// χ(v, ψ*)_{ψ*ψτ} = s(ψ)·vτ.
SymmetricVector octahedron_vector(
    const LabelledComplex& phi, const SymmetricFrame& frame, const OctahedronEmbedding& e, const IntVec& v);

bool is_symmetric(const SymmetricVector& j, const SymmetricFrame& frame);
bool is_null(const SymmetricVector& j, const SymmetricFrame& frame);

struct OctahedralSolution {
    // (octahedron, generator index, coefficient)
    std::vector<std::tuple<OctahedronEmbedding, std::size_t, Integer>> terms;
};

// Tests J ∈ ⟨χ(g, ψ*)⟩ over all octahedra ψ* and generators g (J assumed symmetric).
// Rows are restricted to Σ^B_B-orbit representatives of Φ_B.
std::optional<OctahedralSolution> octahedral_decomposition(const LabelledComplex& phi, const SymmetricFrame& frame,
    const std::vector<IntVec>& generators, const SymmetricVector& j);

// ℤ-basis of the symmetric null vectors in H^{Φ_B}, H = ⟨generators⟩.
std::vector<SymmetricVector> symmetric_null_basis(
    const LabelledComplex& phi, const SymmetricFrame& frame, const std::vector<IntVec>& generators);

bool lattice_member_Lminus(const VectorSystem& gamma, const EdgeVector& j);

// (J♯_{ψ′})_B for B ∈ Q = [q]_r in canonical order, flattened with D.
IntVec sharp_degree(const VectorSystem& gamma, const EdgeVector& j, const Injection& psi_prime);

enum class LatticeMethod { Sharp, Shadow };

struct LatticeFailure {
    int level = 0;
    Orbit orbit;
};

struct LatticeReport {
    bool member = true;
    std::optional<LatticeFailure> failure;
    std::size_t orbits_checked = 0;
};

LatticeReport lattice_member_L(const VectorSystem& gamma, const EdgeVector& j, LatticeMethod method);

// The single-orbit test of either method at the orbit of ψ′.
bool lattice_orbit_member(const VectorSystem& gamma, const EdgeVector& j, const Injection& psi_prime, LatticeMethod method);

struct OracleReport {
    bool member = false;
    std::size_t molecules = 0;
    std::optional<Selection> solution;
};

// ℤ-span of all molecules γ(φ), φ ∈ 𝒜(Φ). Throws BudgetExceeded past `budget` molecules.
OracleReport lattice_member_oracle(
    const VectorSystem& gamma, const LabelledComplex& phi, const EdgeVector& j, std::size_t budget = 200000);

// n = Σ n^i with each n^i in the kernel basis of the nonzero types at B, |n^i| ≤ C₀.
std::vector<IntVec> lattice_constant_split(const VectorSystem& gamma, LabelSet b, const IntVec& n);

} // namespace designlat
