#pragma once

#include <designlat/arith.hpp>
#include <designlat/complex.hpp>
#include <designlat/labels.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace designlat {

// A permutation of the group's domain, stored as a label map defined on the domain.
using Permutation = Injection;

class PermutationGroup {
public:
    // Stabilizer of the partition `parts` of its union (S_q for one part, {id} for singletons).
    static PermutationGroup partition_stabilizer(const std::vector<LabelSet>& parts);
    static PermutationGroup symmetric(LabelSet domain);
    static PermutationGroup trivial(LabelSet domain);
    // Closure of the generators; throws ConstructionError beyond `limit` elements.
    static PermutationGroup generated(
        LabelSet domain, const std::vector<Permutation>& generators, std::size_t limit = 100000);

    LabelSet domain() const { return domain_; }
    Integer order() const;
    bool contains(const Permutation& g) const;
    const std::vector<Permutation>& generators() const { return generators_; }
    const std::optional<std::vector<LabelSet>>& partition() const { return parts_; }
    // Full element list when the group is stored explicitly.
    const std::optional<std::vector<Permutation>>& elements() const { return elements_; }
    std::vector<Permutation> all_elements(std::size_t limit = 100000) const;

    // Σ^{to}_{from}: restrictions σ|_from with σ(from) = to, canonical order.
    const std::vector<Injection>& restricted_maps(LabelSet from, LabelSet to) const;
    // Σ^B: all σ|_{B′} with σ(B′) = B (maps onto B).
    const std::vector<Injection>& maps_onto(LabelSet b) const;
    // Σ_B: all σ|_B (maps out of B).
    std::vector<Injection> maps_from(LabelSet b) const;
    // The class of B under B ∼ B′ ⇔ Σ^{B′}_B ≠ ∅, canonical order.
    const std::vector<LabelSet>& equivalent_sets(LabelSet b) const;
    // P^Σ_r.
    std::vector<std::vector<LabelSet>> equivalence_classes(int r) const;
    // Σ/B*: pointwise stabilizer of B*, acting on domain ∖ B*.
    PermutationGroup quotient(LabelSet fixed) const;

    nlohmann::json describe() const;

private:
    PermutationGroup() = default;

    LabelSet domain_;
    std::vector<Permutation> generators_;
    std::optional<std::vector<LabelSet>> parts_;
    std::optional<std::vector<Permutation>> elements_;

    struct Cache {
        std::mutex mu;
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Injection>> maps;
        std::map<std::uint32_t, std::vector<Injection>> onto;
        std::map<std::uint32_t, std::vector<LabelSet>> classes;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

PermutationGroup group_from_descriptor(const nlohmann::json& d);

struct AdaptednessWitness {
    Injection map;     // φ ∈ Φ_B
    Injection relabel; // τ ∈ Σ^B (or a bijection, for exact adaptedness)
};

// φ∘τ ∈ Φ for all φ ∈ Φ_B and τ ∈ Σ^B; exhaustive.
std::optional<AdaptednessWitness> adaptedness_violation(const LabelledComplex& phi, const PermutationGroup& sigma);
inline bool is_adapted(const LabelledComplex& phi, const PermutationGroup& sigma)
{
    return !adaptedness_violation(phi, sigma).has_value();
}
std::optional<AdaptednessWitness> exact_adaptedness_violation(const LabelledComplex& phi, const PermutationGroup& sigma);
inline bool is_exactly_adapted(const LabelledComplex& phi, const PermutationGroup& sigma)
{
    return !exact_adaptedness_violation(phi, sigma).has_value();
}

struct Orbit {
    Injection representative;
    std::vector<Injection> members; // canonical order; representative first
    std::vector<Vertex> image;

    LabelSet domain() const { return representative.domain(); }
    // τ with m = representative ∘ τ (τ ∈ Σ^{B^O}_{dom m}).
    Injection transport(const Injection& m) const { return relabelling(representative, m); }
};

// Canonical (minimal) member of ψΣ, without materializing the orbit.
Injection orbit_representative(const Injection& psi, const PermutationGroup& sigma);
// ψΣ = {ψ∘σ : σ ∈ Σ^{dom ψ}}.
Orbit orbit_of(const Injection& psi, const PermutationGroup& sigma);
// Partition of Φ_r into orbits, ordered by representative. Throws NotAdapted
// if some member leaves Φ.
std::vector<Orbit> orbits(const LabelledComplex& phi, const PermutationGroup& sigma, int r);

} // namespace designlat
