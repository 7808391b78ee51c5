#pragma once

#include <designlat/labels.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

namespace designlat {

// Membership predicate plus enumeration hints. Implementations may assume the
// argument is injective, has domain inside the complex's label set and images
// inside the vertex range; downward closure is the implementer's obligation.
class ComplexSource {
public:
    virtual ~ComplexSource() = default;
    virtual bool admits(const Injection& psi) const = 0;
    // Vertices label l may map to; empty means "any vertex".
    virtual std::vector<Vertex> candidates(Label) const { return {}; }
    virtual nlohmann::json describe() const = 0;
};

using PartialSystem = std::map<LabelSet, std::unordered_set<Injection>, CanonicalLess>;

class LabelledComplex {
public:
    LabelledComplex(LabelSet labels, std::size_t vertices, std::shared_ptr<const ComplexSource> source);

    static LabelledComplex complete(int q, std::size_t n);
    static LabelledComplex complete_on(LabelSet labels, std::size_t n);
    // Maps sending every label of label_parts[k] into vertex_parts[k].
    static LabelledComplex partite(LabelSet labels, std::size_t n, const std::vector<LabelSet>& label_parts,
        const std::vector<std::vector<Vertex>>& vertex_parts);
    // Maps whose pairs of labels i<j are sent to edges coloured label_colour(i,j);
    // colour[u][v] < 0 marks a non-edge.
    static LabelledComplex coloured(int q, std::size_t n, std::vector<std::vector<int>> colour,
        std::map<std::pair<Label, Label>, int> label_colour);
    // Explicit storage; throws ConstructionError unless downward closed (or close = true).
    static LabelledComplex explicit_maps(LabelSet labels, std::size_t n, const std::vector<Injection>& maps,
        bool close = false);

    LabelSet labels() const { return labels_; }
    std::size_t vertex_count() const { return vertices_; }
    const ComplexSource& source() const { return *source_; }
    std::shared_ptr<const ComplexSource> source_ptr() const { return source_; }
    nlohmann::json describe() const;

    bool contains(const Injection& psi) const;

    // Φ_B in canonical order.
    std::vector<Injection> level(LabelSet b) const;
    // All of Φ_k, grouped by label set in canonical order.
    std::vector<Injection> level(int k) const;
    std::size_t level_size(LabelSet b) const;

    // Visits every ψ ∈ Φ_B extending base (dom(base) ⊆ B); the visitor may return
    // false to stop early. Returns false if stopped.
    bool for_each_extension(const Injection& base, LabelSet b, const std::function<bool(const Injection&)>& visit) const;
    std::vector<Injection> extensions(const Injection& base, LabelSet b) const;

    // Materialized copy with explicit storage (small instances only).
    LabelledComplex materialize() const;

private:
    LabelSet labels_;
    std::size_t vertices_;
    std::shared_ptr<const ComplexSource> source_;
};

// Φ[Φ′]: keep ψ ∈ Φ whose restrictions land in Φ′ wherever Φ′ is defined.
LabelledComplex restrict(const LabelledComplex& phi, const PartialSystem& filter);
// Φ[U] for a vertex subset U.
LabelledComplex restrict_vertices(const LabelledComplex& phi, const std::vector<Vertex>& keep);
// Φ/φ*, on labels R∖dom(φ*).
LabelledComplex neighbourhood(const LabelledComplex& phi, const Injection& base);
// R(s); vertex (i, x) is encoded as i*s + x.
LabelledComplex partite_template(LabelSet labels, int s);

// Builds a source from a descriptor produced by describe().
LabelledComplex complex_from_descriptor(const nlohmann::json& descriptor);

} // namespace designlat
