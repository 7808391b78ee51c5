#pragma once

#include <designlat/arith.hpp>
#include <designlat/complex.hpp>

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace designlat {

// Vertex (i, x) of R(s) is encoded as i*s + x.
inline Vertex template_vertex(Label i, int x, int s) { return static_cast<Vertex>(i * s + x); }

// E = (H, F, φ). H is the downward closure of `generators`, each a partite map
// into R(s); φ sends the frozen template vertices into the host complex.
struct Extension {
    LabelSet labels;
    int s = 1;
    std::vector<Injection> generators;
    std::vector<Vertex> frozen;
    std::map<Vertex, Vertex> base;

    std::vector<Vertex> template_vertices() const;
    std::vector<Vertex> free_vertices() const;
    int rank() const { return s; }
    int free_count() const { return static_cast<int>(free_vertices().size()); }
};

// Throws ConstructionError if H is not partite, F ⊄ V(H), or dom(φ) ≠ F.
void validate_template(const Extension& e);
// φ is a Φ-embedding of H[F].
bool base_is_embedding(const LabelledComplex& phi, const Extension& e);

struct ExtensionConstraint {
    std::vector<Injection> maps; // H^t: maps of H, none inside F
    std::function<bool(const Injection&)> allowed; // membership in Φ^t
};

ExtensionConstraint constraint_from_set(std::vector<Injection> maps, std::vector<Injection> allowed_maps);

// |X_{E,H′}(Φ,Φ′)|; the visitor (if any) sees each completed embedding as a
// template-vertex → host-vertex table.
Integer count_extensions(const LabelledComplex& phi, const Extension& e,
    const std::vector<ExtensionConstraint>& constraints = {},
    const std::function<void(const std::map<Vertex, Vertex>&)>& visit = {});

struct ExtendabilityReport {
    Rational min_density = 1;
    std::optional<Extension> witness;
    std::size_t checked = 0;
    bool meets_threshold = true;
    bool budget_exhausted = false;
};

// Minimum over rank-s extensions (templates up to isomorphism: copy counts per
// label with H = R(s)[W]) of X_E / |V|^{v_E}. Stops with budget_exhausted set
// after `budget` (template, base) checks.
ExtendabilityReport extendability_certificate(
    const LabelledComplex& phi, const Rational& omega, int s, std::size_t budget = 1'000'000);

} // namespace designlat
