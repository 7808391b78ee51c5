#pragma once

#include <designlat/complex.hpp>
#include <designlat/group.hpp>
#include <designlat/linalg.hpp>
#include <designlat/vector_system.hpp>

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace designlat {

using Edge = std::vector<Vertex>; // sorted

// Integer-weighted r-uniform hypergraph on [vertices].
struct Hypergraph {
    std::size_t vertices = 0;
    int uniformity = 0;
    std::map<Edge, Integer> edges; // nonzero multiplicities only

    Hypergraph() = default;
    Hypergraph(std::size_t n, int r) : vertices(n), uniformity(r) { }
    static Hypergraph complete(std::size_t n, int r, const Integer& multiplicity = 1);

    void add(Edge e, const Integer& m = 1);
    Integer multiplicity(Edge e) const;
    // Σ multiplicities of edges containing f.
    Integer degree(const Edge& f) const;
    Integer total() const;
    bool contains(const Edge& e) const { return multiplicity(e) != 0; }
};

struct PartitionSpec {
    std::vector<LabelSet> label_parts;
    std::vector<std::vector<Vertex>> vertex_parts;

    std::vector<int> label_index(LabelSet s) const;
    std::vector<int> vertex_index(const Edge& e) const;
    int part_of_vertex(Vertex v) const;
};

struct ProblemInstance {
    LabelledComplex phi;
    VectorSystem gamma;
    EdgeVector target;
    nlohmann::json provenance;
    std::optional<PartitionSpec> partition;
};

// G* with G*_ψ = G_{Im ψ} on Φ_r (entries where G is zero are omitted).
EdgeVector lift(const LabelledComplex& phi, const Hypergraph& g);

ProblemInstance build_nonpartite(const Hypergraph& h, const Hypergraph& g);
// Throws ConstructionError when G has an edge whose index is not an index of H.
ProblemInstance build_partite(const Hypergraph& h, const PartitionSpec& p, const Hypergraph& g);

struct DivisibilityReport {
    bool divisible = true;
    int level = -1;       // failing i
    Edge witness;         // failing f (vertex set)
    std::string detail;
};

// gcd of i-set degrees of H divides every i-set degree of G, 0 ≤ i < r.
DivisibilityReport check_H_divisible(const Hypergraph& h, const Hypergraph& g);
DivisibilityReport check_HP_divisible(const Hypergraph& h, const PartitionSpec& p, const Hypergraph& g);

// binom(q−i, r−i) | λ binom(n−i, r−i) for 0 ≤ i < r.
DivisibilityReport design_divisible(long n, int q, int r, const Integer& lambda);
DivisibilityReport resolvable_conditions(long n, int q, int r, const Integer& lambda);
// The above plus λ | binom(n−r, q−r).
DivisibilityReport large_set_conditions(long n, int q, int r, const Integer& lambda);
// (q − j) | (n − j) for 0 ≤ j < q; the failing modulus is reported as `level`.
DivisibilityReport complete_resolution_conditions(long n, int q);

enum class RainbowMode { All, Fixed };
DivisibilityReport rainbow_divisible(int q, int r, long n, RainbowMode mode);
ProblemInstance build_rainbow(int q, int r, std::size_t n, RainbowMode mode);

// Rows [q]_i, columns [q]_r, entry 1 when the row set is contained in the column set.
Matrix inclusion_matrix(int q, int i, int r);

ProblemInstance build_tryst(std::size_t n);

// Oriented r-graph: each edge carries a vertex sequence, up to even permutations.
struct OrientedHypergraph {
    std::size_t vertices = 0;
    int uniformity = 0;
    std::map<Edge, int> parity; // sorted edge → parity of the given orientation

    // Throws ConstructionError for repeated vertices or opposite orientations of one edge.
    void add(const std::vector<Vertex>& oriented);
    OrientedHypergraph reversed() const;
};
ProblemInstance build_oriented(const OrientedHypergraph& h, const OrientedHypergraph& g);

// Sudoku H on {x1,x2,y1,y2,z1,z2} = labels 0..5 and its complete n-blowup.
Hypergraph sudoku_graph();
ProblemInstance build_sudoku(std::size_t n);
// Latin squares of order n as partite triangle decompositions of K_{n,n,n}.
ProblemInstance build_latin(std::size_t n);

// Twisted octahedron inside a host where every octahedron triangle lies in a
// rainbow K4; other host edges get seeded random colours.
struct TwistedOctahedron {
    ProblemInstance instance;
    std::vector<std::vector<int>> colour; // pair colours, 0-indexed labels ↔ colours 1..6
    Vertex y0 = 0, z0 = 1;
};
TwistedOctahedron build_twisted_octahedron(std::uint64_t seed = 1);
// f(J): the colour pair (c(xy0), c(xz0)) of each triangle through y0z0 selects e1..e4.
IntVec twisted_invariant(const TwistedOctahedron& t, const EdgeVector& j);
// Whether v lies in the ℤ-span of f over molecules, which is spanned by (1,0,0,1) and (0,1,1,0).
bool twisted_invariant_admissible(const IntVec& v);

// Uniform fractional decomposition: is there a single weight y with y·(molecule
// count at each atom) equal to the atom demand?  Counts use the closed form on
// complete complexes.
struct UniformFractionalReport {
    bool feasible = false;
    std::optional<Rational> weight;
    std::vector<Integer> counts; // per atom item, in atom decomposition order
};
UniformFractionalReport uniform_fractional(const VectorSystem& gamma, const LabelledComplex& phi, const EdgeVector& g);

// ---- reductions ----

struct Reduction {
    ProblemInstance instance;
    nlohmann::json decoder; // serializable recipe, also stored in instance.provenance
};

// Blocks of the decoded object, grouped.
struct ResolvableDesign {
    std::vector<std::vector<Edge>> classes;
};
struct LargeSet {
    std::vector<std::vector<Edge>> designs;
};
struct CompleteResolution {
    // block and its chain (y_0, ..., y_{q−1}) as indices into each Y_j
    std::vector<std::pair<Edge, std::vector<std::size_t>>> blocks;
};

// H is an r-graph on [q] (vertex-regular), G an r-multigraph on [n].
Reduction reduce_resolvable(const Hypergraph& h, const Hypergraph& g, std::uint64_t seed);
ResolvableDesign decode_resolvable(const nlohmann::json& decoder, const Selection& s);

// G a q-multigraph on [n] (default K^q_n).
Reduction reduce_large_set(int q, int r, const Integer& lambda, long n, const std::optional<Hypergraph>& g,
    std::uint64_t seed);
LargeSet decode_large_set(const nlohmann::json& decoder, const Selection& s);

Reduction reduce_complete_resolution(int q, long n);
CompleteResolution decode_complete_resolution(const nlohmann::json& decoder, const Selection& s);

nlohmann::json decode(const nlohmann::json& decoder, const Selection& s);

// Direct verifiers that do not look at the reductions.
struct CheckResult {
    bool ok = true;
    std::string detail;
};
// Every r-set e lies in exactly g(e) blocks (g given by multiplicity).
CheckResult verify_design_blocks(const std::vector<Edge>& blocks, const Hypergraph& g);
CheckResult verify_resolvable(const ResolvableDesign& d, std::size_t n, int q, const Hypergraph& g);
CheckResult verify_large_set(const LargeSet& l, std::size_t n, int q, int r, const Integer& lambda, const Hypergraph& g);
CheckResult verify_complete_resolution(const CompleteResolution& c, std::size_t n, int q);

// ---- typicality ----

// max over sets A of (r−1)-sets with |A| ≤ s of ||∩G(f)| / (d^{|A|} n) − 1| / |A|.
Rational measure_typicality(const Hypergraph& g, int s);
// Partite variant relative to an H-blowup with parts p.vertex_parts indexed by V(H).
Rational measure_partite_typicality(const Hypergraph& g, const Hypergraph& h, const PartitionSpec& p, int s);

} // namespace designlat
