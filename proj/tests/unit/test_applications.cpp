#include <designlat/applications.hpp>
#include <designlat/builtins.hpp>
#include <designlat/errors.hpp>
#include <designlat/lattice.hpp>
#include <designlat/solver.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace designlat;

namespace {

Hypergraph K(std::size_t n, int r, long lambda = 1) { return Hypergraph::complete(n, r, lambda); }

PartitionSpec tripartite(std::size_t n)
{
    PartitionSpec p;
    for (int k = 0; k < 3; ++k) {
        p.label_parts.push_back(LabelSet { k });
        std::vector<Vertex> part;
        for (std::size_t x = 0; x < n; ++x)
            part.push_back(static_cast<Vertex>(k * n + x));
        p.vertex_parts.push_back(part);
    }
    return p;
}

Hypergraph complete_tripartite(std::size_t n)
{
    Hypergraph g(3 * n, 2);
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    g.add({ static_cast<Vertex>(a * n + x), static_cast<Vertex>(b * n + y) });
    return g;
}

std::vector<oracle::Triple> as_triples(const std::vector<Edge>& blocks)
{
    std::vector<oracle::Triple> out;
    for (auto& b : blocks)
        out.push_back({ b.at(0), b.at(1), b.at(2) });
    return out;
}

} // namespace

TEST(Hypergraph, DegreesOfCompleteGraphs)
{
    auto g = K(7, 2);
    EXPECT_EQ(g.total(), 21);
    EXPECT_EQ(g.degree({ 3 }), 6);
    EXPECT_EQ(g.degree({}), 21);
    EXPECT_EQ(K(5, 2, 3).degree({ 0 }), 12);
}

TEST(Divisibility, DesignExamples)
{
    EXPECT_TRUE(check_H_divisible(K(3, 2), K(7, 2)).divisible);
    auto k6 = check_H_divisible(K(3, 2), K(6, 2));
    EXPECT_FALSE(k6.divisible);
    EXPECT_EQ(k6.level, 1);
    EXPECT_TRUE(check_H_divisible(K(3, 2), K(5, 2, 3)).divisible);
    EXPECT_TRUE(design_divisible(7, 3, 2, 1).divisible);
    EXPECT_FALSE(design_divisible(6, 3, 2, 1).divisible);
}

TEST(Divisibility, ResolvableAndCompleteResolution)
{
    EXPECT_TRUE(resolvable_conditions(9, 3, 2, 1).divisible);
    EXPECT_FALSE(resolvable_conditions(8, 3, 2, 1).divisible);
    EXPECT_FALSE(resolvable_conditions(7, 3, 2, 1).divisible); // 3 does not divide 7
    EXPECT_TRUE(complete_resolution_conditions(9, 3).divisible);
    EXPECT_FALSE(complete_resolution_conditions(8, 3).divisible);
    EXPECT_TRUE(complete_resolution_conditions(4, 2).divisible);
}

TEST(Divisibility, LargeSetMatchesDirectArithmetic)
{
    for (long n = 1; n <= 30; ++n)
        for (int q = 2; q <= 4 && q <= n; ++q)
            for (int r = 1; r < q; ++r)
                for (long lambda = 1; lambda <= 6; ++lambda) {
                    bool expect = oracle::binom(static_cast<int>(n - r), q - r) % lambda == 0;
                    for (int i = 0; i < r && expect; ++i)
                        expect = (lambda * oracle::binom(static_cast<int>(n - i), r - i)) % oracle::binom(q - i, r - i) == 0;
                    EXPECT_EQ(large_set_conditions(n, q, r, lambda).divisible, expect) << n << ' ' << q << ' ' << r << ' ' << lambda;
                }
}

TEST(Divisibility, PartiteBalance)
{
    auto h = K(3, 2);
    EXPECT_TRUE(check_HP_divisible(h, tripartite(3), complete_tripartite(3)).divisible);
    auto g = complete_tripartite(3);
    g.edges.erase(Edge { 0, 3 });
    auto rep = check_HP_divisible(h, tripartite(3), g);
    EXPECT_FALSE(rep.divisible);
}

TEST(Divisibility, BlowupOfADecompositionIsBalanced)
{
    // the edges of the triangles of a Latin square of order 3
    auto inst = build_latin(3);
    auto r = solve_exact(inst.gamma, inst.phi, inst.target);
    ASSERT_TRUE(r.selection);
    Hypergraph g(9, 2);
    for (auto& [key, c] : r.selection->entries()) {
        auto im = key.map.image_sorted();
        g.add({ im[0], im[1] });
        g.add({ im[0], im[2] });
        g.add({ im[1], im[2] });
    }
    EXPECT_TRUE(check_HP_divisible(K(3, 2), tripartite(3), g).divisible);
}

TEST(Rainbow, Divisibility)
{
    EXPECT_TRUE(rainbow_divisible(3, 2, 7, RainbowMode::Fixed).divisible);
    EXPECT_FALSE(rainbow_divisible(3, 2, 6, RainbowMode::All).divisible);
}

TEST(Rainbow, FixedInstanceSolves)
{
    auto inst = build_rainbow(3, 2, 7, RainbowMode::Fixed);
    EXPECT_EQ(inst.gamma.dim(), 3);
    auto r = solve_exact(inst.gamma, inst.phi, inst.target);
    ASSERT_EQ(r.status, SolveStatus::Solved);
    EXPECT_TRUE(verify(inst.gamma, inst.phi, *r.selection, inst.target, VerifyMode::Set).ok);
}

TEST(Builders, IsolatedVertexKeepsSolvability)
{
    Hypergraph h(4, 2);
    h.add({ 0, 1 });
    h.add({ 0, 2 });
    h.add({ 1, 2 });
    auto with = build_nonpartite(h, K(7, 2));
    auto r = solve_exact(with.gamma, with.phi, with.target);
    ASSERT_EQ(r.status, SolveStatus::Solved);
    EXPECT_TRUE(verify(with.gamma, with.phi, *r.selection, with.target, VerifyMode::Set).ok);
    auto without = build_nonpartite(h, K(6, 2));
    EXPECT_EQ(solve_exact(without.gamma, without.phi, without.target).status, SolveStatus::Unsat);
}

TEST(Builders, PartiteRejectsForeignEdges)
{
    Hypergraph g(6, 2);
    g.add({ 0, 1 }); // inside part 0
    EXPECT_THROW(build_partite(K(3, 2), tripartite(2), g), ConstructionError);
}

TEST(Builders, BipartitionUsesPartPreservingGroup)
{
    PartitionSpec p;
    p.label_parts = { LabelSet { 0, 1 }, LabelSet { 2 } };
    p.vertex_parts = { { 0, 1, 2, 3 }, { 4, 5 } };
    Hypergraph h(3, 2);
    h.add({ 0, 2 });
    h.add({ 1, 2 });
    Hypergraph g(6, 2);
    for (Vertex a = 0; a < 4; ++a)
        for (Vertex b = 4; b < 6; ++b)
            g.add({ a, b });
    auto inst = build_partite(h, p, g);
    EXPECT_EQ(inst.gamma.group().order(), 2);
    EXPECT_TRUE(is_exactly_adapted(inst.phi, inst.gamma.group()));
    auto c = count_exact(inst.gamma, inst.phi, inst.target);
    // each part-two vertex splits its four neighbours into two unordered pairs: 3 ways each
    EXPECT_EQ(c.count, 9);
}

TEST(Sudoku, GraphShape)
{
    auto h = sudoku_graph();
    EXPECT_EQ(h.vertices, 6u);
    EXPECT_EQ(h.uniformity, 4);
    EXPECT_EQ(h.edges.size(), 4u);
    EXPECT_TRUE(h.contains({ 0, 1, 2, 3 }));
    EXPECT_TRUE(h.contains({ 0, 2, 4, 5 }));
}

TEST(Tryst, ElementaryAndInLattice)
{
    auto inst = build_tryst(9);
    EXPECT_TRUE(check_elementary(inst.gamma));
    EXPECT_TRUE(lattice_member_L(inst.gamma, inst.target, LatticeMethod::Sharp).member);
    auto u = uniform_fractional(inst.gamma, inst.phi, inst.target);
    ASSERT_TRUE(u.feasible);
    ASSERT_TRUE(u.weight);
    // (n-3)_6 completions of each of the 6 maps onto a captain or team triple
    EXPECT_EQ(*u.weight, Rational(1, 6 * 720));
}

TEST(Tryst, TooFewPlayers)
{
    EXPECT_THROW(build_tryst(8), ConstructionError);
}

TEST(Oriented, OrientationConflict)
{
    OrientedHypergraph h { 3, 2, {} };
    h.add({ 0, 1 });
    EXPECT_THROW(h.add({ 1, 0 }), ConstructionError);
}

TEST(Oriented, CyclicTriangleInDoublyRegularTournament)
{
    OrientedHypergraph h { 3, 2, {} };
    h.add({ 0, 1 });
    h.add({ 1, 2 });
    h.add({ 2, 0 });
    // quadratic residue tournament on Z_7: i -> i+d for d in {1,2,4}
    OrientedHypergraph g { 7, 2, {} };
    for (Vertex i = 0; i < 7; ++i)
        for (Vertex d : { 1, 2, 4 })
            g.add({ i, static_cast<Vertex>((i + d) % 7) });
    auto inst = build_oriented(h, g);
    auto r = solve_exact(inst.gamma, inst.phi, inst.target);
    ASSERT_EQ(r.status, SolveStatus::Solved);
    EXPECT_TRUE(verify(inst.gamma, inst.phi, *r.selection, inst.target, VerifyMode::Set).ok);
    auto rev = build_oriented(h.reversed(), g.reversed());
    EXPECT_EQ(solve_exact(rev.gamma, rev.phi, rev.target).status, SolveStatus::Solved);
}

TEST(Reduction, KirkmanTripleSystemOnNine)
{
    auto red = reduce_resolvable(K(3, 2), K(9, 2), 1);
    auto r = solve_exact(red.instance.gamma, red.instance.phi, red.instance.target);
    ASSERT_EQ(r.status, SolveStatus::Solved);
    auto d = decode_resolvable(red.decoder, *r.selection);
    EXPECT_EQ(d.classes.size(), 4u);
    std::vector<std::vector<oracle::Triple>> classes;
    for (auto& c : d.classes)
        classes.push_back(as_triples(c));
    EXPECT_TRUE(oracle::is_kirkman(classes, 9));
    EXPECT_TRUE(verify_resolvable(d, 9, 3, K(9, 2)).ok);
}

TEST(Reduction, OneFactorisationOfK4)
{
    auto red = reduce_resolvable(K(2, 2), K(4, 2), 1);
    auto r = solve_exact(red.instance.gamma, red.instance.phi, red.instance.target);
    ASSERT_EQ(r.status, SolveStatus::Solved);
    auto d = decode_resolvable(red.decoder, *r.selection);
    EXPECT_EQ(d.classes.size(), 3u);
    EXPECT_TRUE(verify_resolvable(d, 4, 2, K(4, 2)).ok);
}

TEST(Reduction, ResolvableNeedsDivisibility)
{
    EXPECT_THROW(reduce_resolvable(K(3, 2), K(8, 2), 1), ReductionError);
}

TEST(Reduction, LargeSetPreconditions)
{
    // binom(6-1, 1)/binom(2, 1) = 5/2 is not an integer
    EXPECT_THROW(reduce_large_set(3, 2, 1, 6, std::nullopt, 1), ReductionError);
    EXPECT_THROW(reduce_large_set(4, 2, 3, 7, std::nullopt, 1), PreconditionError);
    // all Z_i are integers but 2 does not divide binom(5,1)
    EXPECT_THROW(reduce_large_set(3, 2, 2, 7, std::nullopt, 1), PreconditionError);
    auto red = reduce_large_set(3, 2, 1, 3, std::nullopt, 1);
    EXPECT_EQ(red.decoder.at("J").size(), 1u);
}

TEST(Reduction, LargeSetOfTriplesOnSevenVertices)
{
    // triangles of K_7 split into 5 Steiner triple systems
    auto red = reduce_large_set(3, 2, 1, 7, std::nullopt, 1);
    auto r = solve_exact(red.instance.gamma, red.instance.phi, red.instance.target,
        SearchConfig { .node_budget = 2'000'000 });
    if (r.status == SolveStatus::Budget)
        GTEST_SKIP() << "search budget exhausted";
    ASSERT_EQ(r.status, SolveStatus::Unsat) << "no large set of STS(7) exists";
}

TEST(Reduction, LargeSetDegenerateSingleDesign)
{
    auto red = reduce_large_set(3, 2, 1, 3, std::nullopt, 1);
    auto r = solve_exact(red.instance.gamma, red.instance.phi, red.instance.target);
    ASSERT_EQ(r.status, SolveStatus::Solved);
    auto l = decode_large_set(red.decoder, *r.selection);
    EXPECT_EQ(l.designs.size(), 1u);
    EXPECT_TRUE(verify_large_set(l, 3, 3, 2, 1, K(3, 3)).ok);
}

TEST(Reduction, CompleteResolutionOfK4)
{
    auto red = reduce_complete_resolution(2, 4);
    auto r = solve_exact(red.instance.gamma, red.instance.phi, red.instance.target);
    ASSERT_EQ(r.status, SolveStatus::Solved);
    auto c = decode_complete_resolution(red.decoder, *r.selection);
    EXPECT_EQ(c.blocks.size(), 6u);
    EXPECT_TRUE(verify_complete_resolution(c, 4, 2).ok);
}

TEST(Reduction, CompleteResolutionCongruence)
{
    EXPECT_NO_THROW(reduce_complete_resolution(3, 9));
    EXPECT_THROW(reduce_complete_resolution(3, 8), ReductionError);
}

TEST(Verifiers, DesignBlocks)
{
    std::vector<Edge> fano;
    for (auto& t : oracle::fano_blocks())
        fano.push_back({ static_cast<Vertex>(t[0]), static_cast<Vertex>(t[1]), static_cast<Vertex>(t[2]) });
    EXPECT_TRUE(verify_design_blocks(fano, K(7, 2)).ok);
    fano.pop_back();
    EXPECT_FALSE(verify_design_blocks(fano, K(7, 2)).ok);
}

TEST(InclusionMatrix, ShapeAndRank)
{
    auto m = inclusion_matrix(5, 1, 2);
    EXPECT_EQ(m.rows(), 5u);
    EXPECT_EQ(m.cols(), 10u);
    std::vector<std::vector<long long>> rows(m.rows(), std::vector<long long>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            rows[i][j] = m(i, j).get_si();
    EXPECT_EQ(rank(m), static_cast<std::size_t>(oracle::rank_small(rows)));
    EXPECT_EQ(rank(m), 5u);
}

TEST(Typicality, CompleteGraph)
{
    // |∩ N| over a family of a vertices is n − a, so every ratio deviates by a/n
    EXPECT_EQ(measure_typicality(K(10, 2), 2), Rational(1, 10));
    EXPECT_THROW(measure_typicality(Hypergraph(10, 2), 2), PreconditionError);
}

TEST(Typicality, PartiteBlowupRuns)
{
    auto t = measure_partite_typicality(complete_tripartite(3), K(3, 2), tripartite(3), 2);
    EXPECT_GE(t, 0);
}

TEST(TwistedOctahedron, HostIsRainbowOnTheOctahedron)
{
    auto t = build_twisted_octahedron(1);
    EXPECT_EQ(t.instance.target.support_size(), 8u);
    for (auto& [psi, v] : t.instance.target.entries()) {
        auto im = psi.image_sorted();
        std::set<int> colours { t.colour[im[0]][im[1]], t.colour[im[0]][im[2]], t.colour[im[1]][im[2]] };
        EXPECT_EQ(colours, (std::set<int> { 1, 2, 3 }));
    }
    // other seeds only recolour edges off the octahedron and the w vertices
    auto t2 = build_twisted_octahedron(99);
    EXPECT_FALSE(lattice_member_L(t2.instance.gamma, t2.instance.target, LatticeMethod::Sharp).member);
    EXPECT_EQ(twisted_invariant(t2, t2.instance.target), (IntVec { 1, -1, 0, 0 }));
}

TEST(Builtins, AllBuild)
{
    for (auto& b : builtin_instances()) {
        auto inst = build_builtin(b.name);
        EXPECT_EQ(inst.provenance.at("builtin"), b.name);
        EXPECT_FALSE(inst.target.is_zero());
    }
    EXPECT_THROW(build_builtin("nope"), InputError);
}
