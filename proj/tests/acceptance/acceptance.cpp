#include <designlat/applications.hpp>
#include <designlat/builtins.hpp>
#include <designlat/finite_field.hpp>
#include <designlat/lattice.hpp>
#include <designlat/linalg.hpp>
#include <designlat/solver.hpp>

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace designlat;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

// Collects the first few reasons for failure so the report line stays short.
struct Log {
    std::ostringstream out;
    int failures = 0;
    void fail(const std::string& why)
    {
        if (failures++ < 3)
            out << (failures > 1 ? "; " : "") << why;
    }
    Outcome done(const std::string& ok_detail)
    {
        if (failures == 0)
            return { true, ok_detail };
        if (failures > 3)
            out << "; +" << failures - 3 << " more";
        return { false, out.str() };
    }
};

Outcome twisted_octahedron()
{
    Log log;
    auto t = build_twisted_octahedron();
    auto& inst = t.instance;
    for (int i = 0; i < 3; ++i)
        if (!vertex_null_check(inst.target, i))
            log.fail("not null at level " + std::to_string(i));
    if (!lattice_member_Lminus(inst.gamma, inst.target))
        log.fail("Lminus rejects");

    Hypergraph j(inst.phi.vertex_count(), 3);
    for (auto& [psi, v] : inst.target.entries())
        j.add(psi.image_sorted(), v[0]);
    auto div = check_H_divisible(Hypergraph::complete(4, 3), j);
    if (!div.divisible)
        log.fail("not K^3_4-divisible: " + div.detail);

    for (auto method : { LatticeMethod::Sharp, LatticeMethod::Shadow }) {
        auto rep = lattice_member_L(inst.gamma, inst.target, method);
        if (rep.member)
            log.fail(std::string(method == LatticeMethod::Sharp ? "sharp" : "shadow") + " accepts");
    }
    if (lattice_member_oracle(inst.gamma, inst.phi, inst.target).member)
        log.fail("oracle accepts");
    auto f = twisted_invariant(t, inst.target);
    if (f != IntVec { 1, -1, 0, 0 })
        log.fail("invariant " + to_string(f));
    return log.done("null, in L-, divisible, not in L (both methods), oracle agrees, f = (1,-1,0,0)");
}

EdgeVector random_edge_vector(const ProblemInstance& inst, Rng& rng, int kind)
{
    const auto edges = inst.phi.level(inst.gamma.r());
    EdgeVector j(1);
    switch (kind) {
    case 0: { // arbitrary entries
        for (auto& psi : edges)
            if (rng.below(4) == 0)
                j.set(psi, { rng.between(-3, 3) });
        break;
    }
    case 1:
    case 3: { // lift of a random multigraph, optionally perturbed in one labelled entry
        Hypergraph g(inst.phi.vertex_count(), 2);
        for (Vertex a = 0; a < g.vertices; ++a)
            for (Vertex b = a + 1; b < g.vertices; ++b)
                if (auto m = rng.between(-3, 3))
                    g.add({ a, b }, m);
        j = lift(inst.phi, g);
        if (kind == 3) {
            auto& psi = edges[rng.below(edges.size())];
            auto v = j.get(psi);
            v[0] += v[0] >= 3 ? -1 : 1;
            j.set(psi, v);
        }
        break;
    }
    default: { // boundary of a few signed triangles
        Selection s;
        auto maps = inst.phi.level(LabelSet::range(3));
        for (int k = 1 + static_cast<int>(rng.below(3)); k > 0; --k)
            s.add(0, maps[rng.below(maps.size())], rng.below(2) ? 1 : -1);
        j = boundary(inst.gamma, inst.phi, s);
    }
    }
    return j;
}

Outcome lattice_equality()
{
    Log log;
    int members = 0;
    Rng rng(20240611);
    for (int c = 0; c < 200; ++c) {
        const std::size_t n = 5 + static_cast<std::size_t>(c % 3);
        auto inst = build_nonpartite(Hypergraph::complete(3, 2), Hypergraph::complete(n, 2));
        auto j = random_edge_vector(inst, rng, (c / 3) % 4);
        bool sharp = lattice_member_L(inst.gamma, j, LatticeMethod::Sharp).member;
        bool shadow = lattice_member_L(inst.gamma, j, LatticeMethod::Shadow).member;
        bool oracle = lattice_member_oracle(inst.gamma, inst.phi, j).member;
        members += oracle;
        if (sharp != shadow || sharp != oracle)
            log.fail("case " + std::to_string(c) + " (n=" + std::to_string(n) + "): sharp " + std::to_string(sharp)
                + " shadow " + std::to_string(shadow) + " oracle " + std::to_string(oracle));
    }
    return log.done("200 cases agree, " + std::to_string(members) + " members");
}

bool direct_large_set(long n, int q, int r, long lambda)
{
    for (int i = 0; i < r; ++i) {
        unsigned __int128 lhs = oracle::binom(q - i, r - i);
        unsigned __int128 rhs = static_cast<unsigned __int128>(lambda) * oracle::binom(static_cast<int>(n) - i, r - i);
        if (rhs % lhs != 0)
            return false;
    }
    return oracle::binom(static_cast<int>(n) - r, q - r) % static_cast<std::uint64_t>(lambda) == 0;
}

Outcome divisibility()
{
    Log log;
    auto k3 = Hypergraph::complete(3, 2);
    if (!check_H_divisible(k3, Hypergraph::complete(7, 2)).divisible)
        log.fail("(7,3,2,1) rejected");
    if (check_H_divisible(k3, Hypergraph::complete(6, 2)).divisible)
        log.fail("(6,3,2,1) accepted");
    if (!resolvable_conditions(9, 3, 2, 1).divisible)
        log.fail("resolvable (9,3) rejected");
    if (resolvable_conditions(8, 3, 2, 1).divisible)
        log.fail("resolvable (8,3) accepted");
    if (!complete_resolution_conditions(9, 3).divisible)
        log.fail("complete resolution (9,3) rejected");
    if (complete_resolution_conditions(8, 3).divisible)
        log.fail("complete resolution (8,3) accepted");
    int checked = 0;
    for (int q = 2; q <= 5; ++q)
        for (int r = 1; r < q; ++r)
            for (long n = q; n <= 60; ++n)
                for (long lambda = 1; lambda <= 20; ++lambda) {
                    ++checked;
                    if (large_set_conditions(n, q, r, lambda).divisible != direct_large_set(n, q, r, lambda))
                        log.fail("large set (" + std::to_string(n) + "," + std::to_string(q) + "," + std::to_string(r)
                            + "," + std::to_string(lambda) + ")");
                }
    return log.done("fixed cases plus " + std::to_string(checked) + " large-set parameter sets");
}

Outcome exact_solves()
{
    Log log;
    SearchConfig cfg;
    cfg.node_budget = 10'000'000;
    auto sts = build_builtin("fano");
    auto r = solve_exact(sts.gamma, sts.phi, sts.target, cfg);
    if (r.status != SolveStatus::Solved || !verify(sts.gamma, sts.phi, *r.selection, sts.target, VerifyMode::Set).ok)
        log.fail("STS(7) not found");
    auto sts_count = count_exact(sts.gamma, sts.phi, sts.target, cfg);
    if (sts_count.status != SolveStatus::Solved || sts_count.count != 30)
        log.fail("STS(7) count " + to_string(sts_count.count));

    auto latin = build_latin(3);
    auto latin_count = count_exact(latin.gamma, latin.phi, latin.target, cfg);
    if (latin_count.status != SolveStatus::Solved || latin_count.count != 12)
        log.fail("latin count " + to_string(latin_count.count));

    auto k6 = build_nonpartite(Hypergraph::complete(3, 2), Hypergraph::complete(6, 2));
    if (solve_exact(k6.gamma, k6.phi, k6.target, cfg).status != SolveStatus::Unsat)
        log.fail("K6 not unsat");

    auto k9 = Hypergraph::complete(9, 2);
    auto red = reduce_resolvable(Hypergraph::complete(3, 2), k9, 1);
    auto kr = solve_exact(red.instance.gamma, red.instance.phi, red.instance.target, cfg);
    if (kr.status != SolveStatus::Solved) {
        log.fail("KTS(9) search: " + to_string(kr.status));
    } else {
        auto kts = decode_resolvable(red.decoder, *kr.selection);
        std::vector<std::vector<oracle::Triple>> classes;
        for (auto& cls : kts.classes) {
            classes.emplace_back();
            for (auto& b : cls)
                if (b.size() == 3)
                    classes.back().push_back({ b[0], b[1], b[2] });
        }
        if (!oracle::is_kirkman(classes, 9))
            log.fail("decoded KTS(9) fails the brute-force check");
        if (!verify_resolvable(kts, 9, 3, k9).ok)
            log.fail("decoded KTS(9) fails verify_resolvable");
    }
    return log.done("STS(7) verified, 30 systems, 12 latin squares, K6 unsat, KTS(9) decoded");
}

struct OctSetup {
    LabelledComplex phi;
    SymmetricFrame frame;
    std::vector<OctahedronEmbedding> octs;
    std::vector<IntVec> gens;
};

OctSetup oct_setup(int r, std::size_t n, bool symmetric)
{
    auto b = LabelSet::range(r);
    auto g = symmetric ? PermutationGroup::symmetric(b) : PermutationGroup::trivial(b);
    auto phi = LabelledComplex::complete(r, n);
    auto frame = SymmetricFrame::make(g, b, 1);
    std::vector<IntVec> gens;
    for (std::size_t k = 0; k < frame.width(); ++k) {
        IntVec e(frame.width(), 0);
        e[k] = 1;
        gens.push_back(e);
    }
    auto octs = octahedra(phi, b);
    return { phi, frame, octs, gens };
}

bool recovered(const OctSetup& s, const SymmetricVector& j)
{
    auto sol = octahedral_decomposition(s.phi, s.frame, s.gens, j);
    if (!sol)
        return false;
    SymmetricVector back(s.frame.width());
    for (auto& [e, gi, c] : sol->terms) {
        auto chi = octahedron_vector(s.phi, s.frame, e, s.gens[gi]);
        for (auto& [psi, v] : chi.entries())
            back.add(psi, v, c);
    }
    return back == j;
}

Outcome octahedral_span()
{
    Log log;
    Rng rng(77);
    int combos = 0, nulls = 0;
    for (int r : { 2, 3 })
        for (bool sym : { true, false }) {
            auto s = oct_setup(r, r == 2 ? 5 : 6, sym);
            std::string tag = "r=" + std::to_string(r) + (sym ? " S_r" : " id");
            for (int k = 0; k < 25; ++k, ++combos) {
                SymmetricVector j(s.frame.width());
                for (int t = 1 + static_cast<int>(rng.below(4)); t > 0; --t) {
                    IntVec v(s.frame.width());
                    for (auto& x : v)
                        x = rng.between(-2, 2);
                    auto chi = octahedron_vector(s.phi, s.frame, s.octs[rng.below(s.octs.size())], v);
                    j += chi;
                }
                if (!is_symmetric(j, s.frame) || !is_null(j, s.frame))
                    log.fail(tag + ": combination not symmetric+null");
                else if (!recovered(s, j))
                    log.fail(tag + ": combination not recovered");
            }
            auto basis = symmetric_null_basis(s.phi, s.frame, s.gens);
            for (int k = 0; k < 5; ++k, ++nulls) {
                SymmetricVector j(s.frame.width());
                for (auto& bvec : basis)
                    if (auto c = rng.between(-2, 2))
                        for (auto& [psi, v] : bvec.entries())
                            j.add(psi, v, c);
                if (!is_symmetric(j, s.frame) || !is_null(j, s.frame))
                    log.fail(tag + ": basis combination not symmetric+null");
                else if (!recovered(s, j))
                    log.fail(tag + ": symmetric null vector not in the octahedral span");
            }
        }
    return log.done(std::to_string(combos) + " combinations recovered, " + std::to_string(nulls)
        + " symmetric null vectors are members");
}

Outcome diagonal_form_engine()
{
    Log log;
    Rng rng(6);
    for (int t = 0; t < 500; ++t) {
        std::size_t m = 1 + rng.below(8), n = 1 + rng.below(8);
        Matrix z(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                z(i, j) = rng.between(-9, 9);
        auto df = diagonal_form(z);
        std::string tag = "matrix " + std::to_string(t);
        if (df.P * z * df.Q != df.D)
            log.fail(tag + ": PZQ != D");
        if (abs(determinant(df.P)) != 1 || abs(determinant(df.Q)) != 1)
            log.fail(tag + ": not unimodular");
        bool diagonal = true;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && df.D(i, j) != 0)
                    diagonal = false;
        if (!diagonal)
            log.fail(tag + ": D not diagonal");
        for (std::size_t i = 0; i + 1 < std::min(m, n); ++i) {
            auto a = df.D(i, i), b = df.D(i + 1, i + 1);
            if (a < 0 || b < 0 || (a == 0 && b != 0) || (a != 0 && b % a != 0))
                log.fail(tag + ": divisibility chain broken at " + std::to_string(i));
        }
        IntVec x(n);
        for (auto& v : x)
            v = rng.between(-5, 5);
        auto b = z * x;
        auto sol = integer_solve(df, b);
        if (!sol || z * *sol != b)
            log.fail(tag + ": integer_solve missed a span vector");
        IntVec noise(m);
        for (auto& v : noise)
            v = rng.between(-9, 9);
        if (auto s2 = integer_solve(df, noise); s2 && z * *s2 != noise)
            log.fail(tag + ": integer_solve returned a wrong solution");
    }
    return log.done("500 matrices");
}

Outcome tryst()
{
    Log log;
    for (std::size_t n = 9; n <= 12; ++n) {
        auto inst = build_tryst(n);
        auto rep = lattice_member_L(inst.gamma, inst.target, LatticeMethod::Sharp);
        if (!rep.member)
            log.fail("n=" + std::to_string(n) + " not in L");
        if (!uniform_fractional(inst.gamma, inst.phi, inst.target).feasible)
            log.fail("n=" + std::to_string(n) + " uniform weights infeasible");
    }
    auto nine = build_tryst(9);
    SearchConfig cfg;
    cfg.node_budget = 10'000'000;
    auto r = solve_exact(nine.gamma, nine.phi, nine.target, cfg);
    std::string status = to_string(r.status);
    if (r.status == SolveStatus::Unsat)
        log.fail("n=9 reported unsat");
    else if (r.status == SolveStatus::Solved && !verify(nine.gamma, nine.phi, *r.selection, nine.target, VerifyMode::Set).ok)
        log.fail("n=9 certificate fails verify");
    return log.done("n=9..12 in L with uniform weights; n=9 search " + status);
}

Outcome nibble()
{
    Log log;
    std::vector<double> means;
    for (std::size_t n : { 15u, 21u, 27u }) {
        auto inst = build_nonpartite(Hypergraph::complete(3, 2), Hypergraph::complete(n, 2));
        double sum = 0;
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            auto t = nibble_greedy(inst.gamma, inst.phi, inst.target, seed);
            if (!t.residual_nonnegative)
                log.fail("n=" + std::to_string(n) + " seed " + std::to_string(seed) + ": negative residual");
            if (!t.fixpoint)
                log.fail("n=" + std::to_string(n) + " seed " + std::to_string(seed) + ": not a fixpoint");
            sum += static_cast<double>(t.leave_support) / static_cast<double>(t.target_support);
        }
        means.push_back(sum / 50);
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "mean leave fractions %.4f %.4f %.4f", means[0], means[1], means[2]);
    if (means[1] > means[0] || means[2] > means[1])
        log.fail(std::string(buf) + " not nonincreasing");
    return log.done(buf);
}

Outcome generic_matrices()
{
    Log log;
    std::uint64_t minors = 0;
    for (int q = 1; q <= 8; ++q)
        for (int r = 1; r <= q; ++r) {
            auto m = generic_matrix(q, r, next_prime(static_cast<std::uint64_t>(q + r)));
            auto rep = check_generic(m);
            minors += rep.minors_checked;
            if (!rep.generic)
                log.fail("q=" + std::to_string(q) + " r=" + std::to_string(r) + " p=" + std::to_string(m.p) + ": "
                    + rep.failing_minor);
        }
    return log.done(std::to_string(minors) + " minors nonsingular");
}

Outcome inclusion_ranks()
{
    Log log;
    int cases = 0;
    for (int q = 1; q <= 8; ++q)
        for (int r = 0; 2 * r <= q; ++r)
            for (int i = 0; i <= r; ++i, ++cases) {
                auto m = inclusion_matrix(q, i, r);
                auto want = binomial(q, i);
                if (rank(m) != want)
                    log.fail("M(" + std::to_string(q) + "," + std::to_string(i) + "," + std::to_string(r)
                        + ") has rank " + std::to_string(rank(m)));
            }
    return log.done(std::to_string(cases) + " matrices of full row rank");
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        { "twisted octahedron obstruction", twisted_octahedron },
        { "lattice equality against the molecule oracle", lattice_equality },
        { "divisibility checkers", divisibility },
        { "exact solves", exact_solves },
        { "octahedral span", octahedral_span },
        { "diagonal form engine", diagonal_form_engine },
        { "tryst instances", tryst },
        { "nibble simulator", nibble },
        { "generic matrices", generic_matrices },
        { "inclusion matrix rank", inclusion_ranks },
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].run();
        } catch (const std::exception& e) {
            o = { false, std::string("exception: ") + e.what() };
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].name, secs,
            o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
