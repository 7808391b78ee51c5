#include <designlat/applications.hpp>
#include <designlat/errors.hpp>

#include <algorithm>
#include <numeric>
#include <set>

namespace designlat {

using nlohmann::json;

namespace {

// Visit every k-subset of `items` (kept in order).
template <typename T, typename F>
void for_each_subset(const std::vector<T>& items, int k, F&& fn)
{
    const int n = static_cast<int>(items.size());
    if (k < 0 || k > n)
        return;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<T> cur(k);
    while (true) {
        for (int i = 0; i < k; ++i)
            cur[i] = items[idx[i]];
        fn(cur);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i)
            --i;
        if (i < 0)
            return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

std::vector<Vertex> range_vertices(std::size_t from, std::size_t to)
{
    std::vector<Vertex> v;
    for (auto x = from; x < to; ++x)
        v.push_back(static_cast<Vertex>(x));
    return v;
}

int parity_of(const std::vector<Vertex>& seq)
{
    int inv = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j])
                ++inv;
    return inv & 1;
}

Edge image_of(const Injection& m) { return m.image_sorted(); }

// Sequence (m(b_1), ..., m(b_r)) over the domain in increasing label order.
std::vector<Vertex> ordered_image(const Injection& m)
{
    std::vector<Vertex> out;
    for (auto l : m.domain().labels())
        out.push_back(m(l));
    return out;
}

json edge_list(const Hypergraph& g)
{
    json out = json::array();
    for (auto& [e, m] : g.edges)
        out.push_back({ { "edge", e }, { "multiplicity", m.get_str() } });
    return out;
}

// Degrees of every nonempty-degree subset of size k, summed over edges.
std::map<Edge, Integer> subset_degrees(const Hypergraph& g, int k)
{
    std::map<Edge, Integer> deg;
    for (auto& [e, m] : g.edges)
        for_each_subset(e, k, [&](const Edge& f) { deg[f] += m; });
    return deg;
}

VectorSystem indicator_system(int q, int r, const PermutationGroup& sigma, const Hypergraph& h)
{
    std::set<Edge> edges;
    for (auto& [e, m] : h.edges)
        edges.insert(e);
    (void)q;
    return VectorSystem::from_function(sigma, r, 1, { "H" }, [&](std::size_t, const Injection& theta) {
        return IntVec { edges.count(image_of(theta)) ? 1 : 0 };
    });
}

bool divides(const Integer& d, const Integer& x)
{
    if (d == 0)
        return x == 0;
    return x % d == 0;
}

} // namespace

// ---- Hypergraph ----

Hypergraph Hypergraph::complete(std::size_t n, int r, const Integer& multiplicity)
{
    Hypergraph g(n, r);
    for_each_subset(range_vertices(0, n), r, [&](const Edge& e) { g.edges[e] = multiplicity; });
    if (multiplicity == 0)
        g.edges.clear();
    return g;
}

void Hypergraph::add(Edge e, const Integer& m)
{
    std::sort(e.begin(), e.end());
    if (static_cast<int>(e.size()) != uniformity)
        throw ConstructionError("edge size differs from the uniformity");
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
        throw ConstructionError("edge has a repeated vertex");
    if (!e.empty() && e.back() >= vertices)
        throw ConstructionError("edge vertex out of range");
    auto& slot = edges[e];
    slot += m;
    if (slot == 0)
        edges.erase(e);
}

Integer Hypergraph::multiplicity(Edge e) const
{
    std::sort(e.begin(), e.end());
    auto it = edges.find(e);
    return it == edges.end() ? Integer(0) : it->second;
}

Integer Hypergraph::degree(const Edge& f) const
{
    Edge s = f;
    std::sort(s.begin(), s.end());
    Integer d = 0;
    for (auto& [e, m] : edges)
        if (std::includes(e.begin(), e.end(), s.begin(), s.end()))
            d += m;
    return d;
}

Integer Hypergraph::total() const
{
    Integer t = 0;
    for (auto& [e, m] : edges)
        t += m;
    return t;
}

// ---- PartitionSpec ----

std::vector<int> PartitionSpec::label_index(LabelSet s) const
{
    std::vector<int> out;
    for (auto p : label_parts)
        out.push_back((s & p).size());
    return out;
}

int PartitionSpec::part_of_vertex(Vertex v) const
{
    for (std::size_t k = 0; k < vertex_parts.size(); ++k)
        if (std::find(vertex_parts[k].begin(), vertex_parts[k].end(), v) != vertex_parts[k].end())
            return static_cast<int>(k);
    return -1;
}

std::vector<int> PartitionSpec::vertex_index(const Edge& e) const
{
    std::vector<int> out(vertex_parts.size(), 0);
    for (auto v : e) {
        int k = part_of_vertex(v);
        if (k < 0)
            throw ConstructionError("vertex " + std::to_string(v) + " lies in no part");
        ++out[k];
    }
    return out;
}

// ---- builders ----

EdgeVector lift(const LabelledComplex& phi, const Hypergraph& g)
{
    EdgeVector out(1);
    for (auto b : subsets_of_size(phi.labels(), g.uniformity))
        for (auto& psi : phi.level(b)) {
            auto m = g.multiplicity(image_of(psi));
            if (m != 0)
                out.set(psi, { m });
        }
    return out;
}

ProblemInstance build_nonpartite(const Hypergraph& h, const Hypergraph& g)
{
    const int q = static_cast<int>(h.vertices);
    if (h.uniformity != g.uniformity)
        throw ConstructionError("H and G have different uniformities");
    if (g.vertices < h.vertices)
        throw ConstructionError("G needs at least as many vertices as H");
    auto labels = LabelSet::range(q);
    auto phi = LabelledComplex::complete(q, g.vertices);
    auto gamma = indicator_system(q, h.uniformity, PermutationGroup::symmetric(labels), h);
    auto target = lift(phi, g);
    json prov = { { "builder", "nonpartite" }, { "H", edge_list(h) }, { "n", g.vertices }, { "q", q },
        { "r", h.uniformity } };
    return { std::move(phi), std::move(gamma), std::move(target), std::move(prov), std::nullopt };
}

ProblemInstance build_partite(const Hypergraph& h, const PartitionSpec& p, const Hypergraph& g)
{
    const int q = static_cast<int>(h.vertices);
    if (h.uniformity != g.uniformity)
        throw ConstructionError("H and G have different uniformities");
    if (p.label_parts.size() != p.vertex_parts.size())
        throw ConstructionError("label and vertex partitions differ in length");
    LabelSet seen;
    for (auto part : p.label_parts) {
        if (!(seen & part).empty())
            throw ConstructionError("label parts overlap");
        seen = seen | part;
    }
    if (seen != LabelSet::range(q))
        throw ConstructionError("label parts do not cover V(H)");
    std::set<std::vector<int>> indices;
    for (auto& [e, m] : h.edges)
        indices.insert(p.label_index(LabelSet(std::vector<Label>(e.begin(), e.end()))));
    for (auto& [e, m] : g.edges)
        if (!indices.count(p.vertex_index(e))) {
            std::string s;
            for (auto v : e)
                s += (s.empty() ? "" : ",") + std::to_string(v);
            throw ConstructionError("blowup violation: edge {" + s + "} has an index that no edge of H has");
        }
    auto labels = LabelSet::range(q);
    auto phi = LabelledComplex::partite(labels, g.vertices, p.label_parts, p.vertex_parts);
    auto gamma = indicator_system(q, h.uniformity, PermutationGroup::partition_stabilizer(p.label_parts), h);
    auto target = lift(phi, g);
    json parts = json::array();
    for (std::size_t k = 0; k < p.label_parts.size(); ++k)
        parts.push_back({ { "labels", p.label_parts[k].labels() }, { "vertices", p.vertex_parts[k] } });
    json prov = { { "builder", "partite" }, { "H", edge_list(h) }, { "n", g.vertices }, { "parts", parts } };
    return { std::move(phi), std::move(gamma), std::move(target), std::move(prov), p };
}

// ---- divisibility ----

DivisibilityReport check_H_divisible(const Hypergraph& h, const Hypergraph& g)
{
    DivisibilityReport rep;
    const int r = h.uniformity;
    if (g.uniformity != r)
        throw ConstructionError("H and G have different uniformities");
    for (int i = 0; i < r; ++i) {
        Integer gcd_i = 0;
        for (auto& [f, d] : subset_degrees(h, i))
            mpz_gcd(gcd_i.get_mpz_t(), gcd_i.get_mpz_t(), d.get_mpz_t());
        for (auto& [f, d] : subset_degrees(g, i))
            if (!divides(gcd_i, d)) {
                rep.divisible = false;
                rep.level = i;
                rep.witness = f;
                rep.detail = "degree " + d.get_str() + " is not divisible by " + gcd_i.get_str();
                return rep;
            }
    }
    return rep;
}

DivisibilityReport check_HP_divisible(const Hypergraph& h, const PartitionSpec& p, const Hypergraph& g)
{
    DivisibilityReport rep;
    const int r = h.uniformity;
    std::vector<std::vector<int>> I;
    {
        std::set<std::vector<int>> s;
        for (auto& [e, m] : h.edges)
            s.insert(p.label_index(LabelSet(std::vector<Label>(e.begin(), e.end()))));
        I.assign(s.begin(), s.end());
    }
    auto coord = [&](const std::vector<int>& idx) {
        return static_cast<std::size_t>(std::find(I.begin(), I.end(), idx) - I.begin());
    };
    // generators H_I(f) grouped by the index of f
    std::map<std::vector<int>, std::vector<IntVec>> gens;
    auto labels = range_vertices(0, h.vertices);
    for (int k = 0; k <= r; ++k)
        for_each_subset(labels, k, [&](const Edge& f) {
            IntVec v(I.size(), 0);
            for (auto& [e, m] : h.edges)
                if (std::includes(e.begin(), e.end(), f.begin(), f.end()))
                    v[coord(p.label_index(LabelSet(std::vector<Label>(e.begin(), e.end()))))] += 1;
            gens[p.label_index(LabelSet(std::vector<Label>(f.begin(), f.end())))].push_back(v);
        });
    std::map<std::vector<int>, SpanTester> testers;
    for (int k = 0; k <= r; ++k) {
        std::map<Edge, IntVec> degs;
        for (auto& [e, m] : g.edges) {
            auto c = coord(p.vertex_index(e));
            if (c == I.size())
                throw ConstructionError("G is not an (H,P)-blowup");
            for_each_subset(e, k, [&](const Edge& f) {
                auto& v = degs.try_emplace(f, IntVec(I.size(), 0)).first->second;
                v[c] += m;
            });
        }
        for (auto& [f, v] : degs) {
            auto idx = p.vertex_index(f);
            auto it = testers.find(idx);
            if (it == testers.end()) {
                auto& cols = gens[idx];
                it = testers.emplace(idx, SpanTester(cols, I.size())).first;
            }
            bool ok = gens[idx].empty() ? is_zero(v) : it->second.contains(v);
            if (!ok) {
                rep.divisible = false;
                rep.level = k;
                rep.witness = f;
                rep.detail = "degree vector " + to_string(v) + " is outside the lattice of H degree vectors";
                return rep;
            }
        }
    }
    return rep;
}

DivisibilityReport design_divisible(long n, int q, int r, const Integer& lambda)
{
    DivisibilityReport rep;
    for (int i = 0; i < r; ++i) {
        auto d = binomial(q - i, r - i);
        Integer x = lambda * binomial(n - i, r - i);
        if (!divides(d, x)) {
            rep.divisible = false;
            rep.level = i;
            rep.detail = d.get_str() + " does not divide " + Integer(x).get_str();
            return rep;
        }
    }
    return rep;
}

DivisibilityReport resolvable_conditions(long n, int q, int r, const Integer& lambda)
{
    if (n % q != 0) {
        DivisibilityReport rep;
        rep.divisible = false;
        rep.detail = std::to_string(q) + " does not divide " + std::to_string(n);
        return rep;
    }
    return design_divisible(n, q, r, lambda);
}

DivisibilityReport large_set_conditions(long n, int q, int r, const Integer& lambda)
{
    auto rep = design_divisible(n, q, r, lambda);
    if (!rep.divisible)
        return rep;
    auto c = binomial(n - r, q - r);
    if (!divides(lambda, c)) {
        rep.divisible = false;
        rep.level = r;
        rep.detail = "lambda " + lambda.get_str() + " does not divide " + c.get_str();
    }
    return rep;
}

DivisibilityReport complete_resolution_conditions(long n, int q)
{
    DivisibilityReport rep;
    if (n < q) {
        rep.divisible = false;
        rep.detail = "n must be at least q";
        return rep;
    }
    for (int j = 0; j < q; ++j)
        if ((n - j) % (q - j) != 0) {
            rep.divisible = false;
            rep.level = q - j;
            rep.detail = "n is not " + std::to_string(j) + " mod " + std::to_string(q - j);
            return rep;
        }
    return rep;
}

DivisibilityReport rainbow_divisible(int q, int r, long n, RainbowMode mode)
{
    DivisibilityReport rep;
    for (int i = 0; i < r; ++i) {
        Integer d, x;
        if (mode == RainbowMode::All) {
            d = binomial(q - i, r - i);
            x = binomial(q, r) * binomial(n - i, r - i);
        } else {
            d = binomial(r, i);
            x = binomial(n - i, r - i);
        }
        if (!divides(d, x)) {
            rep.divisible = false;
            rep.level = i;
            rep.detail = d.get_str() + " does not divide " + x.get_str();
            return rep;
        }
    }
    return rep;
}

// ---- rainbow ----

ProblemInstance build_rainbow(int q, int r, std::size_t n, RainbowMode mode)
{
    if (static_cast<std::size_t>(q) > n)
        throw ConstructionError("rainbow instances need n ≥ q");
    auto labels = LabelSet::range(q);
    auto sets = subsets_of_size(labels, r);
    const int d = static_cast<int>(sets.size());
    auto colour_of = [&](LabelSet b) {
        return static_cast<int>(std::find(sets.begin(), sets.end(), b) - sets.begin());
    };
    std::vector<std::vector<int>> colourings; // colouring[k] = colour of sets[k]
    if (mode == RainbowMode::Fixed) {
        std::vector<int> c(d);
        std::iota(c.begin(), c.end(), 0);
        colourings.push_back(c);
    } else {
        if (d > 8)
            throw ConstructionError("too many colours to enumerate every rainbow colouring");
        // one colouring per S_q-orbit; the others give the same molecules
        auto perms = all_bijections(labels, labels);
        std::set<std::vector<int>> reps;
        std::vector<int> c(d);
        std::iota(c.begin(), c.end(), 0);
        do {
            std::vector<int> best;
            for (auto& s : perms) {
                std::vector<int> img(d);
                for (int k = 0; k < d; ++k) {
                    LabelSet moved;
                    for (auto l : sets[k].labels())
                        moved = moved.with(static_cast<Label>(s(l)));
                    img[colour_of(moved)] = c[k];
                }
                if (best.empty() || img < best)
                    best = img;
            }
            reps.insert(best);
        } while (std::next_permutation(c.begin(), c.end()));
        colourings.assign(reps.begin(), reps.end());
    }
    std::vector<std::string> names;
    for (std::size_t a = 0; a < colourings.size(); ++a)
        names.push_back("colouring-" + std::to_string(a));
    auto gamma = VectorSystem::from_function(PermutationGroup::symmetric(labels), r, d, names,
        [&](std::size_t a, const Injection& theta) {
            IntVec v(d, 0);
            v[colourings[a][colour_of(theta.image_labels())]] = 1;
            return v;
        });
    auto phi = LabelledComplex::complete(q, n);
    EdgeVector target(d);
    IntVec ones(d, 1);
    for (auto b : sets)
        for (auto& psi : phi.level(b))
            target.set(psi, ones);
    json prov = { { "builder", "rainbow" }, { "q", q }, { "r", r }, { "n", n },
        { "mode", mode == RainbowMode::All ? "all" : "fixed" } };
    return { std::move(phi), std::move(gamma), std::move(target), std::move(prov), std::nullopt };
}

Matrix inclusion_matrix(int q, int i, int r)
{
    auto labels = LabelSet::range(q);
    auto rows = subsets_of_size(labels, i);
    auto cols = subsets_of_size(labels, r);
    Matrix m(rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b)
            m(a, b) = rows[a].subset_of(cols[b]) ? 1 : 0;
    return m;
}

// ---- tryst ----

ProblemInstance build_tryst(std::size_t n)
{
    if (n < 9)
        throw ConstructionError("tryst games need at least 9 players");
    auto labels = LabelSet::range(9);
    const LabelSet captains { 0, 3, 6 };
    auto gamma = VectorSystem::from_function(PermutationGroup::symmetric(labels), 3, 2, { "game" },
        [&](std::size_t, const Injection& theta) {
            auto im = theta.image_labels();
            if (im == captains)
                return IntVec { 1, 0 };
            for (int t = 0; t < 3; ++t)
                if (im == LabelSet { 3 * t, 3 * t + 1, 3 * t + 2 } && theta(theta.domain().min()) == 3 * t)
                    return IntVec { 0, 1 };
            return IntVec { 0, 0 };
        });
    auto phi = LabelledComplex::complete(9, n);
    EdgeVector target(2);
    for (auto b : subsets_of_size(labels, 3))
        for (auto& psi : phi.level(b))
            target.set(psi, { 1, 1 });
    json prov = { { "builder", "tryst" }, { "n", n } };
    return { std::move(phi), std::move(gamma), std::move(target), std::move(prov), std::nullopt };
}

// ---- oriented ----

void OrientedHypergraph::add(const std::vector<Vertex>& oriented)
{
    if (static_cast<int>(oriented.size()) != uniformity)
        throw ConstructionError("oriented edge size differs from the uniformity");
    Edge e = oriented;
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
        throw ConstructionError("oriented edge has a repeated vertex");
    if (!e.empty() && e.back() >= vertices)
        throw ConstructionError("oriented edge vertex out of range");
    int p = parity_of(oriented);
    auto [it, fresh] = parity.try_emplace(e, p);
    if (!fresh && it->second != p)
        throw ConstructionError("orientation error: an edge appears in both orientation classes");
}

OrientedHypergraph OrientedHypergraph::reversed() const
{
    OrientedHypergraph out = *this;
    if (uniformity >= 2)
        for (auto& [e, p] : out.parity)
            p ^= 1;
    return out;
}

ProblemInstance build_oriented(const OrientedHypergraph& h, const OrientedHypergraph& g)
{
    const int q = static_cast<int>(h.vertices);
    const int r = h.uniformity;
    if (g.uniformity != r)
        throw ConstructionError("H and G have different uniformities");
    if (g.vertices < h.vertices)
        throw ConstructionError("G needs at least as many vertices as H");
    auto labels = LabelSet::range(q);
    auto oriented_in = [](const OrientedHypergraph& x, const Injection& m) {
        auto seq = ordered_image(m);
        auto e = seq;
        std::sort(e.begin(), e.end());
        auto it = x.parity.find(e);
        return it != x.parity.end() && it->second == parity_of(seq);
    };
    auto gamma = VectorSystem::from_function(PermutationGroup::symmetric(labels), r, 1, { "H" },
        [&](std::size_t, const Injection& theta) { return IntVec { oriented_in(h, theta) ? 1 : 0 }; });
    auto phi = LabelledComplex::complete(q, g.vertices);
    EdgeVector target(1);
    for (auto b : subsets_of_size(labels, r))
        for (auto& psi : phi.level(b))
            if (oriented_in(g, psi))
                target.set(psi, { 1 });
    json hj = json::array();
    for (auto& [e, p] : h.parity)
        hj.push_back({ { "edge", e }, { "parity", p } });
    json prov = { { "builder", "oriented" }, { "H", hj }, { "n", g.vertices } };
    return { std::move(phi), std::move(gamma), std::move(target), std::move(prov), std::nullopt };
}

// ---- Sudoku and Latin squares ----

Hypergraph sudoku_graph()
{
    Hypergraph h(6, 4);
    h.add({ 0, 1, 2, 3 });
    h.add({ 0, 1, 4, 5 });
    h.add({ 2, 3, 4, 5 });
    h.add({ 0, 2, 4, 5 });
    return h;
}

namespace {

// Complete n-blowup of H, with part k = {k·n, ..., k·n + n − 1}.
std::pair<Hypergraph, PartitionSpec> complete_blowup(const Hypergraph& h, std::size_t n)
{
    PartitionSpec p;
    for (std::size_t k = 0; k < h.vertices; ++k) {
        p.label_parts.push_back(LabelSet { static_cast<Label>(k) });
        p.vertex_parts.push_back(range_vertices(k * n, (k + 1) * n));
    }
    Hypergraph g(h.vertices * n, h.uniformity);
    for (auto& [e, m] : h.edges) {
        std::vector<std::size_t> pick(e.size(), 0);
        while (true) {
            Edge x;
            for (std::size_t i = 0; i < e.size(); ++i)
                x.push_back(static_cast<Vertex>(e[i] * n + pick[i]));
            g.add(x, m);
            std::size_t i = 0;
            while (i < e.size() && ++pick[i] == n)
                pick[i++] = 0;
            if (i == e.size())
                break;
        }
    }
    return { g, p };
}

} // namespace

ProblemInstance build_sudoku(std::size_t n)
{
    auto h = sudoku_graph();
    auto [g, p] = complete_blowup(h, n);
    auto inst = build_partite(h, p, g);
    inst.provenance["builder"] = "sudoku";
    inst.provenance["order"] = n;
    return inst;
}

ProblemInstance build_latin(std::size_t n)
{
    auto h = Hypergraph::complete(3, 2);
    auto [g, p] = complete_blowup(h, n);
    auto inst = build_partite(h, p, g);
    inst.provenance["builder"] = "latin";
    inst.provenance["order"] = n;
    return inst;
}

// ---- twisted octahedron ----

TwistedOctahedron build_twisted_octahedron(std::uint64_t seed)
{
    // b on label pairs of K4 (labels 0..3)
    const std::map<std::pair<Label, Label>, int> b = { { { 0, 1 }, 3 }, { { 0, 2 }, 2 }, { { 1, 2 }, 1 },
        { { 0, 3 }, 4 }, { { 1, 3 }, 5 }, { { 2, 3 }, 6 } };
    const Vertex y[2] = { 0, 2 }, z[2] = { 1, 3 }, x[2] = { 4, 5 };
    const std::size_t n = 6 + 8;
    std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
    auto colour = [&](Vertex u, Vertex v, int col) { c[u][v] = c[v][u] = col; };
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            colour(y[i], z[j], 1);
            colour(x[0], y[j], 2);
            colour(x[1], z[j], 2);
            colour(x[1], y[j], 3);
            colour(x[0], z[j], 3);
        }
    // triangle x_i y_j z_k: colour 1 sits on labels {1,2}, colour 2 on {0,2}, colour 3 on {0,1}
    auto label_map = [&](Vertex a, Vertex bb, Vertex cc) {
        std::vector<Vertex> t { a, bb, cc };
        Injection m;
        for (auto v : t) {
            std::set<int> cols;
            for (auto w : t)
                if (w != v)
                    cols.insert(c[v][w]);
            if (!cols.count(1))
                m.set(0, v);
            else if (!cols.count(2))
                m.set(1, v);
            else
                m.set(2, v);
        }
        return m;
    };
    EdgeVector j(1);
    Vertex w = 6;
    for (int i = 0; i < 2; ++i)
        for (int jj = 0; jj < 2; ++jj)
            for (int k = 0; k < 2; ++k) {
                auto m = label_map(x[i], y[jj], z[k]);
                j.set(m, { (i + jj + k) % 2 ? -1 : 1 });
                colour(w, m(0), 4);
                colour(w, m(1), 5);
                colour(w, m(2), 6);
                ++w;
            }
    Rng rng(seed);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (c[u][v] == 0)
                colour(u, v, static_cast<int>(rng.between(1, 6)));
    auto phi = LabelledComplex::coloured(4, n, c, b);
    auto labels = LabelSet::range(4);
    auto gamma = VectorSystem::from_function(
        PermutationGroup::trivial(labels), 3, 1, { "K4" }, [](std::size_t, const Injection&) { return IntVec { 1 }; });
    json prov = { { "builder", "twisted-octahedron" }, { "seed", seed }, { "n", n } };
    TwistedOctahedron out { { std::move(phi), std::move(gamma), std::move(j), std::move(prov), std::nullopt }, c,
        y[0], z[0] };
    return out;
}

IntVec twisted_invariant(const TwistedOctahedron& t, const EdgeVector& j)
{
    IntVec f(4, 0);
    for (auto& [psi, v] : j.entries()) {
        auto im = psi.image_sorted();
        if (im.size() != 3 || !std::binary_search(im.begin(), im.end(), t.y0)
            || !std::binary_search(im.begin(), im.end(), t.z0))
            continue;
        Vertex x = 0;
        for (auto u : im)
            if (u != t.y0 && u != t.z0)
                x = u;
        auto key = std::make_pair(t.colour[x][t.y0], t.colour[x][t.z0]);
        int idx = key == std::make_pair(2, 3) ? 0
            : key == std::make_pair(3, 2)     ? 1
            : key == std::make_pair(5, 6)     ? 2
            : key == std::make_pair(6, 5)     ? 3
                                              : -1;
        if (idx >= 0)
            f[idx] += v[0];
    }
    return f;
}

// A rainbow K4 through y0z0 gives y0, z0 the labels {2,3}; the two remaining
// triangles then land on e2+e3 or e1+e4.
bool twisted_invariant_admissible(const IntVec& v) { return v.size() == 4 && v[0] == v[3] && v[1] == v[2]; }

// ---- uniform fractional decomposition ----

UniformFractionalReport uniform_fractional(const VectorSystem& gamma, const LabelledComplex& phi, const EdgeVector& g)
{
    UniformFractionalReport rep;
    auto dec = atom_decomposition(gamma, g);
    if (!dec.in_span)
        return rep;
    const bool complete = phi.describe().value("generator", json::object()).value("kind", "") == "complete";
    const int q = phi.labels().size();
    IntVec demand;
    for (auto& oc : dec.orbits) {
        const auto& rep_map = oc.orbit.representative;
        auto& table = gamma.types(rep_map.domain());
        std::map<std::size_t, Integer> per_type;
        for (auto& [a, theta] : gamma.nonzero_classes())
            for (auto& psi : oc.orbit.members) {
                if (psi.domain() != theta.domain())
                    continue;
                auto tau = relabelling(rep_map, psi);
                auto t = table.type_of(a, compose(theta, tau.inverse()));
                if (table.types[t].zero)
                    continue;
                auto base = compose(psi, theta.inverse());
                Integer ext;
                if (complete)
                    ext = falling_factorial(static_cast<long>(phi.vertex_count()) - psi.size(), q - psi.size());
                else
                    ext = static_cast<unsigned long>(phi.extensions(base, phi.labels()).size());
                per_type[t] += ext;
            }
        for (auto& [t, c] : oc.coefficients) {
            rep.counts.push_back(per_type[t]);
            demand.push_back(c);
        }
    }
    if (rep.counts.empty())
        return rep;
    auto res = rational_feasible(Matrix::from_columns({ rep.counts }), demand);
    rep.feasible = res.feasible;
    if (res.feasible)
        rep.weight = res.x.at(0);
    return rep;
}

// ---- reductions ----

namespace {

long least_m(int k, const Integer& need)
{
    for (long m = 0;; ++m)
        if (binomial(m, k) >= need)
            return m;
}

std::vector<Edge> random_sets(std::size_t offset, long m, int k, const Integer& count, std::uint64_t seed)
{
    std::vector<Edge> all;
    for_each_subset(range_vertices(offset, offset + static_cast<std::size_t>(m)), k, [&](const Edge& f) {
        all.push_back(f);
    });
    Rng rng(seed);
    rng.shuffle(all);
    all.resize(count.get_ui());
    std::sort(all.begin(), all.end());
    return all;
}

Edge images(const Injection& phi, const std::vector<Label>& labels)
{
    Edge e;
    for (auto l : labels)
        e.push_back(phi(l));
    std::sort(e.begin(), e.end());
    return e;
}

template <typename F>
void for_each_copy(const Selection& s, F&& fn)
{
    for (auto& [key, c] : s.entries()) {
        if (c < 0)
            throw InputError("decoders need a nonnegative selection");
        for (Integer k = 0; k < c; ++k)
            fn(key.map);
    }
}

} // namespace

Reduction reduce_resolvable(const Hypergraph& h, const Hypergraph& g, std::uint64_t seed)
{
    const int q = static_cast<int>(h.vertices);
    const int r = h.uniformity;
    const auto n = g.vertices;
    if (g.uniformity != r)
        throw ReductionError("H and G have different uniformities");
    if (n % static_cast<std::size_t>(q) != 0)
        throw ReductionError(std::to_string(q) + " does not divide n = " + std::to_string(n));
    std::set<Integer> hdeg, gdeg;
    for (Vertex v = 0; v < h.vertices; ++v)
        hdeg.insert(h.degree({ v }));
    for (Vertex v = 0; v < n; ++v)
        gdeg.insert(g.degree({ v }));
    if (hdeg.size() != 1)
        throw ReductionError("H is not vertex-regular");
    if (gdeg.size() != 1)
        throw ReductionError("G is not vertex-regular");
    Integer num = Integer(q) * g.total();
    Integer den = h.total() * Integer(static_cast<unsigned long>(n));
    if (den == 0 || num % den != 0)
        throw ReductionError("auxiliary size q|G|/(|H|n) is not an integer");
    Integer jsize = num / den;
    long m = least_m(r - 1, jsize);
    auto j = random_sets(n, m, r - 1, jsize, seed);

    Hypergraph hp(static_cast<std::size_t>(q + r - 1), r);
    for (auto& [e, mult] : h.edges)
        hp.add(e, 1);
    std::vector<Label> a_labels, b_labels;
    for (int i = 0; i < q; ++i)
        a_labels.push_back(i);
    for (int i = 0; i < r - 1; ++i)
        b_labels.push_back(q + i);
    for (auto a : a_labels) {
        Edge e(b_labels.begin(), b_labels.end());
        e.push_back(static_cast<Vertex>(a));
        hp.add(e);
    }
    Hypergraph gp(n + static_cast<std::size_t>(m), r);
    for (auto& [e, mult] : g.edges)
        gp.add(e, mult);
    for (auto& f : j)
        for (Vertex x = 0; x < n; ++x) {
            Edge e = f;
            e.push_back(x);
            gp.add(e);
        }
    PartitionSpec p;
    p.label_parts.push_back(LabelSet(a_labels));
    p.vertex_parts.push_back(range_vertices(0, n));
    if (r > 1) {
        p.label_parts.push_back(LabelSet(b_labels));
        p.vertex_parts.push_back(range_vertices(n, n + static_cast<std::size_t>(m)));
    }
    auto inst = build_partite(hp, p, gp);
    json dec = { { "reduction", "resolvable" }, { "n", n }, { "q", q }, { "r", r }, { "A", a_labels }, { "B", b_labels },
        { "J", j }, { "seed", seed }, { "G", edge_list(g) } };
    inst.provenance = { { "builder", "reduce-resolvable" }, { "decoder", dec } };
    return { std::move(inst), dec };
}

ResolvableDesign decode_resolvable(const json& decoder, const Selection& s)
{
    auto a = decoder.at("A").get<std::vector<Label>>();
    auto b = decoder.at("B").get<std::vector<Label>>();
    auto j = decoder.at("J").get<std::vector<Edge>>();
    std::map<Edge, std::vector<Edge>> by_class;
    for_each_copy(s, [&](const Injection& phi) { by_class[images(phi, b)].push_back(images(phi, a)); });
    ResolvableDesign out;
    for (auto& f : j) {
        auto blocks = by_class[f];
        std::sort(blocks.begin(), blocks.end());
        out.classes.push_back(blocks);
    }
    return out;
}

Reduction reduce_large_set(int q, int r, const Integer& lambda, long n, const std::optional<Hypergraph>& g_in,
    std::uint64_t seed)
{
    if (r < 1 || r >= q)
        throw ReductionError("large sets need 1 ≤ r < q");
    if (2 * q - r > kMaxLabels)
        throw ReductionError("too many labels for the reduction");
    if (!g_in && n >= q && !divides(lambda, binomial(n - r, q - r)))
        throw PreconditionError("lambda " + lambda.get_str() + " does not divide binom(n-r, q-r) = "
            + binomial(n - r, q - r).get_str());
    Hypergraph g = g_in ? *g_in : Hypergraph::complete(static_cast<std::size_t>(n), q);
    if (g.uniformity != q || static_cast<long>(g.vertices) != n)
        throw ReductionError("G must be a q-multigraph on n vertices");
    std::vector<Integer> z(r + 1);
    for (int i = 0; i <= r; ++i) {
        Integer num = lambda * binomial(n - i, r - i);
        Integer den = binomial(q - i, r - i);
        if (num % den != 0)
            throw ReductionError("Z_" + std::to_string(i) + " is not an integer");
        z[i] = num / den;
        for (auto& [f, d] : subset_degrees(g, i))
            if (d % z[i] != 0)
                throw ReductionError("Z_" + std::to_string(i) + " = " + z[i].get_str()
                    + " does not divide a degree of G (i = " + std::to_string(i) + ")");
    }
    {
        // every r-set must have the same degree
        auto deg = subset_degrees(g, r);
        std::set<Integer> values;
        for (auto& [f, d] : deg)
            values.insert(d);
        if (deg.size() != binomial(n, r) && !deg.empty())
            values.insert(0);
        if (values.size() > 1)
            throw ReductionError("G is not an r-multidesign");
    }
    Integer jsize = g.total() / z[0];
    long m = least_m(q - r, jsize);
    const auto nx = static_cast<std::size_t>(n);
    auto j = random_sets(nx, m, q - r, jsize, seed);

    std::vector<Label> a_labels, b_labels;
    for (int i = 0; i < q; ++i)
        a_labels.push_back(i);
    for (int i = 0; i < q - r; ++i)
        b_labels.push_back(q + i);
    Hypergraph hp(static_cast<std::size_t>(2 * q - r), q);
    hp.add(Edge(a_labels.begin(), a_labels.end()));
    for_each_subset(std::vector<Vertex>(a_labels.begin(), a_labels.end()), r, [&](const Edge& e) {
        Edge x = e;
        x.insert(x.end(), b_labels.begin(), b_labels.end());
        hp.add(x);
    });
    Hypergraph gp(nx + static_cast<std::size_t>(m), q);
    for (auto& [e, mult] : g.edges)
        gp.add(e, mult);
    for_each_subset(range_vertices(0, nx), r, [&](const Edge& e) {
        for (auto& f : j) {
            Edge x = e;
            x.insert(x.end(), f.begin(), f.end());
            gp.add(x, lambda);
        }
    });
    PartitionSpec p;
    p.label_parts = { LabelSet(a_labels), LabelSet(b_labels) };
    p.vertex_parts = { range_vertices(0, nx), range_vertices(nx, nx + static_cast<std::size_t>(m)) };
    auto inst = build_partite(hp, p, gp);
    json dec = { { "reduction", "large-set" }, { "n", n }, { "q", q }, { "r", r }, { "lambda", lambda.get_str() },
        { "A", a_labels }, { "B", b_labels }, { "J", j }, { "seed", seed } };
    inst.provenance = { { "builder", "reduce-large-set" }, { "decoder", dec } };
    return { std::move(inst), dec };
}

LargeSet decode_large_set(const json& decoder, const Selection& s)
{
    auto a = decoder.at("A").get<std::vector<Label>>();
    auto b = decoder.at("B").get<std::vector<Label>>();
    auto j = decoder.at("J").get<std::vector<Edge>>();
    std::map<Edge, std::vector<Edge>> by_design;
    for_each_copy(s, [&](const Injection& phi) { by_design[images(phi, b)].push_back(images(phi, a)); });
    LargeSet out;
    for (auto& f : j) {
        auto blocks = by_design[f];
        std::sort(blocks.begin(), blocks.end());
        out.designs.push_back(blocks);
    }
    return out;
}

Reduction reduce_complete_resolution(int q, long n)
{
    auto cond = complete_resolution_conditions(n, q);
    if (!cond.divisible)
        throw ReductionError("congruence fails: " + cond.detail + " (modulus " + std::to_string(cond.level) + ")");
    if (2 * q > kMaxLabels)
        throw ReductionError("too many labels for the reduction");
    const auto nx = static_cast<std::size_t>(n);
    std::vector<std::size_t> offset(q), size(q);
    std::size_t next = nx;
    for (int j = 0; j < q; ++j) {
        offset[j] = next;
        size[j] = static_cast<std::size_t>((n - j) / (q - j));
        next += size[j];
    }
    std::vector<Label> a_labels;
    for (int i = 0; i < q; ++i)
        a_labels.push_back(i);
    Hypergraph hp(static_cast<std::size_t>(2 * q), q);
    for (int j = 0; j <= q; ++j)
        for_each_subset(std::vector<Vertex>(a_labels.begin(), a_labels.end()), j, [&](const Edge& s) {
            Edge e = s;
            for (int i = j; i < q; ++i)
                e.push_back(static_cast<Vertex>(q + i));
            hp.add(e);
        });
    Hypergraph gp(next, q);
    for (int j = 0; j <= q; ++j) {
        // chains y_j, ..., y_{q−1} with one vertex from each Y_i
        std::vector<std::size_t> pick(q - j, 0);
        while (true) {
            for_each_subset(range_vertices(0, nx), j, [&](const Edge& s) {
                Edge e = s;
                for (int i = j; i < q; ++i)
                    e.push_back(static_cast<Vertex>(offset[i] + pick[i - j]));
                gp.add(e);
            });
            int i = 0;
            while (i < q - j && ++pick[i] == size[j + i])
                pick[i++] = 0;
            if (i == q - j)
                break;
        }
    }
    PartitionSpec p;
    p.label_parts.push_back(LabelSet(a_labels));
    p.vertex_parts.push_back(range_vertices(0, nx));
    for (int j = 0; j < q; ++j) {
        p.label_parts.push_back(LabelSet { q + j });
        p.vertex_parts.push_back(range_vertices(offset[j], offset[j] + size[j]));
    }
    auto inst = build_partite(hp, p, gp);
    json dec = { { "reduction", "complete-resolution" }, { "n", n }, { "q", q }, { "A", a_labels },
        { "offsets", offset }, { "sizes", size } };
    inst.provenance = { { "builder", "reduce-complete-resolution" }, { "decoder", dec } };
    return { std::move(inst), dec };
}

CompleteResolution decode_complete_resolution(const json& decoder, const Selection& s)
{
    auto a = decoder.at("A").get<std::vector<Label>>();
    auto offset = decoder.at("offsets").get<std::vector<std::size_t>>();
    const int q = decoder.at("q").get<int>();
    CompleteResolution out;
    for_each_copy(s, [&](const Injection& phi) {
        std::vector<std::size_t> chain;
        for (int j = 0; j < q; ++j)
            chain.push_back(phi(q + j) - offset[j]);
        out.blocks.emplace_back(images(phi, a), chain);
    });
    std::sort(out.blocks.begin(), out.blocks.end());
    return out;
}

json decode(const json& decoder, const Selection& s)
{
    auto kind = decoder.at("reduction").get<std::string>();
    if (kind == "resolvable")
        return { { "kind", kind }, { "classes", decode_resolvable(decoder, s).classes } };
    if (kind == "large-set")
        return { { "kind", kind }, { "designs", decode_large_set(decoder, s).designs } };
    if (kind == "complete-resolution") {
        json blocks = json::array();
        for (auto& [b, chain] : decode_complete_resolution(decoder, s).blocks)
            blocks.push_back({ { "block", b }, { "chain", chain } });
        return { { "kind", kind }, { "blocks", blocks } };
    }
    throw InputError("unknown decoder: " + kind);
}

// ---- direct verifiers ----

CheckResult verify_design_blocks(const std::vector<Edge>& blocks, const Hypergraph& g)
{
    std::map<Edge, Integer> count;
    for (auto& b : blocks) {
        Edge s = b;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            return { false, "block with a repeated vertex" };
        for (auto v : s)
            if (v >= g.vertices)
                return { false, "block vertex out of range" };
        for_each_subset(s, g.uniformity, [&](const Edge& e) { count[e] += 1; });
    }
    for (auto& [e, c] : count)
        if (g.multiplicity(e) != c)
            return { false, "an r-set is covered " + c.get_str() + " times instead of " + g.multiplicity(e).get_str() };
    for (auto& [e, m] : g.edges)
        if (!count.count(e))
            return { false, "an r-set of G is uncovered" };
    return { true, "" };
}

CheckResult verify_resolvable(const ResolvableDesign& d, std::size_t n, int q, const Hypergraph& g)
{
    std::vector<Edge> all;
    for (std::size_t k = 0; k < d.classes.size(); ++k) {
        std::vector<int> hit(n, 0);
        for (auto& b : d.classes[k]) {
            if (static_cast<int>(b.size()) != q)
                return { false, "block of the wrong size" };
            for (auto v : b) {
                if (v >= n)
                    return { false, "block vertex out of range" };
                ++hit[v];
            }
            all.push_back(b);
        }
        for (std::size_t v = 0; v < n; ++v)
            if (hit[v] != 1)
                return { false, "class " + std::to_string(k) + " is not a perfect matching" };
    }
    return verify_design_blocks(all, g);
}

CheckResult verify_large_set(const LargeSet& l, std::size_t n, int q, int r, const Integer& lambda, const Hypergraph& g)
{
    std::map<Edge, Integer> used;
    for (std::size_t k = 0; k < l.designs.size(); ++k) {
        for (auto& b : l.designs[k]) {
            if (static_cast<int>(b.size()) != q)
                return { false, "block of the wrong size" };
            Edge s = b;
            std::sort(s.begin(), s.end());
            used[s] += 1;
        }
        auto res = verify_design_blocks(l.designs[k], Hypergraph::complete(n, r, lambda));
        if (!res.ok)
            return { false, "design " + std::to_string(k) + ": " + res.detail };
    }
    for (auto& [e, c] : used)
        if (g.multiplicity(e) != c)
            return { false, "the designs do not partition G" };
    for (auto& [e, m] : g.edges)
        if (!used.count(e))
            return { false, "an edge of G lies in no design" };
    return { true, "" };
}

CheckResult verify_complete_resolution(const CompleteResolution& c, std::size_t n, int q)
{
    std::vector<Edge> blocks;
    for (auto& [b, chain] : c.blocks) {
        if (static_cast<int>(b.size()) != q || static_cast<int>(chain.size()) != q)
            return { false, "malformed block" };
        blocks.push_back(b);
    }
    auto whole = verify_design_blocks(blocks, Hypergraph::complete(n, q));
    if (!whole.ok)
        return { false, "blocks do not partition the complete q-graph: " + whole.detail };
    // grouping by the chain suffix (y_j, ..., y_{q−1}) gives Steiner (n, q, j) systems
    for (int j = 0; j < q; ++j) {
        std::map<std::vector<std::size_t>, std::vector<Edge>> groups;
        for (auto& [b, chain] : c.blocks)
            groups[std::vector<std::size_t>(chain.begin() + j, chain.end())].push_back(b);
        for (auto& [key, gb] : groups) {
            auto res = verify_design_blocks(gb, Hypergraph::complete(n, j));
            if (!res.ok)
                return { false, "level " + std::to_string(j) + " group is not a Steiner system: " + res.detail };
        }
    }
    return { true, "" };
}

// ---- typicality ----

namespace {

using Bits = std::vector<bool>;

Rational abs_q(const Rational& x) { return x < 0 ? Rational(-x) : x; }

} // namespace

Rational measure_typicality(const Hypergraph& g, int s)
{
    const auto n = g.vertices;
    const int r = g.uniformity;
    if (s < 1)
        throw PreconditionError("s must be positive");
    Rational d(Integer(static_cast<unsigned long>(g.edges.size())), binomial(static_cast<long>(n), r));
    d.canonicalize();
    if (d == 0)
        throw PreconditionError("degenerate: G has density zero");
    std::vector<Edge> faces;
    for_each_subset(range_vertices(0, n), r - 1, [&](const Edge& f) { faces.push_back(f); });
    std::vector<Bits> nbr(faces.size(), Bits(n, false));
    for (std::size_t k = 0; k < faces.size(); ++k)
        for (Vertex x = 0; x < n; ++x) {
            if (std::binary_search(faces[k].begin(), faces[k].end(), x))
                continue;
            Edge e = faces[k];
            e.push_back(x);
            if (g.contains(e))
                nbr[k][x] = true;
        }
    std::vector<std::size_t> idx(faces.size());
    std::iota(idx.begin(), idx.end(), 0);
    Rational worst = 0;
    for (int a = 1; a <= s && a <= static_cast<int>(faces.size()); ++a) {
        if (binomial(static_cast<long>(faces.size()), a) > 20'000'000)
            throw BudgetExceeded("too many face sets for the typicality sweep");
        Rational denom = Rational(static_cast<unsigned long>(n));
        for (int i = 0; i < a; ++i)
            denom *= d;
        for_each_subset(idx, a, [&](const std::vector<std::size_t>& pick) {
            long common = 0;
            for (std::size_t x = 0; x < n; ++x) {
                bool all = true;
                for (auto k : pick)
                    if (!nbr[k][x]) {
                        all = false;
                        break;
                    }
                common += all;
            }
            Rational dev = abs_q(Rational(common) / denom - 1) / a;
            if (dev > worst)
                worst = dev;
        });
    }
    return worst;
}

Rational measure_partite_typicality(const Hypergraph& g, const Hypergraph& h, const PartitionSpec& p, int s)
{
    const int r = g.uniformity;
    if (p.vertex_parts.size() != h.vertices)
        throw PreconditionError("one vertex part per vertex of H is required");
    auto part_set = [&](const Edge& e) {
        Edge f;
        for (auto v : e)
            f.push_back(static_cast<Vertex>(p.part_of_vertex(v)));
        std::sort(f.begin(), f.end());
        return f;
    };
    // d_f(G) for f ∈ H
    std::map<Edge, Rational> density;
    for (auto& [f, m] : h.edges) {
        long count = 0;
        for (auto& [e, mult] : g.edges)
            if (part_set(e) == f)
                ++count;
        Integer cells = 1;
        for (auto x : f)
            cells *= static_cast<unsigned long>(p.vertex_parts[x].size());
        density[f] = Rational(Integer(count), cells);
        density[f].canonicalize();
        if (count == 0)
            throw PreconditionError("degenerate: G has no edges of some type of H");
    }
    // partite (r−1)-sets of V(G)
    std::vector<std::pair<Edge, Edge>> faces; // (vertex set, part set)
    for_each_subset(range_vertices(0, g.vertices), r - 1, [&](const Edge& e) {
        auto f = part_set(e);
        if (std::adjacent_find(f.begin(), f.end()) == f.end() && std::find(f.begin(), f.end(), static_cast<Vertex>(-1)) == f.end())
            faces.emplace_back(e, f);
    });
    std::vector<std::size_t> idx(faces.size());
    std::iota(idx.begin(), idx.end(), 0);
    Rational worst = 0;
    for (int a = 1; a <= s && a <= static_cast<int>(faces.size()); ++a) {
        if (binomial(static_cast<long>(faces.size()), a) > 20'000'000)
            throw BudgetExceeded("too many face sets for the typicality sweep");
        for_each_subset(idx, a, [&](const std::vector<std::size_t>& pick) {
            for (Vertex x = 0; x < h.vertices; ++x) {
                Rational expected = Rational(static_cast<unsigned long>(p.vertex_parts[x].size()));
                bool ok = true;
                for (auto k : pick) {
                    auto fx = faces[k].second;
                    if (std::binary_search(fx.begin(), fx.end(), x)) {
                        ok = false;
                        break;
                    }
                    fx.push_back(x);
                    std::sort(fx.begin(), fx.end());
                    auto it = density.find(fx);
                    if (it == density.end()) {
                        ok = false;
                        break;
                    }
                    expected *= it->second;
                }
                if (!ok)
                    continue;
                long common = 0;
                for (auto v : p.vertex_parts[x]) {
                    bool all = true;
                    for (auto k : pick) {
                        Edge e = faces[k].first;
                        e.push_back(v);
                        if (!g.contains(e)) {
                            all = false;
                            break;
                        }
                    }
                    common += all;
                }
                Rational dev = abs_q(Rational(common) / expected - 1) / a;
                if (dev > worst)
                    worst = dev;
            }
        });
    }
    return worst;
}

} // namespace designlat
