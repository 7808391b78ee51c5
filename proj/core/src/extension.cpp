#include <designlat/errors.hpp>
#include <designlat/extension.hpp>

#include <algorithm>
#include <set>
#include <unordered_set>

namespace designlat {

std::vector<Vertex> Extension::template_vertices() const
{
    std::set<Vertex> vs(frozen.begin(), frozen.end());
    for (auto& g : generators)
        for (auto v : g.image_sequence())
            vs.insert(v);
    return { vs.begin(), vs.end() };
}

std::vector<Vertex> Extension::free_vertices() const
{
    std::vector<Vertex> out;
    for (auto v : template_vertices())
        if (std::find(frozen.begin(), frozen.end(), v) == frozen.end())
            out.push_back(v);
    return out;
}

void validate_template(const Extension& e)
{
    if (e.s < 1)
        throw ConstructionError("template rank must be positive");
    for (auto& g : e.generators) {
        if (!g.domain().subset_of(e.labels))
            throw ConstructionError("template map " + g.str() + " uses labels outside R");
        for (auto l : g.domain().labels()) {
            Vertex v = g.at(l);
            if (v / e.s != l)
                throw ConstructionError("template map " + g.str() + " is not partite");
        }
    }
    auto tv = e.template_vertices();
    for (auto f : e.frozen) {
        if (f / e.s >= kMaxLabels || !e.labels.contains(f / e.s))
            throw ConstructionError("frozen vertex outside R(s)");
        if (!e.base.count(f))
            throw ConstructionError("frozen vertex without base image");
    }
    if (e.base.size() != e.frozen.size())
        throw ConstructionError("base map is not defined exactly on F");
}

namespace {

    // Host image of the part of template map g whose vertices are assigned.
    bool host_image(const Injection& g, const std::vector<Vertex>& assign, Injection& out)
    {
        out = Injection();
        for (auto l : g.domain().labels()) {
            Vertex h = assign[g.at(l)];
            if (h == kNoVertex)
                continue;
            out.set(l, h);
        }
        return true;
    }

    bool fully_assigned(const Injection& g, const std::vector<Vertex>& assign)
    {
        for (auto v : g.image_sequence())
            if (assign[v] == kNoVertex)
                return false;
        return true;
    }

    std::size_t template_size(const Extension& e)
    {
        std::size_t hi = 0;
        for (auto v : e.template_vertices())
            hi = std::max<std::size_t>(hi, v + 1u);
        return hi;
    }

} // namespace

bool base_is_embedding(const LabelledComplex& phi, const Extension& e)
{
    std::vector<Vertex> assign(template_size(e), kNoVertex);
    std::unordered_set<Vertex> used;
    for (auto& [t, h] : e.base) {
        if (t >= assign.size())
            assign.resize(t + 1u, kNoVertex);
        assign[t] = h;
        if (!used.insert(h).second)
            return false;
    }
    Injection img;
    for (auto& g : e.generators) {
        host_image(g, assign, img);
        if (!phi.contains(img))
            return false;
    }
    return true;
}

ExtensionConstraint constraint_from_set(std::vector<Injection> maps, std::vector<Injection> allowed_maps)
{
    auto set = std::make_shared<std::unordered_set<Injection>>(allowed_maps.begin(), allowed_maps.end());
    return { std::move(maps), [set](const Injection& m) { return set->count(m) > 0; } };
}

Integer count_extensions(const LabelledComplex& phi, const Extension& e,
    const std::vector<ExtensionConstraint>& constraints,
    const std::function<void(const std::map<Vertex, Vertex>&)>& visit)
{
    validate_template(e);
    if (!base_is_embedding(phi, e))
        throw InvalidBase("base map is not an embedding of H[F]");

    auto frozen_set = std::set<Vertex>(e.frozen.begin(), e.frozen.end());
    for (auto& c : constraints)
        for (auto& m : c.maps) {
            bool inside = true;
            for (auto v : m.image_sequence())
                if (!frozen_set.count(v))
                    inside = false;
            if (inside)
                throw PreconditionError("constraint map " + m.str() + " lies inside H[F]");
        }

    auto free = e.free_vertices();
    std::vector<Vertex> assign(template_size(e), kNoVertex);
    std::vector<bool> used(phi.vertex_count(), false);
    for (auto& [t, h] : e.base) {
        assign[t] = h;
        used[h] = true;
    }

    // Per step, the generators and constraint maps touching the new vertex.
    std::vector<std::vector<const Injection*>> gen_at(free.size());
    std::vector<std::vector<std::pair<const Injection*, const ExtensionConstraint*>>> con_at(free.size());
    std::map<Vertex, std::size_t> step_of;
    for (std::size_t k = 0; k < free.size(); ++k)
        step_of[free[k]] = k;
    for (auto& g : e.generators) {
        std::set<std::size_t> steps;
        for (auto v : g.image_sequence())
            if (step_of.count(v))
                steps.insert(step_of[v]);
        for (auto k : steps)
            gen_at[k].push_back(&g);
    }
    for (auto& c : constraints)
        for (auto& m : c.maps) {
            std::size_t last = 0;
            for (auto v : m.image_sequence())
                if (step_of.count(v))
                    last = std::max(last, step_of[v]);
            con_at[last].push_back({ &m, &c });
        }

    Integer count = 0;
    std::map<Vertex, Vertex> table;
    Injection img;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == free.size()) {
            ++count;
            if (visit) {
                table.clear();
                for (std::size_t t = 0; t < assign.size(); ++t)
                    if (assign[t] != kNoVertex)
                        table[static_cast<Vertex>(t)] = assign[t];
                visit(table);
            }
            return;
        }
        for (std::size_t h = 0; h < phi.vertex_count(); ++h) {
            if (used[h])
                continue;
            assign[free[k]] = static_cast<Vertex>(h);
            bool ok = true;
            for (auto g : gen_at[k]) {
                host_image(*g, assign, img);
                if (!phi.contains(img)) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                for (auto& [m, c] : con_at[k]) {
                    if (!fully_assigned(*m, assign))
                        continue;
                    host_image(*m, assign, img);
                    if (!c->allowed(img)) {
                        ok = false;
                        break;
                    }
                }
            if (ok) {
                used[h] = true;
                rec(k + 1);
                used[h] = false;
            }
            assign[free[k]] = kNoVertex;
        }
    };
    rec(0);
    return count;
}

ExtendabilityReport extendability_certificate(
    const LabelledComplex& phi, const Rational& omega, int s, std::size_t budget)
{
    ExtendabilityReport report;
    auto labels = phi.labels().labels();
    std::size_t q = labels.size();
    Integer n = static_cast<unsigned long>(phi.vertex_count());

    std::vector<int> m(q, 0), f(q, 0);
    auto bump = [](std::vector<int>& v, const std::vector<int>& cap) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] < cap[i]) {
                ++v[i];
                return true;
            }
            v[i] = 0;
        }
        return false;
    };
    std::vector<int> top(q, s);
    do {
        // H = R(s)[W] with W = {(i,x) : x < m_i}; generators are the maximal maps.
        LabelSet dom;
        for (std::size_t i = 0; i < q; ++i)
            if (m[i] > 0)
                dom = dom.with(labels[i]);
        std::vector<Injection> gens { Injection() };
        for (std::size_t i = 0; i < q; ++i) {
            if (m[i] == 0)
                continue;
            std::vector<Injection> next;
            for (auto& g : gens)
                for (int x = 0; x < m[i]; ++x) {
                    auto h = g;
                    h.set(labels[i], template_vertex(labels[i], x, s));
                    next.push_back(h);
                }
            gens = std::move(next);
        }
        std::fill(f.begin(), f.end(), 0);
        do {
            int v_e = 0;
            for (std::size_t i = 0; i < q; ++i)
                v_e += m[i] - f[i];
            if (v_e == 0)
                continue;
            Extension e;
            e.labels = phi.labels();
            e.s = s;
            e.generators = gens;
            for (std::size_t i = 0; i < q; ++i)
                for (int x = 0; x < f[i]; ++x)
                    e.frozen.push_back(template_vertex(labels[i], x, s));

            // Enumerate bases: Φ-embeddings of H[F].
            Extension inner;
            inner.labels = e.labels;
            inner.s = s;
            for (auto& g : gens) {
                Injection r;
                for (auto l : g.domain().labels())
                    if (std::find(e.frozen.begin(), e.frozen.end(), g.at(l)) != e.frozen.end())
                        r.set(l, g.at(l));
                inner.generators.push_back(r);
            }
            std::vector<std::map<Vertex, Vertex>> bases;
            if (e.frozen.empty())
                bases.emplace_back();
            else
                count_extensions(phi, inner, {}, [&](const std::map<Vertex, Vertex>& t) { bases.push_back(t); });
            Integer denom;
            mpz_pow_ui(denom.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(v_e));
            for (auto& b : bases) {
                if (report.checked >= budget) {
                    report.budget_exhausted = true;
                    report.meets_threshold = report.min_density >= omega;
                    return report;
                }
                ++report.checked;
                e.base = b;
                auto x = count_extensions(phi, e);
                Rational d(x, denom);
                d.canonicalize();
                if (!report.witness || d < report.min_density) {
                    report.min_density = d;
                    report.witness = e;
                }
            }
        } while (bump(f, m));
    } while (bump(m, top));
    report.meets_threshold = report.min_density >= omega;
    return report;
}

} // namespace designlat
