#include <designlat/complex.hpp>
#include <designlat/io.hpp>
#include <designlat/errors.hpp>

#include <algorithm>

namespace designlat {

using nlohmann::json;

namespace {

    json labels_json(LabelSet s)
    {
        json a = json::array();
        for (auto l : s.labels())
            a.push_back(l);
        return a;
    }

    json levels_json(const std::vector<Injection>& maps)
    {
        std::map<LabelSet, std::vector<Injection>, CanonicalLess> by;
        for (auto& m : maps)
            by[m.domain()].push_back(m);
        json levels = json::array();
        for (auto& [b, ms] : by) {
            std::sort(ms.begin(), ms.end(), CanonicalLess{});
            json lv;
            lv["label_subset"] = labels_json(b);
            lv["maps"] = json::array();
            for (auto& m : ms)
                lv["maps"].push_back(injection_to_json(m));
            levels.push_back(lv);
        }
        return levels;
    }

    std::vector<Injection> maps_from_levels(const json& levels)
    {
        std::vector<Injection> out;
        for (auto& lv : levels) {
            LabelSet b(lv.at("label_subset").get<std::vector<int>>());
            for (auto& mj : lv.at("maps")) {
                auto m = injection_from_json(mj);
                if (m.domain() != b)
                    throw InputError("map domain differs from its label_subset");
                out.push_back(m);
            }
        }
        return out;
    }

    class CompleteSource final : public ComplexSource {
    public:
        bool admits(const Injection&) const override { return true; }
        json describe() const override { return { { "kind", "complete" } }; }
    };

    class PartiteSource final : public ComplexSource {
    public:
        PartiteSource(std::size_t n, std::vector<LabelSet> label_parts, std::vector<std::vector<Vertex>> vertex_parts)
            : label_parts_(std::move(label_parts))
            , vertex_parts_(std::move(vertex_parts))
            , part_of_label_(kMaxLabels, -1)
            , part_of_vertex_(n, -1)
        {
            if (label_parts_.size() != vertex_parts_.size())
                throw ConstructionError("label and vertex partitions differ in length");
            for (std::size_t k = 0; k < label_parts_.size(); ++k) {
                for (auto l : label_parts_[k].labels()) {
                    if (part_of_label_[l] >= 0)
                        throw ConstructionError("label parts overlap");
                    part_of_label_[l] = static_cast<int>(k);
                }
                std::sort(vertex_parts_[k].begin(), vertex_parts_[k].end());
                for (auto v : vertex_parts_[k]) {
                    if (v >= n)
                        throw ConstructionError("vertex part refers to missing vertex");
                    if (part_of_vertex_[v] >= 0)
                        throw ConstructionError("vertex parts overlap");
                    part_of_vertex_[v] = static_cast<int>(k);
                }
            }
        }

        bool admits(const Injection& psi) const override
        {
            for (auto l : psi.domain().labels()) {
                int k = part_of_label_[l];
                if (k < 0 || part_of_vertex_[psi.at(l)] != k)
                    return false;
            }
            return true;
        }

        std::vector<Vertex> candidates(Label l) const override
        {
            int k = part_of_label_[l];
            if (k < 0)
                return { kNoVertex };
            return vertex_parts_[k];
        }

        json describe() const override
        {
            json d;
            d["kind"] = "partite";
            d["label_parts"] = json::array();
            d["vertex_parts"] = json::array();
            for (std::size_t k = 0; k < label_parts_.size(); ++k) {
                d["label_parts"].push_back(labels_json(label_parts_[k]));
                d["vertex_parts"].push_back(vertex_parts_[k]);
            }
            return d;
        }

    private:
        std::vector<LabelSet> label_parts_;
        std::vector<std::vector<Vertex>> vertex_parts_;
        std::vector<int> part_of_label_;
        std::vector<int> part_of_vertex_;
    };

    class ColouredSource final : public ComplexSource {
    public:
        ColouredSource(std::vector<std::vector<int>> colour, std::map<std::pair<Label, Label>, int> label_colour)
            : colour_(std::move(colour))
            , label_colour_(std::move(label_colour))
        {
        }

        bool admits(const Injection& psi) const override
        {
            auto ls = psi.domain().labels();
            for (std::size_t a = 0; a < ls.size(); ++a)
                for (std::size_t b = a + 1; b < ls.size(); ++b) {
                    auto it = label_colour_.find({ ls[a], ls[b] });
                    int want = it == label_colour_.end() ? -1 : it->second;
                    int have = colour_[psi.at(ls[a])][psi.at(ls[b])];
                    if (have < 0 || have != want)
                        return false;
                }
            return true;
        }

        json describe() const override
        {
            json d;
            d["kind"] = "coloured";
            d["edge_colours"] = json::array();
            for (std::size_t u = 0; u < colour_.size(); ++u)
                for (std::size_t v = u + 1; v < colour_.size(); ++v)
                    if (colour_[u][v] >= 0)
                        d["edge_colours"].push_back(json::array({ u, v, colour_[u][v] }));
            d["label_colours"] = json::array();
            for (auto& [p, c] : label_colour_)
                d["label_colours"].push_back(json::array({ p.first, p.second, c }));
            return d;
        }

    private:
        std::vector<std::vector<int>> colour_;
        std::map<std::pair<Label, Label>, int> label_colour_;
    };

    class ExplicitSource final : public ComplexSource {
    public:
        explicit ExplicitSource(std::unordered_set<Injection> maps) : maps_(std::move(maps)) { }
        bool admits(const Injection& psi) const override { return maps_.count(psi) > 0; }
        json describe() const override
        {
            std::vector<Injection> all(maps_.begin(), maps_.end());
            return { { "kind", "explicit" }, { "levels", levels_json(all) } };
        }

    private:
        std::unordered_set<Injection> maps_;
    };

    class RestrictedSource final : public ComplexSource {
    public:
        RestrictedSource(LabelledComplex base, PartialSystem filter)
            : base_(std::move(base))
            , filter_(std::move(filter))
        {
        }

        bool admits(const Injection& psi) const override
        {
            if (!base_.source().admits(psi))
                return false;
            for (auto& [b, allowed] : filter_) {
                if (!b.subset_of(psi.domain()))
                    continue;
                if (!allowed.count(psi.restrict(b)))
                    return false;
            }
            return true;
        }

        std::vector<Vertex> candidates(Label l) const override { return base_.source().candidates(l); }

        json describe() const override
        {
            json d;
            d["kind"] = "restricted";
            d["base"] = base_.describe();
            std::vector<Injection> all;
            json filter = json::array();
            for (auto& [b, allowed] : filter_) {
                std::vector<Injection> ms(allowed.begin(), allowed.end());
                std::sort(ms.begin(), ms.end(), CanonicalLess{});
                json lv;
                lv["label_subset"] = labels_json(b);
                lv["maps"] = json::array();
                for (auto& m : ms)
                    lv["maps"].push_back(injection_to_json(m));
                filter.push_back(lv);
            }
            d["filter"] = filter;
            return d;
        }

    private:
        LabelledComplex base_;
        PartialSystem filter_;
    };

    class VertexSubsetSource final : public ComplexSource {
    public:
        VertexSubsetSource(LabelledComplex base, std::vector<Vertex> keep)
            : base_(std::move(base))
            , keep_(std::move(keep))
            , member_(base_.vertex_count(), false)
        {
            std::sort(keep_.begin(), keep_.end());
            keep_.erase(std::unique(keep_.begin(), keep_.end()), keep_.end());
            for (auto v : keep_) {
                if (v >= member_.size())
                    throw ConstructionError("vertex subset refers to missing vertex");
                member_[v] = true;
            }
        }

        bool admits(const Injection& psi) const override
        {
            for (auto v : psi.image_sequence())
                if (!member_[v])
                    return false;
            return base_.source().admits(psi);
        }

        std::vector<Vertex> candidates(Label l) const override
        {
            auto c = base_.source().candidates(l);
            if (c.empty())
                return keep_;
            std::vector<Vertex> out;
            for (auto v : c)
                if (v < member_.size() && member_[v])
                    out.push_back(v);
            if (out.empty())
                out.push_back(kNoVertex);
            return out;
        }

        json describe() const override
        {
            return { { "kind", "vertex_subset" }, { "base", base_.describe() }, { "keep", keep_ } };
        }

    private:
        LabelledComplex base_;
        std::vector<Vertex> keep_;
        std::vector<bool> member_;
    };

    class NeighbourhoodSource final : public ComplexSource {
    public:
        NeighbourhoodSource(LabelledComplex base, Injection star)
            : base_(std::move(base))
            , star_(star)
        {
        }

        bool admits(const Injection& psi) const override
        {
            for (auto v : psi.image_sequence())
                if (star_.maps_into(v))
                    return false;
            return base_.source().admits(merge(psi, star_));
        }

        std::vector<Vertex> candidates(Label l) const override
        {
            auto c = base_.source().candidates(l);
            if (c.empty())
                return {};
            std::vector<Vertex> out;
            for (auto v : c)
                if (!star_.maps_into(v))
                    out.push_back(v);
            if (out.empty())
                out.push_back(kNoVertex);
            return out;
        }

        json describe() const override
        {
            return { { "kind", "neighbourhood" }, { "base", base_.describe() }, { "base_map", injection_to_json(star_) } };
        }

    private:
        LabelledComplex base_;
        Injection star_;
    };

} // namespace

LabelledComplex::LabelledComplex(LabelSet labels, std::size_t vertices, std::shared_ptr<const ComplexSource> source)
    : labels_(labels)
    , vertices_(vertices)
    , source_(std::move(source))
{
    if (labels.bits() >> kMaxLabels)
        throw ConstructionError("too many labels");
    if (vertices >= kNoVertex)
        throw ConstructionError("too many vertices");
}

LabelledComplex LabelledComplex::complete(int q, std::size_t n) { return complete_on(LabelSet::range(q), n); }

LabelledComplex LabelledComplex::complete_on(LabelSet labels, std::size_t n)
{
    return LabelledComplex(labels, n, std::make_shared<CompleteSource>());
}

LabelledComplex LabelledComplex::partite(LabelSet labels, std::size_t n, const std::vector<LabelSet>& label_parts,
    const std::vector<std::vector<Vertex>>& vertex_parts)
{
    LabelSet covered;
    for (auto p : label_parts)
        covered = covered | p;
    if (covered != labels)
        throw ConstructionError("label partition does not cover the label set");
    return LabelledComplex(labels, n, std::make_shared<PartiteSource>(n, label_parts, vertex_parts));
}

LabelledComplex LabelledComplex::coloured(int q, std::size_t n, std::vector<std::vector<int>> colour,
    std::map<std::pair<Label, Label>, int> label_colour)
{
    if (colour.size() != n)
        throw ConstructionError("colour matrix has wrong size");
    for (auto& row : colour)
        if (row.size() != n)
            throw ConstructionError("colour matrix has wrong size");
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (colour[u][v] != colour[v][u])
                throw ConstructionError("colour matrix must be symmetric");
    std::map<std::pair<Label, Label>, int> normal;
    for (auto& [p, c] : label_colour)
        normal[{ std::min(p.first, p.second), std::max(p.first, p.second) }] = c;
    return LabelledComplex(LabelSet::range(q), n, std::make_shared<ColouredSource>(std::move(colour), std::move(normal)));
}

LabelledComplex LabelledComplex::explicit_maps(LabelSet labels, std::size_t n, const std::vector<Injection>& maps,
    bool close)
{
    std::unordered_set<Injection> set;
    for (auto& m : maps) {
        if (!m.domain().subset_of(labels))
            throw ConstructionError("map " + m.str() + " uses labels outside the label set");
        if (!m.is_injective())
            throw ConstructionError("map " + m.str() + " is not injective");
        for (auto v : m.image_sequence())
            if (v >= n)
                throw ConstructionError("map " + m.str() + " leaves the vertex set");
        set.insert(m);
    }
    if (close) {
        std::vector<Injection> work(set.begin(), set.end());
        while (!work.empty()) {
            auto m = work.back();
            work.pop_back();
            for (auto l : m.domain().labels()) {
                auto s = m.restrict(m.domain().without(l));
                if (set.insert(s).second)
                    work.push_back(s);
            }
        }
    } else {
        for (auto& m : set)
            for (auto l : m.domain().labels())
                if (!set.count(m.restrict(m.domain().without(l))))
                    throw ConstructionError("not downward closed: missing restriction of " + m.str());
    }
    return LabelledComplex(labels, n, std::make_shared<ExplicitSource>(std::move(set)));
}

json LabelledComplex::describe() const
{
    json d;
    d["labels"] = labels_json(labels_);
    d["vertices"] = vertices_;
    auto g = source_->describe();
    if (g.value("kind", "") == "explicit")
        d["levels"] = g["levels"];
    else
        d["generator"] = g;
    return d;
}

bool LabelledComplex::contains(const Injection& psi) const
{
    if (!psi.domain().subset_of(labels_))
        return false;
    for (auto v : psi.image_sequence())
        if (v >= vertices_)
            return false;
    if (!psi.is_injective())
        return false;
    return source_->admits(psi);
}

bool LabelledComplex::for_each_extension(
    const Injection& base, LabelSet b, const std::function<bool(const Injection&)>& visit) const
{
    if (!b.subset_of(labels_) || !base.domain().subset_of(b) || !contains(base))
        return true;
    auto todo = (b - base.domain()).labels();
    std::vector<std::vector<Vertex>> cands(todo.size());
    std::vector<Vertex> all(vertices_);
    for (std::size_t v = 0; v < vertices_; ++v)
        all[v] = static_cast<Vertex>(v);
    for (std::size_t k = 0; k < todo.size(); ++k) {
        cands[k] = source_->candidates(todo[k]);
        if (cands[k].empty())
            cands[k] = all;
    }
    std::vector<bool> used(vertices_, false);
    for (auto v : base.image_sequence())
        used[v] = true;
    Injection cur = base;
    bool go = true;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (!go)
            return;
        if (k == todo.size()) {
            if (!visit(cur))
                go = false;
            return;
        }
        for (auto v : cands[k]) {
            if (v >= vertices_ || used[v])
                continue;
            cur.set(todo[k], v);
            if (source_->admits(cur)) {
                used[v] = true;
                rec(k + 1);
                used[v] = false;
            }
            cur.erase(todo[k]);
            if (!go)
                return;
        }
    };
    rec(0);
    return go;
}

std::vector<Injection> LabelledComplex::extensions(const Injection& base, LabelSet b) const
{
    std::vector<Injection> out;
    for_each_extension(base, b, [&](const Injection& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

std::vector<Injection> LabelledComplex::level(LabelSet b) const
{
    auto out = extensions(Injection(), b);
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
}

std::vector<Injection> LabelledComplex::level(int k) const
{
    std::vector<Injection> out;
    for (auto b : subsets_of_size(labels_, k)) {
        auto part = level(b);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::size_t LabelledComplex::level_size(LabelSet b) const
{
    std::size_t count = 0;
    for_each_extension(Injection(), b, [&](const Injection&) {
        ++count;
        return true;
    });
    return count;
}

LabelledComplex LabelledComplex::materialize() const
{
    std::vector<Injection> all;
    for (auto b : subsets_of(labels_)) {
        auto part = level(b);
        all.insert(all.end(), part.begin(), part.end());
    }
    return explicit_maps(labels_, vertices_, all);
}

LabelledComplex restrict(const LabelledComplex& phi, const PartialSystem& filter)
{
    for (auto& [b, allowed] : filter) {
        if (!b.subset_of(phi.labels()))
            throw DomainMismatch("filter label set " + b.str() + " is not inside " + phi.labels().str());
        for (auto& m : allowed)
            if (m.domain() != b)
                throw DomainMismatch("filter map " + m.str() + " is not defined on " + b.str());
    }
    if (filter.empty())
        return phi;
    return LabelledComplex(phi.labels(), phi.vertex_count(), std::make_shared<RestrictedSource>(phi, filter));
}

LabelledComplex restrict_vertices(const LabelledComplex& phi, const std::vector<Vertex>& keep)
{
    return LabelledComplex(phi.labels(), phi.vertex_count(), std::make_shared<VertexSubsetSource>(phi, keep));
}

LabelledComplex neighbourhood(const LabelledComplex& phi, const Injection& base)
{
    if (!phi.contains(base))
        throw InvalidBase("base map " + base.str() + " is not in the complex");
    if (base.empty())
        return phi;
    return LabelledComplex(
        phi.labels() - base.domain(), phi.vertex_count(), std::make_shared<NeighbourhoodSource>(phi, base));
}

LabelledComplex partite_template(LabelSet labels, int s)
{
    if (s < 1)
        throw ConstructionError("template size must be positive");
    int q = labels.empty() ? 0 : 32 - std::countl_zero(labels.bits());
    std::size_t n = static_cast<std::size_t>(q * s);
    std::vector<LabelSet> lparts;
    std::vector<std::vector<Vertex>> vparts;
    for (auto l : labels.labels()) {
        lparts.push_back(LabelSet { l });
        std::vector<Vertex> vs;
        for (int x = 0; x < s; ++x)
            vs.push_back(static_cast<Vertex>(l * s + x));
        vparts.push_back(vs);
    }
    return LabelledComplex::partite(labels, n, lparts, vparts);
}

LabelledComplex complex_from_descriptor(const json& d)
{
    LabelSet labels(d.at("labels").get<std::vector<int>>());
    auto n = d.at("vertices").get<std::size_t>();
    if (d.contains("levels"))
        return LabelledComplex::explicit_maps(labels, n, maps_from_levels(d.at("levels")));
    const json& g = d.at("generator");
    auto kind = g.at("kind").get<std::string>();
    if (kind == "complete")
        return LabelledComplex::complete_on(labels, n);
    if (kind == "partite") {
        std::vector<LabelSet> lp;
        for (auto& p : g.at("label_parts"))
            lp.emplace_back(p.get<std::vector<int>>());
        auto vp = g.at("vertex_parts").get<std::vector<std::vector<Vertex>>>();
        return LabelledComplex::partite(labels, n, lp, vp);
    }
    if (kind == "coloured") {
        std::vector<std::vector<int>> colour(n, std::vector<int>(n, -1));
        for (auto& e : g.at("edge_colours")) {
            auto u = e.at(0).get<std::size_t>(), v = e.at(1).get<std::size_t>();
            if (u >= n || v >= n)
                throw InputError("edge colour refers to missing vertex");
            colour[u][v] = colour[v][u] = e.at(2).get<int>();
        }
        std::map<std::pair<Label, Label>, int> lc;
        for (auto& e : g.at("label_colours"))
            lc[{ e.at(0).get<int>(), e.at(1).get<int>() }] = e.at(2).get<int>();
        int q = labels.empty() ? 0 : 32 - std::countl_zero(labels.bits());
        return LabelledComplex::coloured(q, n, colour, lc);
    }
    if (kind == "explicit")
        return LabelledComplex::explicit_maps(labels, n, maps_from_levels(g.at("levels")));
    if (kind == "restricted") {
        auto base = complex_from_descriptor(g.at("base"));
        PartialSystem filter;
        for (auto& lv : g.at("filter")) {
            LabelSet b(lv.at("label_subset").get<std::vector<int>>());
            auto& slot = filter[b];
            for (auto& mj : lv.at("maps"))
                slot.insert(injection_from_json(mj));
        }
        return restrict(base, filter);
    }
    if (kind == "vertex_subset")
        return restrict_vertices(complex_from_descriptor(g.at("base")), g.at("keep").get<std::vector<Vertex>>());
    if (kind == "neighbourhood")
        return neighbourhood(complex_from_descriptor(g.at("base")), injection_from_json(g.at("base_map")));
    throw InputError("unknown complex generator kind: " + kind);
}

} // namespace designlat
