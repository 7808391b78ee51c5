#include <designlat/errors.hpp>
#include <designlat/group.hpp>

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace designlat {

using nlohmann::json;

namespace {

    std::vector<Injection> product_of_bijections(const std::vector<std::pair<LabelSet, LabelSet>>& blocks)
    {
        std::vector<Injection> acc { Injection() };
        for (auto& [from, to] : blocks) {
            auto bs = all_bijections(from, to);
            std::vector<Injection> next;
            next.reserve(acc.size() * bs.size());
            for (auto& a : acc)
                for (auto& b : bs)
                    next.push_back(merge(a, b));
            acc = std::move(next);
        }
        return acc;
    }

    bool is_permutation_of(const Permutation& g, LabelSet domain)
    {
        return g.domain() == domain && g.image_labels() == domain;
    }

} // namespace

PermutationGroup PermutationGroup::partition_stabilizer(const std::vector<LabelSet>& parts)
{
    PermutationGroup g;
    LabelSet all;
    std::vector<LabelSet> ps;
    for (auto p : parts) {
        if (p.empty())
            continue;
        if (!(all & p).empty())
            throw ConstructionError("partition parts overlap");
        all = all | p;
        ps.push_back(p);
    }
    std::sort(ps.begin(), ps.end(), [](LabelSet a, LabelSet b) { return a.min() < b.min(); });
    g.domain_ = all;
    g.parts_ = ps;
    // Generators: adjacent transpositions inside each part.
    for (auto p : ps) {
        auto ls = p.labels();
        for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
            auto t = Injection::identity(all);
            t.set(ls[i], static_cast<Vertex>(ls[i + 1]));
            t.set(ls[i + 1], static_cast<Vertex>(ls[i]));
            g.generators_.push_back(t);
        }
    }
    return g;
}

PermutationGroup PermutationGroup::symmetric(LabelSet domain) { return partition_stabilizer({ domain }); }

PermutationGroup PermutationGroup::trivial(LabelSet domain)
{
    std::vector<LabelSet> parts;
    for (auto l : domain.labels())
        parts.push_back(LabelSet { l });
    return partition_stabilizer(parts);
}

PermutationGroup PermutationGroup::generated(
    LabelSet domain, const std::vector<Permutation>& generators, std::size_t limit)
{
    for (auto& g : generators)
        if (!is_permutation_of(g, domain))
            throw ConstructionError("generator " + g.str() + " is not a permutation of " + domain.str());
    PermutationGroup grp;
    grp.domain_ = domain;
    grp.generators_ = generators;
    auto id = Injection::identity(domain);
    std::unordered_set<Permutation> seen { id };
    std::deque<Permutation> work { id };
    while (!work.empty()) {
        auto x = work.front();
        work.pop_front();
        for (auto& g : generators) {
            auto y = compose(g, x);
            if (seen.insert(y).second) {
                if (seen.size() > limit)
                    throw ConstructionError("group exceeds the element-list limit");
                work.push_back(y);
            }
        }
    }
    std::vector<Permutation> els(seen.begin(), seen.end());
    std::sort(els.begin(), els.end(), CanonicalLess {});
    grp.elements_ = std::move(els);
    return grp;
}

Integer PermutationGroup::order() const
{
    if (elements_)
        return static_cast<unsigned long>(elements_->size());
    Integer o = 1;
    for (auto p : *parts_)
        o *= factorial(p.size());
    return o;
}

bool PermutationGroup::contains(const Permutation& g) const
{
    if (!is_permutation_of(g, domain_))
        return false;
    if (elements_)
        return std::binary_search(elements_->begin(), elements_->end(), g, CanonicalLess {});
    for (auto p : *parts_)
        for (auto l : p.labels())
            if (!p.contains(static_cast<Label>(g.at(l))))
                return false;
    return true;
}

std::vector<Permutation> PermutationGroup::all_elements(std::size_t limit) const
{
    if (elements_)
        return *elements_;
    if (order() > static_cast<unsigned long>(limit))
        throw ConstructionError("group too large to list");
    std::vector<std::pair<LabelSet, LabelSet>> blocks;
    for (auto p : *parts_)
        blocks.push_back({ p, p });
    auto els = product_of_bijections(blocks);
    std::sort(els.begin(), els.end(), CanonicalLess {});
    return els;
}

const std::vector<Injection>& PermutationGroup::restricted_maps(LabelSet from, LabelSet to) const
{
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto key = std::make_pair(from.bits(), to.bits());
    auto it = cache_->maps.find(key);
    if (it != cache_->maps.end())
        return it->second;
    std::vector<Injection> out;
    if (from.size() == to.size() && from.subset_of(domain_) && to.subset_of(domain_)) {
        if (elements_) {
            std::unordered_set<Injection> seen;
            for (auto& g : *elements_) {
                auto r = g.restrict(from);
                if (r.image_labels() == to && seen.insert(r).second)
                    out.push_back(r);
            }
        } else {
            std::vector<std::pair<LabelSet, LabelSet>> blocks;
            bool ok = true;
            for (auto p : *parts_) {
                if ((from & p).size() != (to & p).size()) {
                    ok = false;
                    break;
                }
                blocks.push_back({ from & p, to & p });
            }
            if (ok)
                out = product_of_bijections(blocks);
        }
        std::sort(out.begin(), out.end(), CanonicalLess {});
    }
    return cache_->maps.emplace(key, std::move(out)).first->second;
}

const std::vector<LabelSet>& PermutationGroup::equivalent_sets(LabelSet b) const
{
    {
        std::lock_guard lock(cache_->mu);
        auto it = cache_->classes.find(b.bits());
        if (it != cache_->classes.end())
            return it->second;
    }
    std::vector<LabelSet> out;
    if (!b.subset_of(domain_)) {
        std::lock_guard lock(cache_->mu);
        return cache_->classes.emplace(b.bits(), std::move(out)).first->second;
    }
    if (elements_) {
        std::unordered_set<std::uint32_t> seen;
        for (auto& g : *elements_) {
            auto img = g.restrict(b).image_labels();
            if (seen.insert(img.bits()).second)
                out.push_back(img);
        }
    } else {
        for (auto c : subsets_of_size(domain_, b.size())) {
            bool ok = true;
            for (auto p : *parts_)
                if ((c & p).size() != (b & p).size())
                    ok = false;
            if (ok)
                out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end(), CanonicalLess {});
    std::lock_guard lock(cache_->mu);
    return cache_->classes.emplace(b.bits(), std::move(out)).first->second;
}

const std::vector<Injection>& PermutationGroup::maps_onto(LabelSet b) const
{
    {
        std::lock_guard lock(cache_->mu);
        auto it = cache_->onto.find(b.bits());
        if (it != cache_->onto.end())
            return it->second;
    }
    std::vector<Injection> out;
    for (auto c : equivalent_sets(b)) {
        auto& part = restricted_maps(c, b);
        out.insert(out.end(), part.begin(), part.end());
    }
    std::lock_guard lock(cache_->mu);
    return cache_->onto.emplace(b.bits(), std::move(out)).first->second;
}

std::vector<Injection> PermutationGroup::maps_from(LabelSet b) const
{
    std::vector<Injection> out;
    for (auto c : equivalent_sets(b)) {
        auto& part = restricted_maps(b, c);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<std::vector<LabelSet>> PermutationGroup::equivalence_classes(int r) const
{
    std::vector<std::vector<LabelSet>> out;
    std::unordered_set<std::uint32_t> done;
    for (auto b : subsets_of_size(domain_, r)) {
        if (done.count(b.bits()))
            continue;
        auto cls = equivalent_sets(b);
        for (auto c : cls)
            done.insert(c.bits());
        out.push_back(cls);
    }
    return out;
}

PermutationGroup PermutationGroup::quotient(LabelSet fixed) const
{
    LabelSet rest = domain_ - fixed;
    if (parts_) {
        std::vector<LabelSet> ps;
        for (auto p : *parts_) {
            // labels of B* are fixed pointwise: they become singleton parts outside the domain
            if (!(p - fixed).empty())
                ps.push_back(p - fixed);
        }
        return partition_stabilizer(ps);
    }
    PermutationGroup g;
    g.domain_ = rest;
    std::vector<Permutation> els;
    for (auto& e : *elements_) {
        bool fixes = true;
        for (auto l : (fixed & domain_).labels())
            if (e.at(l) != l)
                fixes = false;
        if (fixes)
            els.push_back(e.restrict(rest));
    }
    std::sort(els.begin(), els.end(), CanonicalLess {});
    els.erase(std::unique(els.begin(), els.end()), els.end());
    g.generators_ = els;
    g.elements_ = std::move(els);
    return g;
}

json PermutationGroup::describe() const
{
    json d;
    d["domain"] = domain_.labels();
    d["generators"] = json::array();
    for (auto& g : generators_) {
        json w = json::array();
        for (auto l : domain_.labels())
            w.push_back(g.at(l));
        d["generators"].push_back(w);
    }
    if (parts_) {
        d["partition"] = json::array();
        for (auto p : *parts_)
            d["partition"].push_back(p.labels());
    }
    return d;
}

PermutationGroup group_from_descriptor(const json& d)
{
    LabelSet domain(d.at("domain").get<std::vector<int>>());
    auto labels = domain.labels();
    std::vector<Permutation> gens;
    for (auto& w : d.at("generators")) {
        auto img = w.get<std::vector<int>>();
        if (img.size() != labels.size())
            throw InputError("generator length differs from the domain size");
        Permutation g;
        for (std::size_t i = 0; i < labels.size(); ++i)
            g.set(labels[i], static_cast<Vertex>(img[i]));
        if (!is_permutation_of(g, domain))
            throw InputError("generator is not a permutation of the domain");
        gens.push_back(g);
    }
    if (d.contains("partition")) {
        std::vector<LabelSet> parts;
        for (auto& p : d.at("partition"))
            parts.emplace_back(p.get<std::vector<int>>());
        auto g = PermutationGroup::partition_stabilizer(parts);
        if (g.domain() != domain)
            throw InputError("partition does not cover the group domain");
        for (auto& x : gens)
            if (!g.contains(x))
                throw InputError("generator does not preserve the declared partition");
        return g;
    }
    return PermutationGroup::generated(domain, gens);
}

std::optional<AdaptednessWitness> adaptedness_violation(const LabelledComplex& phi, const PermutationGroup& sigma)
{
    if (sigma.domain() != phi.labels())
        throw DomainMismatch("group domain differs from the label set");
    for (auto b : subsets_of(phi.labels())) {
        auto taus = sigma.maps_onto(b);
        for (auto& m : phi.level(b))
            for (auto& t : taus) {
                auto img = compose(m, t);
                if (!phi.contains(img))
                    return AdaptednessWitness { m, t };
            }
    }
    return std::nullopt;
}

std::optional<AdaptednessWitness> exact_adaptedness_violation(const LabelledComplex& phi, const PermutationGroup& sigma)
{
    if (sigma.domain() != phi.labels())
        throw DomainMismatch("group domain differs from the label set");
    for (auto b : subsets_of(phi.labels())) {
        auto maps = phi.level(b);
        if (maps.empty())
            continue;
        for (auto c : subsets_of_size(phi.labels(), b.size())) {
            auto& allowed = sigma.restricted_maps(c, b);
            std::unordered_set<Injection> in(allowed.begin(), allowed.end());
            for (auto& t : all_bijections(c, b))
                for (auto& m : maps)
                    if (phi.contains(compose(m, t)) != (in.count(t) > 0))
                        return AdaptednessWitness { m, t };
        }
    }
    return std::nullopt;
}

Injection orbit_representative(const Injection& psi, const PermutationGroup& sigma)
{
    Injection best = psi;
    for (auto& t : sigma.maps_onto(psi.domain())) {
        auto m = compose(psi, t);
        if (canonical_less(m, best))
            best = m;
    }
    return best;
}

Orbit orbit_of(const Injection& psi, const PermutationGroup& sigma)
{
    Orbit o;
    std::unordered_set<Injection> seen;
    for (auto& t : sigma.maps_onto(psi.domain())) {
        auto m = compose(psi, t);
        if (seen.insert(m).second)
            o.members.push_back(m);
    }
    if (o.members.empty())
        o.members.push_back(psi);
    std::sort(o.members.begin(), o.members.end(), CanonicalLess {});
    o.representative = o.members.front();
    o.image = psi.image_sorted();
    return o;
}

std::vector<Orbit> orbits(const LabelledComplex& phi, const PermutationGroup& sigma, int r)
{
    if (sigma.domain() != phi.labels())
        throw DomainMismatch("group domain differs from the label set");
    std::vector<Orbit> out;
    std::unordered_set<Injection> seen;
    for (auto& m : phi.level(r)) {
        if (seen.count(m))
            continue;
        auto o = orbit_of(m, sigma);
        for (auto& x : o.members) {
            if (!phi.contains(x))
                throw NotAdapted("orbit of " + m.str() + " leaves the complex at " + x.str());
            seen.insert(x);
        }
        out.push_back(std::move(o));
    }
    return out;
}

} // namespace designlat
