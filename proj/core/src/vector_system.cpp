#include <designlat/errors.hpp>
#include <designlat/vector_system.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace designlat {

// ---------------------------------------------------------------- EdgeVector

IntVec EdgeVector::get(const Injection& psi) const
{
    auto it = entries_.find(psi);
    return it == entries_.end() ? IntVec(static_cast<std::size_t>(dim_)) : it->second;
}

const IntVec* EdgeVector::find(const Injection& psi) const
{
    auto it = entries_.find(psi);
    return it == entries_.end() ? nullptr : &it->second;
}

void EdgeVector::set(const Injection& psi, const IntVec& v)
{
    if (v.size() != static_cast<std::size_t>(dim_))
        throw DomainMismatch("edge vector entry has wrong colour dimension");
    if (designlat::is_zero(v))
        entries_.erase(psi);
    else
        entries_[psi] = v;
}

void EdgeVector::add(const Injection& psi, const IntVec& v, const Integer& scale)
{
    if (v.size() != static_cast<std::size_t>(dim_))
        throw DomainMismatch("edge vector entry has wrong colour dimension");
    if (scale == 0 || designlat::is_zero(v))
        return;
    auto [it, fresh] = entries_.try_emplace(psi, IntVec(static_cast<std::size_t>(dim_)));
    add_to(it->second, v, scale);
    if (designlat::is_zero(it->second))
        entries_.erase(it);
}

EdgeVector& EdgeVector::operator+=(const EdgeVector& o)
{
    if (o.dim_ != dim_)
        throw DomainMismatch("colour dimensions differ");
    for (auto& [k, v] : o.entries_)
        add(k, v);
    return *this;
}

EdgeVector& EdgeVector::operator-=(const EdgeVector& o)
{
    if (o.dim_ != dim_)
        throw DomainMismatch("colour dimensions differ");
    for (auto& [k, v] : o.entries_)
        add(k, v, -1);
    return *this;
}

EdgeVector& EdgeVector::operator*=(const Integer& c)
{
    if (c == 0) {
        entries_.clear();
        return *this;
    }
    for (auto& [k, v] : entries_)
        for (auto& x : v)
            x *= c;
    return *this;
}

// ----------------------------------------------------------------- Selection

void Selection::add(std::size_t family, const Injection& phi, const Integer& c)
{
    if (c == 0)
        return;
    auto& slot = entries_[{ family, phi }];
    slot += c;
    if (slot == 0)
        entries_.erase({ family, phi });
}

void Selection::set(std::size_t family, const Injection& phi, const Integer& c)
{
    if (c == 0)
        entries_.erase({ family, phi });
    else
        entries_[{ family, phi }] = c;
}

Integer Selection::get(std::size_t family, const Injection& phi) const
{
    auto it = entries_.find({ family, phi });
    return it == entries_.end() ? Integer(0) : it->second;
}

// ------------------------------------------------------------- VectorSystem

std::size_t TypeTable::type_of(std::size_t family, const Injection& theta) const
{
    auto& idx = index.at(family);
    auto it = idx.find(theta);
    if (it == idx.end())
        throw DomainMismatch("map " + theta.str() + " is not in the family at " + b.str());
    return it->second;
}

struct VectorSystem::Cache {
    std::mutex mu;
    std::map<std::uint32_t, std::unique_ptr<TypeTable>> tables;
    std::map<std::uint32_t, std::unique_ptr<TypeSpan>> spans;
    std::optional<bool> elementary;
    std::optional<std::vector<std::pair<std::size_t, Injection>>> classes;
};

VectorSystem::VectorSystem(PermutationGroup sigma, int r, int dim, std::vector<FamilyMember> family)
    : sigma_(std::move(sigma))
    , r_(r)
    , dim_(dim)
    , family_(std::move(family))
    , zero_(static_cast<std::size_t>(dim))
    , cache_(std::make_shared<Cache>())
{
    if (dim < 1)
        throw ConstructionError("colour dimension must be positive");
    if (r < 0 || r > sigma_.domain().size())
        throw ConstructionError("uniformity out of range");
    if (family_.empty())
        throw ConstructionError("family must be nonempty");
    std::set<std::string> names;
    for (auto& m : family_) {
        if (!names.insert(m.name).second)
            throw ConstructionError("duplicate family name " + m.name);
        for (auto it = m.gamma.begin(); it != m.gamma.end();) {
            auto& [theta, v] = *it;
            if (v.size() != static_cast<std::size_t>(dim))
                throw ConstructionError("coefficient of " + theta.str() + " has wrong dimension");
            if (theta.size() != r || !theta.domain().subset_of(sigma_.domain()))
                throw ConstructionError("coefficient key " + theta.str() + " is not an r-level map");
            auto& legal = sigma_.restricted_maps(theta.domain(), theta.image_labels());
            if (!std::binary_search(legal.begin(), legal.end(), theta, CanonicalLess {}))
                throw ConstructionError("coefficient key " + theta.str() + " is not a restriction of the group");
            if (is_zero(v))
                it = m.gamma.erase(it);
            else
                ++it;
        }
    }
}

VectorSystem VectorSystem::from_function(PermutationGroup sigma, int r, int dim,
    const std::vector<std::string>& names, const std::function<IntVec(std::size_t, const Injection&)>& fn)
{
    std::vector<FamilyMember> fam;
    for (std::size_t a = 0; a < names.size(); ++a) {
        FamilyMember m { names[a], {} };
        for (auto b : subsets_of_size(sigma.domain(), r))
            for (auto& theta : sigma.maps_from(b)) {
                auto v = fn(a, theta);
                if (!is_zero(v))
                    m.gamma.emplace(theta, std::move(v));
            }
        fam.push_back(std::move(m));
    }
    return VectorSystem(std::move(sigma), r, dim, std::move(fam));
}

std::optional<std::size_t> VectorSystem::family_index(const std::string& name) const
{
    for (std::size_t a = 0; a < family_.size(); ++a)
        if (family_[a].name == name)
            return a;
    return std::nullopt;
}

const IntVec& VectorSystem::value(std::size_t a, const Injection& theta) const
{
    auto& g = family_.at(a).gamma;
    auto it = g.find(theta);
    return it == g.end() ? zero_ : it->second;
}

const TypeTable& VectorSystem::types(LabelSet b) const
{
    {
        std::lock_guard lock(cache_->mu);
        auto it = cache_->tables.find(b.bits());
        if (it != cache_->tables.end())
            return *it->second;
    }
    if (b.size() != r_ || !b.subset_of(labels()))
        throw DomainMismatch("types are defined on r-subsets of the label set");
    auto t = std::make_unique<TypeTable>();
    t->b = b;
    t->sigma = sigma_.maps_onto(b);
    std::sort(t->sigma.begin(), t->sigma.end(), CanonicalLess {});
    for (std::size_t s = 0; s < t->sigma.size(); ++s)
        t->sigma_index.emplace(t->sigma[s], s);
    auto thetas = sigma_.maps_from(b);
    std::sort(thetas.begin(), thetas.end(), CanonicalLess {});
    std::map<IntVec, std::size_t> by_pattern;
    const auto d = static_cast<std::size_t>(dim_);
    t->index.resize(family_.size());
    for (std::size_t a = 0; a < family_.size(); ++a) {
        for (auto& theta : thetas) {
            IntVec pattern(t->sigma.size() * d);
            for (std::size_t s = 0; s < t->sigma.size(); ++s) {
                auto& v = value(a, compose(theta, t->sigma[s]));
                for (std::size_t k = 0; k < d; ++k)
                    pattern[s * d + k] = v[k];
            }
            auto [it, fresh] = by_pattern.try_emplace(pattern, t->types.size());
            if (fresh) {
                TypeInfo info;
                StableHash h;
                h.add(static_cast<std::int64_t>(b.bits()));
                for (std::size_t s = 0; s < t->sigma.size(); ++s) {
                    for (auto x : t->sigma[s].image_sequence())
                        h.add(static_cast<std::int64_t>(x));
                    h.add(static_cast<std::int64_t>(t->sigma[s].domain().bits()));
                    for (std::size_t k = 0; k < d; ++k)
                        h.add(pattern[s * d + k]);
                }
                info.id = h.hex();
                info.zero = is_zero(pattern);
                info.pattern = std::move(pattern);
                t->types.push_back(std::move(info));
            }
            t->types[it->second].members.emplace_back(a, theta);
            t->index[a].emplace(theta, it->second);
        }
    }
    for (std::size_t i = 0; i < t->types.size(); ++i)
        if (!t->types[i].zero)
            t->nonzero.push_back(i);
    std::lock_guard lock(cache_->mu);
    return *cache_->tables.emplace(b.bits(), std::move(t)).first->second;
}

const TypeSpan& VectorSystem::type_span(LabelSet b) const
{
    {
        std::lock_guard lock(cache_->mu);
        auto it = cache_->spans.find(b.bits());
        if (it != cache_->spans.end())
            return *it->second;
    }
    auto& table = types(b);
    std::vector<IntVec> cols;
    for (auto i : table.nonzero)
        cols.push_back(table.types[i].pattern);
    auto span = std::make_unique<TypeSpan>();
    auto rows = table.pattern_length(dim_);
    span->tester = SpanTester(cols, rows);
    if (!cols.empty()) {
        span->kernel = kernel_basis(Matrix::from_columns(cols, rows));
        for (auto& k : span->kernel)
            span->c0 = std::max(span->c0, l1_norm(k));
    }
    std::lock_guard lock(cache_->mu);
    return *cache_->spans.emplace(b.bits(), std::move(span)).first->second;
}

bool VectorSystem::elementary() const
{
    {
        std::lock_guard lock(cache_->mu);
        if (cache_->elementary)
            return *cache_->elementary;
    }
    bool ok = true;
    for (auto& cls : sigma_.equivalence_classes(r_)) {
        // Tables at equivalent sets are relabellings of each other.
        auto& table = types(cls.front());
        std::vector<IntVec> cols;
        for (auto i : table.nonzero)
            cols.push_back(table.types[i].pattern);
        if (!cols.empty() && rank(Matrix::from_columns(cols, table.pattern_length(dim_))) != cols.size()) {
            ok = false;
            break;
        }
    }
    std::lock_guard lock(cache_->mu);
    cache_->elementary = ok;
    return ok;
}

const std::vector<std::pair<std::size_t, Injection>>& VectorSystem::nonzero_classes() const
{
    {
        std::lock_guard lock(cache_->mu);
        if (cache_->classes)
            return *cache_->classes;
    }
    std::vector<std::pair<std::size_t, Injection>> out;
    for (std::size_t a = 0; a < family_.size(); ++a) {
        for (auto b : subsets_of_size(labels(), r_)) {
            // Every class θΣ meets A_B at each B in its equivalence class; record it
            // at the canonical member, where its minimal element lives.
            if (sigma_.equivalent_sets(b).front() != b)
                continue;
            auto& table = types(b);
            std::unordered_set<Injection> seen;
            auto thetas = sigma_.maps_from(b);
            std::sort(thetas.begin(), thetas.end(), CanonicalLess {});
            for (auto& theta : thetas) {
                if (seen.count(theta))
                    continue;
                for (auto& s : sigma_.restricted_maps(b, b))
                    seen.insert(compose(theta, s));
                if (!table.types[table.type_of(a, theta)].zero)
                    out.emplace_back(a, theta);
            }
        }
    }
    std::lock_guard lock(cache_->mu);
    cache_->classes = std::move(out);
    return *cache_->classes;
}

// ---------------------------------------------------------------- molecules

EdgeVector molecule(const VectorSystem& gamma, const LabelledComplex& phi, std::size_t family, const Injection& emb)
{
    if (phi.labels() != gamma.labels())
        throw DomainMismatch("complex and vector system use different label sets");
    if (family >= gamma.family_size())
        throw InvalidEmbedding("unknown family member");
    if (emb.domain() != phi.labels() || !emb.is_injective() || !phi.contains(emb))
        throw InvalidEmbedding("not an embedding of the family member: " + emb.str());
    EdgeVector out(gamma.dim());
    for (auto& [theta, v] : gamma.member(family).gamma) {
        auto psi = compose(emb, theta);
        if (!phi.contains(psi))
            throw InvalidEmbedding("embedding " + emb.str() + " sends " + theta.str() + " outside the complex");
        out.add(psi, v);
    }
    return out;
}

EdgeVector boundary(const VectorSystem& gamma, const LabelledComplex& phi, const Selection& psi)
{
    EdgeVector out(gamma.dim());
    for (auto& [key, c] : psi.entries()) {
        if (key.map.domain() != phi.labels())
            throw DomainMismatch("selection key " + key.map.str() + " is not defined on the label set");
        for (auto& [theta, v] : gamma.member(key.family).gamma)
            out.add(compose(key.map, theta), v, c);
    }
    return out;
}

bool check_elementary(const VectorSystem& gamma) { return gamma.elementary(); }

IntVec f_vector(const TypeTable& table, const EdgeVector& j, const Injection& rep, int dim)
{
    const auto d = static_cast<std::size_t>(dim);
    IntVec out(table.sigma.size() * d);
    for (std::size_t s = 0; s < table.sigma.size(); ++s)
        if (auto* v = j.find(compose(rep, table.sigma[s])))
            for (std::size_t k = 0; k < d; ++k)
                out[s * d + k] = (*v)[k];
    return out;
}

IntVec act(const TypeTable& table, const IntVec& v, const Injection& tau, int dim)
{
    const auto d = static_cast<std::size_t>(dim);
    IntVec out(v.size());
    for (std::size_t s = 0; s < table.sigma.size(); ++s) {
        auto src = table.sigma_index.at(compose(tau, table.sigma[s]));
        for (std::size_t k = 0; k < d; ++k)
            out[s * d + k] = v[src * d + k];
    }
    return out;
}

// ------------------------------------------------------ minimum expressions

namespace {

constexpr std::size_t kEnumerationLimit = 1000000;

// Enumerates x0 + K·y with |y_i| ≤ cap and keeps the best point under `score`
// (lower is better; nullopt rejects). Returns (best, cap_binding).
template <typename Score>
std::pair<std::optional<IntVec>, bool> search_kernel(const IntVec& x0, const std::vector<IntVec>& kernel,
    Integer cap_hint, Score score)
{
    const std::size_t k = kernel.size();
    if (k == 0) {
        if (score(x0))
            return { x0, false };
        return { std::nullopt, false };
    }
    // largest cap with (2cap+1)^k within the enumeration limit
    long limit_cap = 0;
    while (true) {
        double pts = 1;
        for (std::size_t i = 0; i < k; ++i)
            pts *= static_cast<double>(2 * (limit_cap + 1) + 1);
        if (pts > static_cast<double>(kEnumerationLimit))
            break;
        ++limit_cap;
    }
    bool truncated = false;
    long cap;
    if (cap_hint > limit_cap) {
        cap = limit_cap;
        truncated = true;
    } else {
        cap = cap_hint.get_si();
    }
    std::vector<long> y(k, -cap);
    std::optional<IntVec> best;
    std::optional<Integer> best_score;
    bool on_edge = false;
    while (true) {
        IntVec x = x0;
        for (std::size_t i = 0; i < k; ++i)
            if (y[i] != 0)
                add_to(x, kernel[i], Integer(y[i]));
        if (auto sc = score(x)) {
            if (!best_score || *sc < *best_score) {
                best_score = *sc;
                best = x;
                on_edge = std::any_of(y.begin(), y.end(), [&](long v) { return cap > 0 && (v == cap || v == -cap); });
            }
        }
        std::size_t i = 0;
        while (i < k && y[i] == cap) {
            y[i] = -cap;
            ++i;
        }
        if (i == k)
            break;
        ++y[i];
    }
    return { best, truncated || on_edge };
}

} // namespace

MinNormResult min_norm_expression(const VectorSystem& gamma, LabelSet b, const IntVec& target)
{
    auto& span = gamma.type_span(b);
    MinNormResult res;
    auto x0 = span.tester.solve(target);
    if (!x0)
        return res;
    Integer cap = span.c0 * std::max(Integer(1), l1_norm(*x0));
    auto [best, binding] = search_kernel(*x0, span.kernel, cap, [](const IntVec& x) -> std::optional<Integer> {
        return l1_norm(x);
    });
    res.x = best;
    res.cap_binding = binding;
    return res;
}

namespace {

// Nonnegative integer expression of target in the nonzero types at b.
std::optional<IntVec> nonnegative_expression(const VectorSystem& gamma, LabelSet b, const IntVec& target)
{
    auto& span = gamma.type_span(b);
    auto x0 = span.tester.solve(target);
    if (!x0)
        return std::nullopt;
    Integer cap = span.c0 * std::max(Integer(1), l1_norm(*x0));
    auto [best, binding] = search_kernel(*x0, span.kernel, cap, [](const IntVec& x) -> std::optional<Integer> {
        for (auto& v : x)
            if (v < 0)
                return std::nullopt;
        return l1_norm(x);
    });
    (void)binding;
    return best;
}

bool in_rational_span(const VectorSystem& gamma, LabelSet b, const IntVec& target)
{
    auto& table = gamma.types(b);
    std::vector<IntVec> cols;
    for (auto i : table.nonzero)
        cols.push_back(table.types[i].pattern);
    auto rows = table.pattern_length(gamma.dim());
    if (cols.empty())
        return is_zero(target);
    auto r0 = rank(Matrix::from_columns(cols, rows));
    cols.push_back(target);
    return rank(Matrix::from_columns(cols, rows)) == r0;
}

} // namespace

std::vector<Orbit> support_orbits(const PermutationGroup& sigma, const std::vector<Injection>& maps)
{
    std::map<Injection, Orbit, CanonicalLess> found;
    std::unordered_set<Injection> covered;
    for (auto& m : maps) {
        if (covered.count(m))
            continue;
        auto o = orbit_of(m, sigma);
        for (auto& x : o.members)
            covered.insert(x);
        found.emplace(o.representative, std::move(o));
    }
    std::vector<Orbit> out;
    for (auto& [k, o] : found)
        out.push_back(std::move(o));
    return out;
}

AtomDecomposition atom_decomposition(const VectorSystem& gamma, const EdgeVector& j)
{
    AtomDecomposition res;
    std::vector<Injection> maps;
    for (auto& [psi, v] : j.entries()) {
        if (psi.size() != gamma.r())
            throw DomainMismatch("edge vector entry " + psi.str() + " is not at level r");
        maps.push_back(psi);
    }
    const bool elem = gamma.elementary();
    for (auto& o : support_orbits(gamma.group(), maps)) {
        auto b = o.domain();
        auto& table = gamma.types(b);
        auto target = f_vector(table, j, o.representative, gamma.dim());
        std::optional<IntVec> x;
        if (elem) {
            x = gamma.type_span(b).tester.solve(target);
        } else {
            auto m = min_norm_expression(gamma, b, target);
            x = m.x;
            res.cap_binding = res.cap_binding || m.cap_binding;
        }
        if (!x) {
            res.in_span = false;
            res.failing_in_rational_span = in_rational_span(gamma, b, target);
            res.failing = o;
            return res;
        }
        OrbitCoefficients oc { o, {} };
        for (std::size_t i = 0; i < x->size(); ++i)
            if ((*x)[i] != 0)
                oc.coefficients.emplace_back(table.nonzero[i], (*x)[i]);
        res.orbits.push_back(std::move(oc));
    }
    return res;
}

UseResult use(const VectorSystem& gamma, const EdgeVector& j, const Injection& psi)
{
    UseResult res;
    auto orbit_use = [&](const Orbit& o) -> std::optional<Integer> {
        auto& table = gamma.types(o.domain());
        auto target = f_vector(table, j, o.representative, gamma.dim());
        if (is_zero(target))
            return Integer(0);
        auto m = min_norm_expression(gamma, o.domain(), target);
        res.cap_binding = res.cap_binding || m.cap_binding;
        if (!m.x)
            return std::nullopt;
        return l1_norm(*m.x);
    };
    if (psi.size() == gamma.r()) {
        res.value = orbit_use(orbit_of(psi, gamma.group()));
        return res;
    }
    // Lower levels: sum over the r-maps extending ψ; only support orbits contribute.
    std::vector<Injection> maps;
    for (auto& [m, v] : j.entries())
        maps.push_back(m);
    Integer total = 0;
    for (auto& o : support_orbits(gamma.group(), maps)) {
        auto u = orbit_use(o);
        if (!u)
            return res;
        if (*u == 0)
            continue;
        long count = 0;
        for (auto& m : o.members)
            if (m.extends(psi))
                ++count;
        total += *u * count;
    }
    res.value = total;
    return res;
}

BoundednessReport boundedness(
    const VectorSystem& gamma, const EdgeVector& j, const Rational& theta, std::size_t vertex_count)
{
    BoundednessReport rep;
    std::vector<Injection> maps;
    for (auto& [m, v] : j.entries())
        maps.push_back(m);
    std::map<Injection, Integer, CanonicalLess> per_lower;
    for (auto& o : support_orbits(gamma.group(), maps)) {
        auto& table = gamma.types(o.domain());
        auto target = f_vector(table, j, o.representative, gamma.dim());
        auto m = min_norm_expression(gamma, o.domain(), target);
        if (!m.x) {
            rep.defined = false;
            rep.bounded = false;
            return rep;
        }
        auto u = l1_norm(*m.x);
        if (u == 0)
            continue;
        for (auto& mem : o.members)
            for (auto l : mem.domain().labels())
                per_lower[mem.restrict(mem.domain().without(l))] += u;
    }
    Rational n(static_cast<long>(vertex_count));
    for (auto& [lower, u] : per_lower) {
        Rational ratio = Rational(u) / n;
        if (!rep.worst || ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.worst = lower;
        }
        if (Rational(u) >= theta * n)
            rep.bounded = false;
    }
    if (theta <= 0)
        rep.bounded = false;
    return rep;
}

std::vector<std::vector<Injection>> edge_atoms_restriction(
    const VectorSystem& gamma, const LabelledComplex& phi, const EdgeVector& g)
{
    std::vector<std::vector<Injection>> out(gamma.family_size());
    std::unordered_map<Injection, std::optional<IntVec>> coeff; // by orbit representative
    const bool elem = gamma.elementary();
    for (auto& psi : phi.level(gamma.r())) {
        auto rep = orbit_representative(psi, gamma.group());
        auto b = rep.domain();
        auto& table = gamma.types(b);
        auto it = coeff.find(rep);
        if (it == coeff.end()) {
            auto target = f_vector(table, g, rep, gamma.dim());
            std::optional<IntVec> x;
            if (elem)
                x = gamma.type_span(b).tester.solve(target);
            else
                x = nonnegative_expression(gamma, b, target);
            it = coeff.emplace(rep, std::move(x)).first;
        }
        auto tau_inv = relabelling(rep, psi).inverse();
        for (std::size_t a = 0; a < gamma.family_size(); ++a) {
            auto t = table.type_of(a, tau_inv);
            bool ok = false;
            if (it->second) {
                if (elem) {
                    IntVec x = *it->second;
                    if (!table.types[t].zero) {
                        auto pos = std::find(table.nonzero.begin(), table.nonzero.end(), t) - table.nonzero.begin();
                        x[static_cast<std::size_t>(pos)] -= 1;
                    }
                    ok = std::all_of(x.begin(), x.end(), [](const Integer& v) { return v >= 0; });
                } else {
                    auto target = f_vector(table, g, rep, gamma.dim());
                    if (!table.types[t].zero)
                        add_to(target, table.types[t].pattern, -1);
                    ok = nonnegative_expression(gamma, b, target).has_value();
                }
            }
            if (ok)
                out[a].push_back(psi);
        }
    }
    return out;
}

} // namespace designlat
