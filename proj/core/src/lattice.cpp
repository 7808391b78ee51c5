#include <designlat/errors.hpp>
#include <designlat/lattice.hpp>

#include <algorithm>
#include <set>
#include <unordered_set>

namespace designlat {

namespace {

using Key = std::uint64_t;
using SparseVec = std::map<Key, Integer>;
using SparseField = std::unordered_map<Injection, SparseVec>;

constexpr int kSlotShift = 40;

void sparse_add(SparseVec& acc, Key k, const Integer& v)
{
    if (v == 0)
        return;
    auto& slot = acc[k];
    slot += v;
    if (slot == 0)
        acc.erase(k);
}

std::vector<LabelSet> sub_masks(LabelSet s)
{
    std::vector<LabelSet> out;
    std::uint32_t b = s.bits();
    for (std::uint32_t sub = b;; sub = (sub - 1) & b) {
        out.emplace_back(sub);
        if (!sub)
            break;
    }
    return out;
}

// Span tests of target orbits against the atoms of a derived vector system,
// with one cached column set per representative domain.
class OrbitSpanChecker {
public:
    OrbitSpanChecker(const PermutationGroup& group, const std::vector<SparseField>& family)
        : group_(group)
        , family_(family)
    {
    }

    bool member(const Injection& rep, const SparseField& target)
    {
        auto& block = block_for(rep.domain());
        auto& sigma = group_.maps_onto(rep.domain());
        IntVec dense(block.rows);
        for (std::size_t s = 0; s < sigma.size(); ++s) {
            auto it = target.find(compose(rep, sigma[s]));
            if (it == target.end())
                continue;
            for (auto& [k, v] : it->second) {
                auto row = block.row_index.find((static_cast<Key>(s) << kSlotShift) | k);
                if (row == block.row_index.end())
                    return false;
                dense[row->second] = v;
            }
        }
        if (block.rows == 0)
            return true;
        return block.tester.contains(dense);
    }

private:
    struct Block {
        std::unordered_map<Key, std::size_t> row_index;
        std::size_t rows = 0;
        SpanTester tester;
    };

    Block& block_for(LabelSet b)
    {
        auto it = blocks_.find(b.bits());
        if (it != blocks_.end())
            return it->second;
        auto& sigma = group_.maps_onto(b);
        std::set<std::vector<std::pair<Key, Integer>>> columns;
        for (auto& field : family_) {
            for (auto& theta : group_.maps_from(b)) {
                std::vector<std::pair<Key, Integer>> col;
                for (std::size_t s = 0; s < sigma.size(); ++s) {
                    auto f = field.find(compose(theta, sigma[s]));
                    if (f == field.end())
                        continue;
                    for (auto& [k, v] : f->second)
                        col.emplace_back((static_cast<Key>(s) << kSlotShift) | k, v);
                }
                if (!col.empty()) {
                    std::sort(col.begin(), col.end(), [](auto& x, auto& y) { return x.first < y.first; });
                    columns.insert(std::move(col));
                }
            }
        }
        Block block;
        std::vector<Key> keys;
        for (auto& col : columns)
            for (auto& [k, v] : col)
                keys.push_back(k);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        for (std::size_t i = 0; i < keys.size(); ++i)
            block.row_index.emplace(keys[i], i);
        block.rows = keys.size();
        std::vector<IntVec> dense;
        for (auto& col : columns) {
            IntVec d(block.rows);
            for (auto& [k, v] : col)
                d[block.row_index.at(k)] = v;
            dense.push_back(std::move(d));
        }
        if (block.rows > 0)
            block.tester = SpanTester(dense, block.rows);
        return blocks_.emplace(b.bits(), std::move(block)).first->second;
    }

    const PermutationGroup& group_;
    const std::vector<SparseField>& family_;
    std::map<std::uint32_t, Block> blocks_;
};

// J♯ (or γ♯): every entry is pushed to all of its restrictions, in the
// coordinate block of its own label set.
SparseField sharp_field(const std::vector<std::pair<Injection, const IntVec*>>& entries,
    const std::unordered_map<std::uint32_t, std::size_t>& qindex, int dim)
{
    SparseField out;
    for (auto& [psi, v] : entries) {
        Key base = static_cast<Key>(qindex.at(psi.domain().bits())) * static_cast<Key>(dim);
        for (auto sub : sub_masks(psi.domain())) {
            auto& acc = out[psi.restrict(sub)];
            for (int d = 0; d < dim; ++d)
                sparse_add(acc, base + static_cast<Key>(d), (*v)[static_cast<std::size_t>(d)]);
        }
    }
    return out;
}

// ∂*_i for all levels at once: chains are interned, coordinates are chain·D + d.
class ChainTable {
public:
    std::uint64_t intern(const std::vector<std::uint32_t>& chain)
    {
        auto [it, fresh] = ids_.try_emplace(chain, chains_.size());
        if (fresh)
            chains_.push_back(chain);
        return it->second;
    }
    const std::vector<std::uint32_t>& chain(std::uint64_t id) const { return chains_[id]; }

private:
    std::map<std::vector<std::uint32_t>, std::uint64_t> ids_;
    std::vector<std::vector<std::uint32_t>> chains_;
};

SparseField shadow_field(const std::vector<std::pair<Injection, const IntVec*>>& entries, int r, int dim, ChainTable& chains)
{
    const Key d = static_cast<Key>(dim);
    std::vector<SparseField> levels(static_cast<std::size_t>(r + 1));
    for (auto& [psi, v] : entries) {
        auto id = chains.intern({ psi.domain().bits() });
        auto& acc = levels[static_cast<std::size_t>(r)][psi];
        for (Key k = 0; k < d; ++k)
            sparse_add(acc, id * d + k, (*v)[k]);
    }
    for (int j = r; j > 0; --j) {
        auto& below = levels[static_cast<std::size_t>(j - 1)];
        for (auto& [psi, vec] : levels[static_cast<std::size_t>(j)]) {
            for (auto l : psi.domain().labels()) {
                auto lower = psi.restrict(psi.domain().without(l));
                auto& acc = below[lower];
                for (auto& [key, val] : vec) {
                    auto chain = chains.chain(key / d);
                    chain.insert(chain.begin(), lower.domain().bits());
                    sparse_add(acc, chains.intern(chain) * d + key % d, val);
                }
            }
        }
    }
    SparseField out;
    for (auto& level : levels)
        for (auto& [psi, vec] : level)
            out.emplace(psi, std::move(vec));
    return out;
}

std::vector<std::pair<Injection, const IntVec*>> entries_of(const EdgeVector& j)
{
    std::vector<std::pair<Injection, const IntVec*>> out;
    for (auto& [psi, v] : j.entries())
        out.emplace_back(psi, &v);
    return out;
}

std::vector<std::pair<Injection, const IntVec*>> entries_of(const FamilyMember& m)
{
    std::vector<std::pair<Injection, const IntVec*>> out;
    for (auto& [theta, v] : m.gamma)
        out.emplace_back(theta, &v);
    return out;
}

struct DerivedSystems {
    SparseField target;
    std::vector<SparseField> family;
};

DerivedSystems derive(const VectorSystem& gamma, const EdgeVector& j, LatticeMethod method)
{
    DerivedSystems out;
    for (auto& [psi, v] : j.entries())
        if (psi.size() != gamma.r())
            throw DomainMismatch("edge vector entry " + psi.str() + " is not at level r");
    if (method == LatticeMethod::Sharp) {
        std::unordered_map<std::uint32_t, std::size_t> qindex;
        auto q = subsets_of_size(gamma.labels(), gamma.r());
        for (std::size_t i = 0; i < q.size(); ++i)
            qindex.emplace(q[i].bits(), i);
        out.target = sharp_field(entries_of(j), qindex, gamma.dim());
        for (std::size_t a = 0; a < gamma.family_size(); ++a)
            out.family.push_back(sharp_field(entries_of(gamma.member(a)), qindex, gamma.dim()));
    } else {
        ChainTable chains;
        out.target = shadow_field(entries_of(j), gamma.r(), gamma.dim(), chains);
        for (std::size_t a = 0; a < gamma.family_size(); ++a)
            out.family.push_back(shadow_field(entries_of(gamma.member(a)), gamma.r(), gamma.dim(), chains));
    }
    return out;
}

} // namespace

// --------------------------------------------------------------------- null

std::optional<Injection> null_violation(const EdgeVector& j, int i)
{
    std::map<Injection, IntVec, CanonicalLess> sums;
    for (auto& [psi, v] : j.entries()) {
        if (i < 0 || i >= psi.size())
            throw DomainMismatch("null check level must be below the entry level");
        for (auto sub : subsets_of_size(psi.domain(), i)) {
            auto [it, fresh] = sums.try_emplace(psi.restrict(sub), IntVec(v.size()));
            add_to(it->second, v);
        }
    }
    for (auto& [psi, v] : sums)
        if (!is_zero(v))
            return psi;
    return std::nullopt;
}

std::optional<std::vector<Vertex>> vertex_null_violation(const EdgeVector& j, int i)
{
    std::map<std::vector<Vertex>, IntVec> sums;
    for (auto& [psi, v] : j.entries()) {
        if (i < 0 || i >= psi.size())
            throw DomainMismatch("null check level must be below the entry level");
        for (auto sub : subsets_of_size(psi.domain(), i)) {
            auto [it, fresh] = sums.try_emplace(psi.restrict(sub).image_sorted(), IntVec(v.size()));
            add_to(it->second, v);
        }
    }
    for (auto& [f, v] : sums)
        if (!is_zero(v))
            return f;
    return std::nullopt;
}

// ----------------------------------------------------------------- octahedra

SymmetricFrame SymmetricFrame::make(const PermutationGroup& group, LabelSet b, int dim)
{
    SymmetricFrame f;
    f.b = b;
    f.dim = dim;
    f.sigma = group.maps_onto(b);
    std::sort(f.sigma.begin(), f.sigma.end(), CanonicalLess {});
    for (std::size_t s = 0; s < f.sigma.size(); ++s)
        f.index.emplace(f.sigma[s], s);
    f.self_maps = group.restricted_maps(b, b);
    return f;
}

IntVec SymmetricFrame::act(const IntVec& v, const Injection& tau) const
{
    const auto d = static_cast<std::size_t>(dim);
    IntVec out(v.size());
    for (std::size_t s = 0; s < sigma.size(); ++s) {
        auto src = index.at(compose(tau, sigma[s]));
        for (std::size_t k = 0; k < d; ++k)
            out[s * d + k] = v[src * d + k];
    }
    return out;
}

IntVec SymmetricVector::get(const Injection& psi) const
{
    auto it = entries_.find(psi);
    return it == entries_.end() ? IntVec(width_) : it->second;
}

void SymmetricVector::add(const Injection& psi, const IntVec& v, const Integer& scale)
{
    if (v.size() != width_)
        throw DomainMismatch("symmetric vector entry has the wrong width");
    if (scale == 0 || is_zero(v))
        return;
    auto [it, fresh] = entries_.try_emplace(psi, IntVec(width_));
    add_to(it->second, v, scale);
    if (is_zero(it->second))
        entries_.erase(it);
}

SymmetricVector& SymmetricVector::operator+=(const SymmetricVector& o)
{
    for (auto& [k, v] : o.entries_)
        add(k, v);
    return *this;
}

Injection OctahedronEmbedding::corner(std::uint32_t mask) const
{
    Injection m;
    int k = 0;
    for (auto l : first.domain().labels()) {
        m.set(l, (mask >> k) & 1u ? second.at(l) : first.at(l));
        ++k;
    }
    return m;
}

bool is_octahedron_embedding(const LabelledComplex& phi, const OctahedronEmbedding& e)
{
    if (e.first.domain() != e.second.domain())
        return false;
    std::set<Vertex> used;
    for (auto l : e.first.domain().labels()) {
        used.insert(e.first.at(l));
        used.insert(e.second.at(l));
    }
    if (used.size() != 2 * static_cast<std::size_t>(e.first.size()))
        return false;
    const std::uint32_t corners = 1u << e.first.size();
    for (std::uint32_t mask = 0; mask < corners; ++mask)
        if (!phi.contains(e.corner(mask)))
            return false;
    return true;
}

std::vector<OctahedronEmbedding> octahedra(const LabelledComplex& phi, LabelSet b)
{
    std::vector<OctahedronEmbedding> out;
    if (b.empty())
        return out;
    auto level = phi.level(b);
    const Label m = b.min();
    for (auto& f : level)
        for (auto& s : level) {
            if (s.at(m) <= f.at(m))
                continue;
            OctahedronEmbedding e { f, s };
            if (is_octahedron_embedding(phi, e))
                out.push_back(e);
        }
    return out;
}

SymmetricVector octahedron_vector(
    const LabelledComplex& phi, const SymmetricFrame& frame, const OctahedronEmbedding& e, const IntVec& v)
{
    if (e.first.domain() != frame.b || !is_octahedron_embedding(phi, e))
        throw InvalidBase("not an embedding of the octahedron on " + frame.b.str());
    if (v.size() != frame.width())
        throw DomainMismatch("octahedron weight has the wrong width");
    SymmetricVector out(frame.width());
    const std::uint32_t corners = 1u << frame.b.size();
    for (std::uint32_t mask = 0; mask < corners; ++mask) {
        auto corner = e.corner(mask);
        Integer sign = std::popcount(mask) % 2 ? -1 : 1;
        for (auto& tau : frame.self_maps)
            out.add(compose(corner, tau), frame.act(v, tau), sign);
    }
    return out;
}

bool is_symmetric(const SymmetricVector& j, const SymmetricFrame& frame)
{
    for (auto& [psi, v] : j.entries())
        for (auto& tau : frame.self_maps)
            if (j.get(compose(psi, tau)) != frame.act(v, tau))
                return false;
    return true;
}

bool is_null(const SymmetricVector& j, const SymmetricFrame&)
{
    std::map<Injection, IntVec, CanonicalLess> sums;
    for (auto& [psi, v] : j.entries())
        for (auto l : psi.domain().labels()) {
            auto [it, fresh] = sums.try_emplace(psi.restrict(psi.domain().without(l)), IntVec(v.size()));
            add_to(it->second, v);
        }
    return std::all_of(sums.begin(), sums.end(), [](auto& kv) { return is_zero(kv.second); });
}

namespace {

// ψ = rep ∘ τ⁻¹ with rep the minimal ψτ, τ ∈ Σ^B_B; returns (rep, τ).
std::pair<Injection, Injection> self_orbit_rep(const Injection& psi, const SymmetricFrame& frame)
{
    Injection best = psi;
    Injection best_tau = Injection::identity(frame.b);
    for (auto& tau : frame.self_maps) {
        auto m = compose(psi, tau);
        if (canonical_less(m, best)) {
            best = m;
            best_tau = tau;
        }
    }
    return { best, best_tau };
}

} // namespace

std::optional<OctahedralSolution> octahedral_decomposition(const LabelledComplex& phi, const SymmetricFrame& frame,
    const std::vector<IntVec>& generators, const SymmetricVector& j)
{
    const auto w = frame.width();
    std::map<Injection, std::size_t, CanonicalLess> blocks;
    auto block_of = [&](const Injection& rep) {
        return blocks.try_emplace(rep, blocks.size()).first->second;
    };
    auto octs = octahedra(phi, frame.b);
    struct Column {
        std::size_t oct, gen;
        std::vector<std::pair<std::size_t, IntVec>> parts; // (block, value)
    };
    std::vector<Column> cols;
    const std::uint32_t corners = 1u << frame.b.size();
    for (std::size_t o = 0; o < octs.size(); ++o)
        for (std::size_t g = 0; g < generators.size(); ++g) {
            Column c { o, g, {} };
            for (std::uint32_t mask = 0; mask < corners; ++mask) {
                auto [rep, tau] = self_orbit_rep(octs[o].corner(mask), frame);
                IntVec v = frame.act(generators[g], tau);
                if (std::popcount(mask) % 2)
                    v = negated(v);
                c.parts.emplace_back(block_of(rep), std::move(v));
            }
            cols.push_back(std::move(c));
        }
    // target at representatives
    std::vector<std::pair<std::size_t, IntVec>> target;
    std::set<Injection, CanonicalLess> reps;
    for (auto& [psi, v] : j.entries())
        reps.insert(self_orbit_rep(psi, frame).first);
    for (auto& rep : reps) {
        if (!blocks.count(rep))
            return std::nullopt;
        target.emplace_back(blocks.at(rep), j.get(rep));
    }
    const std::size_t rows = blocks.size() * w;
    if (rows == 0)
        return j.entries().empty() ? std::optional<OctahedralSolution>(OctahedralSolution {}) : std::nullopt;
    std::vector<IntVec> dense;
    for (auto& c : cols) {
        IntVec d(rows);
        for (auto& [blk, v] : c.parts)
            for (std::size_t k = 0; k < w; ++k)
                d[blk * w + k] += v[k];
        dense.push_back(std::move(d));
    }
    IntVec b(rows);
    for (auto& [blk, v] : target)
        for (std::size_t k = 0; k < w; ++k)
            b[blk * w + k] = v[k];
    SpanTester tester(dense, rows);
    auto x = tester.solve(b);
    if (!x)
        return std::nullopt;
    OctahedralSolution sol;
    for (std::size_t i = 0; i < cols.size(); ++i)
        if ((*x)[i] != 0)
            sol.terms.emplace_back(octs[cols[i].oct], cols[i].gen, (*x)[i]);
    return sol;
}

std::vector<SymmetricVector> symmetric_null_basis(
    const LabelledComplex& phi, const SymmetricFrame& frame, const std::vector<IntVec>& generators)
{
    const auto w = frame.width();
    auto level = phi.level(frame.b);
    std::map<Injection, std::size_t, CanonicalLess> rep_index;
    std::vector<std::pair<std::size_t, Injection>> placement; // per map: (rep index, τ with ψτ = rep)
    for (auto& psi : level) {
        auto [rep, tau] = self_orbit_rep(psi, frame);
        auto idx = rep_index.try_emplace(rep, rep_index.size()).first->second;
        placement.emplace_back(idx, tau);
    }
    const std::size_t g = generators.size();
    const std::size_t unknowns = rep_index.size() * g;
    std::map<Injection, std::size_t, CanonicalLess> lower_index;
    for (auto& psi : level)
        for (auto l : frame.b.labels())
            lower_index.try_emplace(psi.restrict(frame.b.without(l)), lower_index.size());
    Matrix m(lower_index.size() * w, unknowns);
    for (std::size_t p = 0; p < level.size(); ++p) {
        auto& [ri, tau] = placement[p];
        auto tau_inv = tau.inverse();
        for (auto l : frame.b.labels()) {
            auto row0 = lower_index.at(level[p].restrict(frame.b.without(l))) * w;
            for (std::size_t k = 0; k < g; ++k) {
                // J_ψ = J_rep τ⁻¹
                auto v = frame.act(generators[k], tau_inv);
                for (std::size_t c = 0; c < w; ++c)
                    m(row0 + c, ri * g + k) += v[c];
            }
        }
    }
    std::vector<SymmetricVector> out;
    for (auto& kv : kernel_basis(m)) {
        SymmetricVector j(w);
        for (std::size_t p = 0; p < level.size(); ++p) {
            auto& [ri, tau] = placement[p];
            auto tau_inv = tau.inverse();
            for (std::size_t k = 0; k < g; ++k)
                if (kv[ri * g + k] != 0)
                    j.add(level[p], frame.act(generators[k], tau_inv), kv[ri * g + k]);
        }
        out.push_back(std::move(j));
    }
    return out;
}

// ------------------------------------------------------------------ lattices

bool lattice_member_Lminus(const VectorSystem& gamma, const EdgeVector& j)
{
    return atom_decomposition(gamma, j).in_span;
}

IntVec sharp_degree(const VectorSystem& gamma, const EdgeVector& j, const Injection& psi_prime)
{
    auto q = subsets_of_size(gamma.labels(), gamma.r());
    const auto d = static_cast<std::size_t>(gamma.dim());
    IntVec out(q.size() * d);
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (!psi_prime.domain().subset_of(q[i]))
            continue;
        for (auto& [psi, v] : j.entries())
            if (psi.domain() == q[i] && psi.extends(psi_prime))
                for (std::size_t k = 0; k < d; ++k)
                    out[i * d + k] += v[k];
    }
    return out;
}

LatticeReport lattice_member_L(const VectorSystem& gamma, const EdgeVector& j, LatticeMethod method)
{
    LatticeReport rep;
    auto derived = derive(gamma, j, method);
    std::set<Injection, CanonicalLess> reps;
    std::unordered_set<Injection> covered;
    for (auto& [psi, v] : derived.target) {
        if (covered.count(psi))
            continue;
        auto o = orbit_of(psi, gamma.group());
        for (auto& m : o.members)
            covered.insert(m);
        reps.insert(o.representative);
    }
    OrbitSpanChecker checker(gamma.group(), derived.family);
    // canonical order is by domain size first, so this runs level by level
    for (auto& r : reps) {
        ++rep.orbits_checked;
        if (!checker.member(r, derived.target)) {
            rep.member = false;
            rep.failure = LatticeFailure { r.size(), orbit_of(r, gamma.group()) };
            return rep;
        }
    }
    return rep;
}

bool lattice_orbit_member(const VectorSystem& gamma, const EdgeVector& j, const Injection& psi_prime, LatticeMethod method)
{
    auto derived = derive(gamma, j, method);
    OrbitSpanChecker checker(gamma.group(), derived.family);
    return checker.member(orbit_representative(psi_prime, gamma.group()), derived.target);
}

OracleReport lattice_member_oracle(
    const VectorSystem& gamma, const LabelledComplex& phi, const EdgeVector& j, std::size_t budget)
{
    OracleReport rep;
    std::map<EdgeVector::Map, std::pair<std::size_t, Injection>, EntriesLess> distinct;
    std::size_t seen = 0;
    for (std::size_t a = 0; a < gamma.family_size(); ++a) {
        phi.for_each_extension(Injection {}, phi.labels(), [&](const Injection& emb) {
            if (++seen > budget)
                throw BudgetExceeded("molecule enumeration exceeded " + std::to_string(budget));
            auto mol = molecule(gamma, phi, a, emb);
            if (!mol.is_zero())
                distinct.try_emplace(mol.entries(), a, emb);
            return true;
        });
    }
    rep.molecules = distinct.size();
    std::map<Injection, std::size_t, CanonicalLess> row_of;
    for (auto& [entries, who] : distinct)
        for (auto& [psi, v] : entries)
            row_of.try_emplace(psi, row_of.size());
    for (auto& [psi, v] : j.entries())
        if (!row_of.count(psi))
            return rep;
    const auto d = static_cast<std::size_t>(gamma.dim());
    const std::size_t rows = row_of.size() * d;
    if (distinct.empty()) {
        rep.member = j.is_zero();
        if (rep.member)
            rep.solution = Selection {};
        return rep;
    }
    std::vector<IntVec> cols;
    std::vector<std::pair<std::size_t, Injection>> who;
    for (auto& [entries, w] : distinct) {
        IntVec c(rows);
        for (auto& [psi, v] : entries)
            for (std::size_t k = 0; k < d; ++k)
                c[row_of.at(psi) * d + k] = v[k];
        cols.push_back(std::move(c));
        who.push_back(w);
    }
    IntVec b(rows);
    for (auto& [psi, v] : j.entries())
        for (std::size_t k = 0; k < d; ++k)
            b[row_of.at(psi) * d + k] = v[k];
    SpanTester tester(cols, rows);
    auto x = tester.solve(b);
    if (!x)
        return rep;
    rep.member = true;
    Selection sel;
    for (std::size_t i = 0; i < x->size(); ++i)
        if ((*x)[i] != 0)
            sel.add(who[i].first, who[i].second, (*x)[i]);
    rep.solution = std::move(sel);
    return rep;
}

std::vector<IntVec> lattice_constant_split(const VectorSystem& gamma, LabelSet b, const IntVec& n)
{
    auto& table = gamma.types(b);
    auto& span = gamma.type_span(b);
    if (n.size() != table.nonzero.size())
        throw PreconditionError("kernel vector must be indexed by the nonzero types");
    IntVec sum(table.pattern_length(gamma.dim()));
    for (std::size_t i = 0; i < n.size(); ++i)
        add_to(sum, table.types[table.nonzero[i]].pattern, n[i]);
    if (!is_zero(sum))
        throw PreconditionError("vector is not in the kernel of the type matrix");
    std::vector<IntVec> out;
    if (is_zero(n))
        return out;
    SpanTester basis(span.kernel, n.size());
    auto c = basis.solve(n);
    if (!c)
        throw PreconditionError("kernel vector not in the span of the kernel basis");
    for (std::size_t i = 0; i < c->size(); ++i) {
        Integer times = abs((*c)[i]);
        IntVec piece = (*c)[i] > 0 ? span.kernel[i] : negated(span.kernel[i]);
        for (Integer t = 0; t < times; ++t)
            out.push_back(piece);
    }
    return out;
}

} // namespace designlat
