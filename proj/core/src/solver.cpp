#include <designlat/errors.hpp>
#include <designlat/solver.hpp>

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

namespace designlat {

std::string to_string(SolveStatus s)
{
    switch (s) {
    case SolveStatus::Solved:
        return "solved";
    case SolveStatus::Unsat:
        return "unsat";
    case SolveStatus::Budget:
        return "budget";
    }
    return "unknown";
}

namespace {

// Atom items (orbit representative, type) hit by molecules, with a cache of
// orbit transports so that Φ_r maps are only canonicalized once.
class AtomIndexer {
public:
    explicit AtomIndexer(const VectorSystem& gamma) : gamma_(gamma) { }

    // Items of γ(φ) for family a; an item is (orbit representative, type index).
    std::vector<std::pair<Injection, std::size_t>> items(std::size_t a, const Injection& phi)
    {
        std::vector<std::pair<Injection, std::size_t>> out;
        for (auto& [fam, theta] : gamma_.nonzero_classes()) {
            if (fam != a)
                continue;
            auto psi = compose(phi, theta);
            auto& [rep, tau_inv] = transport(psi);
            auto& table = gamma_.types(rep.domain());
            auto t = table.type_of(a, compose(theta, tau_inv));
            if (!table.types[t].zero)
                out.emplace_back(rep, t);
        }
        return out;
    }

    // (representative, τ⁻¹) where ψ = representative ∘ τ.
    const std::pair<Injection, Injection>& transport(const Injection& psi)
    {
        auto it = cache_.find(psi);
        if (it != cache_.end())
            return it->second;
        auto rep = orbit_representative(psi, gamma_.group());
        auto tau = relabelling(rep, psi);
        return cache_.emplace(psi, std::make_pair(rep, tau.inverse())).first->second;
    }

private:
    const VectorSystem& gamma_;
    std::unordered_map<Injection, std::pair<Injection, Injection>> cache_;
};

struct CoverModel {
    bool feasible = true;
    std::string reason;
    std::vector<Injection> item_rep;
    std::vector<std::size_t> item_type;
    std::vector<long> demand;
    std::vector<std::vector<std::uint32_t>> mol_items;
    std::vector<std::vector<std::pair<std::size_t, Injection>>> mol_phis;
    std::vector<std::vector<std::uint32_t>> item_mols;
};

CoverModel build_model(const VectorSystem& gamma, const LabelledComplex& phi, const EdgeVector& g)
{
    CoverModel model;
    if (phi.labels() != gamma.labels())
        throw DomainMismatch("complex and vector system use different label sets");
    auto dec = atom_decomposition(gamma, g);
    if (!dec.in_span) {
        model.feasible = false;
        model.reason = "target is not a combination of atoms at orbit " + dec.failing->representative.str();
        return model;
    }
    std::map<std::pair<Injection, std::size_t>, std::uint32_t, std::function<bool(const std::pair<Injection, std::size_t>&, const std::pair<Injection, std::size_t>&)>>
        item_index([](auto& x, auto& y) {
            if (x.first != y.first)
                return canonical_less(x.first, y.first);
            return x.second < y.second;
        });
    for (auto& oc : dec.orbits)
        for (auto& [t, c] : oc.coefficients) {
            if (c < 0) {
                model.feasible = false;
                model.reason = "negative atom coefficient at orbit " + oc.orbit.representative.str();
                return model;
            }
            if (!c.fits_slong_p())
                throw PreconditionError("atom multiplicity too large for exact cover");
            item_index.emplace(std::make_pair(oc.orbit.representative, t), static_cast<std::uint32_t>(model.demand.size()));
            model.item_rep.push_back(oc.orbit.representative);
            model.item_type.push_back(t);
            model.demand.push_back(c.get_si());
        }
    AtomIndexer indexer(gamma);
    std::map<std::vector<std::uint32_t>, std::uint32_t> mol_index;
    for (std::size_t a = 0; a < gamma.family_size(); ++a) {
        phi.for_each_extension(Injection {}, phi.labels(), [&](const Injection& emb) {
            std::vector<std::uint32_t> its;
            for (auto& it : indexer.items(a, emb)) {
                auto f = item_index.find(it);
                if (f == item_index.end())
                    return true;
                its.push_back(f->second);
            }
            if (its.empty())
                return true;
            std::sort(its.begin(), its.end());
            auto [slot, fresh] = mol_index.try_emplace(its, static_cast<std::uint32_t>(model.mol_items.size()));
            if (fresh) {
                model.mol_items.push_back(its);
                model.mol_phis.emplace_back();
            }
            model.mol_phis[slot->second].emplace_back(a, emb);
            return true;
        });
    }
    model.item_mols.resize(model.demand.size());
    for (std::uint32_t m = 0; m < model.mol_items.size(); ++m)
        for (auto i : model.mol_items[m])
            model.item_mols[i].push_back(m);
    for (std::size_t i = 0; i < model.demand.size(); ++i)
        if (model.item_mols[i].empty()) {
            model.feasible = false;
            model.reason = "no admissible molecule covers the atom at " + model.item_rep[i].str();
            break;
        }
    return model;
}

// Incremental exact multiset cover: blockers[m] counts saturated items of m,
// bans, and exhausted multiplicity; active[i] counts unblocked molecules at i.
class CoverSearch {
public:
    CoverSearch(const CoverModel& model, const SearchConfig& cfg, std::uint64_t budget)
        : model_(model)
        , cfg_(cfg)
        , budget_(budget)
        , residual_(model.demand)
        , blockers_(model.mol_items.size(), 0)
        , uses_(model.mol_items.size(), 0)
        , active_(model.demand.size(), 0)
    {
        for (std::size_t i = 0; i < residual_.size(); ++i)
            active_[i] = static_cast<long>(model.item_mols[i].size());
        for (std::uint32_t m = 0; m < model.mol_items.size(); ++m)
            for (auto i : model.mol_items[m])
                if (residual_[i] == 0)
                    block(m);
        if (cfg.time_limit_seconds > 0)
            deadline_ = std::chrono::steady_clock::now()
                + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(cfg.time_limit_seconds));
    }

    enum class Outcome { Found, Exhausted, OutOfBudget };

    Outcome solve()
    {
        counting_ = false;
        return dfs();
    }

    Outcome count()
    {
        counting_ = true;
        return dfs();
    }

    const Integer& solutions() const { return count_; }
    std::uint64_t nodes() const { return nodes_; }
    const std::vector<std::uint32_t>& chosen() const { return chosen_; }

    // Root branching data, for parallel or pruned splitting.
    std::optional<std::uint32_t> branch_item() const
    {
        std::optional<std::uint32_t> best;
        for (std::uint32_t i = 0; i < residual_.size(); ++i) {
            if (residual_[i] <= 0)
                continue;
            if (!best || (cfg_.heuristic != "first" && active_[i] < active_[*best]))
                best = i;
            if (cfg_.heuristic == "first")
                break;
        }
        return best;
    }
    std::vector<std::uint32_t> candidates(std::uint32_t item) const
    {
        std::vector<std::uint32_t> out;
        for (auto m : model_.item_mols[item])
            if (blockers_[m] == 0)
                out.push_back(m);
        return out;
    }
    void choose(std::uint32_t m)
    {
        chosen_.push_back(m);
        if (++uses_[m] == static_cast<long>(model_.mol_phis[m].size()))
            block(m);
        for (auto i : model_.mol_items[m])
            if (--residual_[i] == 0)
                for (auto m2 : model_.item_mols[i])
                    block(m2);
    }
    void unchoose(std::uint32_t m)
    {
        for (auto it = model_.mol_items[m].rbegin(); it != model_.mol_items[m].rend(); ++it) {
            auto i = *it;
            if (residual_[i]++ == 0)
                for (auto m2 : model_.item_mols[i])
                    unblock(m2);
        }
        if (uses_[m]-- == static_cast<long>(model_.mol_phis[m].size()))
            unblock(m);
        chosen_.pop_back();
    }
    void ban(std::uint32_t m) { block(m); }
    void unban(std::uint32_t m) { unblock(m); }

private:
    void block(std::uint32_t m)
    {
        if (blockers_[m]++ == 0)
            for (auto i : model_.mol_items[m])
                --active_[i];
    }
    void unblock(std::uint32_t m)
    {
        if (--blockers_[m] == 0)
            for (auto i : model_.mol_items[m])
                ++active_[i];
    }

    Outcome dfs()
    {
        if (++nodes_ > budget_)
            return Outcome::OutOfBudget;
        if (deadline_ && (nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > *deadline_)
            return Outcome::OutOfBudget;
        auto item = branch_item();
        if (!item) {
            count_ += 1;
            return counting_ ? Outcome::Exhausted : Outcome::Found;
        }
        if (active_[*item] == 0)
            return Outcome::Exhausted;
        auto cands = candidates(*item);
        Outcome result = Outcome::Exhausted;
        std::size_t banned = 0;
        for (auto m : cands) {
            choose(m);
            auto r = dfs();
            if (r == Outcome::Found)
                return r; // leave the chosen stack in place
            unchoose(m);
            if (r == Outcome::OutOfBudget) {
                result = r;
                break;
            }
            ban(m);
            ++banned;
        }
        for (std::size_t k = 0; k < banned; ++k)
            unban(cands[k]);
        return result;
    }

    const CoverModel& model_;
    const SearchConfig& cfg_;
    std::uint64_t budget_;
    std::vector<long> residual_;
    std::vector<long> blockers_;
    std::vector<long> uses_;
    std::vector<long> active_;
    std::vector<std::uint32_t> chosen_;
    std::uint64_t nodes_ = 0;
    Integer count_ = 0;
    bool counting_ = false;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
};

Selection to_selection(const CoverModel& model, const std::vector<std::uint32_t>& chosen)
{
    Selection sel;
    std::map<std::uint32_t, std::size_t> used;
    for (auto m : chosen) {
        auto k = used[m]++;
        auto& [a, phi] = model.mol_phis[m][k];
        sel.add(a, phi, 1);
    }
    return sel;
}

// Vertex relabellings that preserve Φ, G and the family are available when Φ is
// complete or partite and G is constant on every Φ_B.
struct SymmetryInfo {
    bool usable = false;
    std::vector<int> part_of_vertex;
};

SymmetryInfo symmetry_info(const LabelledComplex& phi, const EdgeVector& g, int r)
{
    SymmetryInfo info;
    auto d = phi.describe();
    if (!d.contains("generator"))
        return info;
    auto kind = d["generator"].value("kind", "");
    info.part_of_vertex.assign(phi.vertex_count(), 0);
    if (kind == "partite") {
        auto& parts = d["generator"]["vertex_parts"];
        for (std::size_t k = 0; k < parts.size(); ++k)
            for (auto& v : parts[k])
                info.part_of_vertex.at(v.get<std::size_t>()) = static_cast<int>(k) + 1;
    } else if (kind != "complete") {
        return info;
    }
    std::map<std::uint32_t, std::pair<std::size_t, IntVec>, std::less<>> per_set;
    for (auto& [psi, v] : g.entries()) {
        auto [it, fresh] = per_set.try_emplace(psi.domain().bits(), 0, v);
        if (it->second.second != v)
            return info;
        ++it->second.first;
    }
    for (auto& [bits, cv] : per_set)
        if (cv.first != phi.level_size(LabelSet(bits)))
            return info;
    (void)r;
    info.usable = true;
    return info;
}

std::vector<std::int64_t> canonical_form(
    const SymmetryInfo& info, std::size_t family, const Injection& phi, const std::vector<Vertex>& fixed)
{
    std::vector<std::int64_t> out { static_cast<std::int64_t>(family) };
    std::map<Vertex, std::int64_t> ordinal;
    std::map<int, std::int64_t> next_in_part;
    for (auto v : phi.image_sequence()) {
        if (std::find(fixed.begin(), fixed.end(), v) != fixed.end()) {
            out.push_back(-1 - static_cast<std::int64_t>(v));
            continue;
        }
        auto part = info.part_of_vertex[v];
        auto [it, fresh] = ordinal.try_emplace(v, next_in_part[part]);
        if (fresh)
            ++next_in_part[part];
        out.push_back(static_cast<std::int64_t>(part) * 65536 + it->second);
    }
    return out;
}

struct BranchResult {
    CoverSearch::Outcome outcome = CoverSearch::Outcome::Exhausted;
    std::vector<std::uint32_t> chosen;
    Integer count = 0;
    std::uint64_t nodes = 0;
    bool skipped = false;
};

} // namespace

SolveResult solve_exact(const VectorSystem& gamma, const LabelledComplex& phi, const EdgeVector& g, const SearchConfig& cfg)
{
    SolveResult res;
    if (!gamma.elementary())
        throw PreconditionError("exact cover search requires an elementary vector system");
    if (cfg.node_budget == 0)
        throw PreconditionError("node budget must be positive");
    if (cfg.lattice_precheck) {
        auto lat = lattice_member_L(gamma, g, LatticeMethod::Sharp);
        if (!lat.member) {
            res.status = SolveStatus::Unsat;
            res.stats.precheck_rejected = true;
            res.reason = "target fails the lattice degree conditions at level " + std::to_string(lat.failure->level)
                + " orbit " + lat.failure->orbit.representative.str();
            return res;
        }
    }
    auto model = build_model(gamma, phi, g);
    res.stats.items = model.demand.size();
    res.stats.candidates = model.mol_items.size();
    if (!model.feasible) {
        res.status = SolveStatus::Unsat;
        res.reason = model.reason;
        return res;
    }
    if (cfg.seed != 0) {
        Rng rng(cfg.seed);
        for (auto& list : model.item_mols)
            rng.shuffle(list);
    }
    CoverSearch root(model, cfg, cfg.node_budget);
    auto item = root.branch_item();
    if (!item) {
        res.status = SolveStatus::Solved;
        res.selection = Selection {};
        return res;
    }
    auto cands = root.candidates(*item);
    auto info = cfg.symmetry_pruning ? symmetry_info(phi, g, gamma.r()) : SymmetryInfo {};
    auto fixed = model.item_rep[*item].image_sequence();
    const bool parallel = cfg.threads > 1;

    std::vector<BranchResult> results(cands.size());
    std::vector<std::vector<std::int64_t>> forms(cands.size());
    if (info.usable)
        for (std::size_t k = 0; k < cands.size(); ++k) {
            auto& [a, rep_phi] = model.mol_phis[cands[k]].front();
            forms[k] = canonical_form(info, a, rep_phi, fixed);
        }

    auto run_branch = [&](std::size_t k, std::uint64_t budget) {
        CoverSearch s(model, cfg, budget);
        for (std::size_t j = 0; j < k; ++j)
            s.ban(cands[j]);
        s.choose(cands[k]);
        BranchResult br;
        br.outcome = s.solve();
        br.nodes = s.nodes() + 1;
        if (br.outcome == CoverSearch::Outcome::Found)
            br.chosen = s.chosen();
        return br;
    };

    std::uint64_t total_nodes = 1;
    if (!parallel) {
        std::uint64_t remaining = cfg.node_budget - 1;
        std::set<std::vector<std::int64_t>> failed_forms;
        bool out_of_budget = false;
        for (std::size_t k = 0; k < cands.size(); ++k) {
            if (info.usable && failed_forms.count(forms[k]))
                continue;
            if (remaining == 0) {
                out_of_budget = true;
                break;
            }
            auto br = run_branch(k, remaining);
            total_nodes += br.nodes;
            remaining = br.nodes >= remaining ? 0 : remaining - br.nodes;
            if (br.outcome == CoverSearch::Outcome::Found) {
                res.status = SolveStatus::Solved;
                res.selection = to_selection(model, br.chosen);
                res.stats.nodes = total_nodes;
                return res;
            }
            if (br.outcome == CoverSearch::Outcome::OutOfBudget) {
                out_of_budget = true;
                break;
            }
            if (info.usable)
                failed_forms.insert(forms[k]);
        }
        res.stats.nodes = total_nodes;
        res.status = out_of_budget ? SolveStatus::Budget : SolveStatus::Unsat;
        return res;
    }

    // Root split: every branch gets the full node budget; the lowest-index
    // branch with a solution wins.
    std::atomic<std::size_t> next { 0 };
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < cfg.threads; ++w)
        workers.emplace_back([&] {
            while (true) {
                auto k = next.fetch_add(1);
                if (k >= cands.size())
                    return;
                bool dup = false;
                if (info.usable)
                    for (std::size_t j = 0; j < k; ++j)
                        if (forms[j] == forms[k])
                            dup = true;
                if (dup) {
                    results[k].skipped = true;
                    continue;
                }
                results[k] = run_branch(k, cfg.node_budget);
            }
        });
    for (auto& t : workers)
        t.join();
    bool budget = false;
    for (auto& br : results)
        total_nodes += br.nodes;
    res.stats.nodes = total_nodes;
    for (std::size_t k = 0; k < results.size(); ++k) {
        if (results[k].outcome == CoverSearch::Outcome::Found) {
            res.status = SolveStatus::Solved;
            res.selection = to_selection(model, results[k].chosen);
            return res;
        }
        if (results[k].outcome == CoverSearch::Outcome::OutOfBudget)
            budget = true;
    }
    // a skipped duplicate is only sound if its twin was fully refuted
    res.status = budget ? SolveStatus::Budget : SolveStatus::Unsat;
    return res;
}

CountResult count_exact(const VectorSystem& gamma, const LabelledComplex& phi, const EdgeVector& g, const SearchConfig& cfg)
{
    CountResult res;
    if (!gamma.elementary())
        throw PreconditionError("exact cover search requires an elementary vector system");
    auto model = build_model(gamma, phi, g);
    res.stats.items = model.demand.size();
    res.stats.candidates = model.mol_items.size();
    if (!model.feasible) {
        res.status = SolveStatus::Solved;
        res.count = 0;
        return res;
    }
    CoverSearch s(model, cfg, cfg.node_budget);
    auto outcome = s.count();
    res.count = s.solutions();
    res.stats.nodes = s.nodes();
    res.status = outcome == CoverSearch::Outcome::OutOfBudget ? SolveStatus::Budget : SolveStatus::Solved;
    return res;
}

IntegralResult solve_integral(const VectorSystem& gamma, const LabelledComplex& phi, const EdgeVector& j, const SearchConfig& cfg)
{
    IntegralResult res;
    try {
        auto rep = lattice_member_oracle(gamma, phi, j, static_cast<std::size_t>(cfg.node_budget));
        res.molecules = rep.molecules;
        if (rep.member) {
            res.status = SolveStatus::Solved;
            res.selection = rep.solution;
        }
    } catch (const BudgetExceeded&) {
        res.status = SolveStatus::Budget;
    }
    return res;
}

VerifyReport verify(const VectorSystem& gamma, const LabelledComplex& phi, const Selection& psi, const EdgeVector& g,
    VerifyMode mode)
{
    VerifyReport rep;
    for (auto& [key, c] : psi.entries()) {
        if (key.family >= gamma.family_size() || key.map.domain() != phi.labels() || !key.map.is_injective()
            || !phi.contains(key.map)) {
            rep.ok = false;
            rep.invalid_key = true;
            rep.detail = "selection key " + key.map.str() + " is not an embedding into the complex";
            return rep;
        }
        if (mode == VerifyMode::Set && c != 1) {
            rep.ok = false;
            rep.mode_violation = true;
            rep.detail = "coefficient " + to_string(c) + " at " + key.map.str() + " is not 0/1";
        }
    }
    EdgeVector bd(gamma.dim());
    try {
        bd = boundary(gamma, phi, psi);
    } catch (const Error& e) {
        rep.ok = false;
        rep.invalid_key = true;
        rep.detail = e.what();
        return rep;
    }
    std::set<Injection, CanonicalLess> keys;
    for (auto& [k, v] : bd.entries())
        keys.insert(k);
    for (auto& [k, v] : g.entries())
        keys.insert(k);
    for (auto& k : keys) {
        auto a = bd.get(k);
        auto e = g.get(k);
        for (std::size_t d = 0; d < a.size(); ++d)
            if (a[d] != e[d]) {
                ++rep.mismatches;
                if (rep.diff.size() < 20)
                    rep.diff.push_back({ k, static_cast<int>(d), e[d], a[d] });
            }
    }
    if (rep.mismatches > 0) {
        rep.ok = false;
        if (rep.detail.empty())
            rep.detail = std::to_string(rep.mismatches) + " coordinates differ from the target";
    }
    if (mode == VerifyMode::Set && rep.ok && gamma.elementary()) {
        // every molecule must sit below G in the atom order
        auto dec = atom_decomposition(gamma, g);
        std::map<std::pair<Injection, std::size_t>, Integer,
            std::function<bool(const std::pair<Injection, std::size_t>&, const std::pair<Injection, std::size_t>&)>>
            have([](auto& x, auto& y) {
                if (x.first != y.first)
                    return canonical_less(x.first, y.first);
                return x.second < y.second;
            });
        for (auto& oc : dec.orbits)
            for (auto& [t, c] : oc.coefficients)
                have[{ oc.orbit.representative, t }] = c;
        AtomIndexer indexer(gamma);
        for (auto& [key, c] : psi.entries())
            for (auto& it : indexer.items(key.family, key.map)) {
                auto f = have.find(it);
                if (f == have.end() || f->second < 1) {
                    rep.ok = false;
                    rep.invalid_key = true;
                    rep.detail = "molecule at " + key.map.str() + " is not below the target";
                    return rep;
                }
            }
    }
    return rep;
}

GreedyTrace nibble_greedy(const VectorSystem& gamma, const LabelledComplex& phi, const EdgeVector& g, std::uint64_t seed,
    const NibblePolicy& policy)
{
    GreedyTrace trace;
    trace.leave = g;
    trace.target_support = g.support_size();
    trace.leave_support = g.support_size();
    if (g.is_zero())
        return trace;
    if (!gamma.elementary())
        throw PreconditionError("the greedy simulator requires an elementary vector system");
    auto model = build_model(gamma, phi, g);
    if (!model.feasible && model.demand.empty())
        throw PreconditionError(model.reason);
    std::vector<long> residual = model.demand;
    for (auto d : residual)
        trace.target_atoms += static_cast<std::size_t>(d);
    const std::size_t nm = model.mol_items.size();
    std::vector<long> uses(nm, 0);
    std::vector<double> weight(nm, 1.0);
    double wmax = 1.0;
    if (policy.weight) {
        wmax = 0;
        for (std::size_t m = 0; m < nm; ++m) {
            auto& [a, p] = model.mol_phis[m].front();
            weight[m] = std::max(0.0, policy.weight(a, p));
            wmax = std::max(wmax, weight[m]);
        }
    }
    // active list with positions, kept in sync with admissibility
    std::vector<std::uint32_t> active;
    std::vector<std::ptrdiff_t> pos(nm, -1);
    auto admissible = [&](std::uint32_t m) {
        if (uses[m] >= static_cast<long>(model.mol_phis[m].size()) || weight[m] <= 0)
            return false;
        for (auto i : model.mol_items[m])
            if (residual[i] < 1)
                return false;
        return true;
    };
    auto refresh = [&](std::uint32_t m) {
        bool ok = admissible(m);
        if (ok && pos[m] < 0) {
            pos[m] = static_cast<std::ptrdiff_t>(active.size());
            active.push_back(m);
        } else if (!ok && pos[m] >= 0) {
            auto last = active.back();
            active[static_cast<std::size_t>(pos[m])] = last;
            pos[last] = pos[m];
            active.pop_back();
            pos[m] = -1;
        }
    };
    for (std::uint32_t m = 0; m < nm; ++m)
        refresh(m);
    Rng rng(seed);
    Selection chosen_sel;
    while (!active.empty()) {
        std::uint32_t m;
        while (true) {
            m = active[rng.below(active.size())];
            if (!policy.weight)
                break;
            // accept with probability weight/wmax
            if (static_cast<double>(rng.below(1u << 30)) < weight[m] / wmax * static_cast<double>(1u << 30))
                break;
        }
        auto& [a, p] = model.mol_phis[m][static_cast<std::size_t>(uses[m])];
        trace.chosen.emplace_back(a, p);
        chosen_sel.add(a, p, 1);
        ++uses[m];
        for (auto i : model.mol_items[m]) {
            if (--residual[i] < 0)
                trace.residual_nonnegative = false;
        }
        refresh(m);
        for (auto i : model.mol_items[m])
            if (residual[i] == 0)
                for (auto m2 : model.item_mols[i])
                    refresh(m2);
    }
    // fixpoint certificate, recomputed from scratch
    for (std::uint32_t m = 0; m < nm; ++m)
        if (admissible(m))
            trace.fixpoint = false;
    trace.leave = g - boundary(gamma, phi, chosen_sel);
    trace.leave_support = trace.leave.support_size();
    std::map<Injection, Integer, CanonicalLess> lower_use;
    for (std::size_t i = 0; i < residual.size(); ++i) {
        trace.leave_atoms += static_cast<std::size_t>(std::max(0L, residual[i]));
        if (residual[i] <= 0)
            continue;
        for (auto& member : orbit_of(model.item_rep[i], gamma.group()).members)
            for (auto l : member.domain().labels())
                lower_use[member.restrict(member.domain().without(l))] += residual[i];
    }
    Integer best = 0;
    for (auto& [lower, u] : lower_use) {
        ++trace.use_histogram[u];
        best = std::max(best, u);
    }
    trace.max_use_ratio = Rational(best) / Rational(static_cast<long>(phi.vertex_count()));
    return trace;
}

} // namespace designlat
