#include <designlat/applications.hpp>
#include <designlat/builtins.hpp>
#include <designlat/errors.hpp>
#include <designlat/io.hpp>
#include <designlat/lattice.hpp>
#include <designlat/solver.hpp>

#include "CLI11.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace designlat;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kBudget = 2, kInput = 3 };

struct Common {
    std::string budget;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string out;
    std::string format = "json";
    std::string builtin;
    std::string problem;
};

// Accepts plain integers, "10^6" and "1e6".
std::uint64_t parse_budget(const std::string& s)
{
    auto fail = [&] { return InputError("bad budget: " + s); };
    try {
        if (auto p = s.find('^'); p != std::string::npos) {
            auto base = std::stoull(s.substr(0, p));
            auto exp = std::stoull(s.substr(p + 1));
            std::uint64_t v = 1;
            for (std::uint64_t i = 0; i < exp; ++i) {
                if (v > UINT64_MAX / std::max<std::uint64_t>(base, 1))
                    throw fail();
                v *= base;
            }
            return v;
        }
        if (s.find_first_of("eE") != std::string::npos) {
            double d = std::stod(s);
            if (!(d >= 0) || d > 1.8e19)
                throw fail();
            return static_cast<std::uint64_t>(std::llround(d));
        }
        std::size_t used = 0;
        auto v = std::stoull(s, &used);
        if (used != s.size())
            throw fail();
        return v;
    } catch (const std::logic_error&) {
        throw fail();
    }
}

std::uint64_t budget_of(const Common& c, std::uint64_t fallback)
{
    if (!c.budget.empty())
        return parse_budget(c.budget);
    if (const char* env = std::getenv("DESIGNLAT_BUDGET"); env && *env)
        return parse_budget(env);
    return fallback;
}

void render_text(const json& j, const std::string& prefix, std::ostream& os)
{
    if (j.is_object() && !j.empty()) {
        for (auto& [k, v] : j.items())
            render_text(v, prefix.empty() ? k : prefix + "." + k, os);
        return;
    }
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

void emit(const Common& c, const json& report)
{
    std::string text;
    if (c.format == "text") {
        std::ostringstream os;
        render_text(report, "", os);
        text = os.str();
    } else {
        text = report.dump(2) + "\n";
    }
    if (c.out.empty())
        std::cout << text;
    else
        write_text_file(c.out, text);
}

ProblemInstance load_instance(const Common& c)
{
    if (!c.builtin.empty() && !c.problem.empty())
        throw InputError("give either --builtin or --problem, not both");
    if (!c.builtin.empty())
        return build_builtin(c.builtin);
    if (!c.problem.empty())
        return problem_from_json(read_json_file(c.problem));
    throw InputError("an instance is required (--builtin NAME or --problem FILE)");
}

json report_json(const DivisibilityReport& r)
{
    json j = { { "divisible", r.divisible } };
    if (!r.divisible) {
        j["level"] = r.level;
        j["witness"] = r.witness;
    }
    if (!r.detail.empty())
        j["detail"] = r.detail;
    return j;
}

json stats_json(const SearchStats& s)
{
    return { { "nodes", s.nodes }, { "items", s.items }, { "candidates", s.candidates },
        { "precheck_rejected", s.precheck_rejected } };
}

json orbit_json(const Orbit& o, int level)
{
    return { { "level", level }, { "representative", injection_to_json(o.representative) },
        { "image", o.image }, { "size", o.members.size() } };
}

SearchConfig search_config(const Common& c, std::uint64_t budget)
{
    SearchConfig cfg;
    cfg.node_budget = budget;
    cfg.seed = c.seed; // 0 keeps the canonical candidate order
    cfg.threads = std::max(1u, c.threads);
    return cfg;
}

json certificate(const ProblemInstance& inst, const Selection& s, const std::string& mode)
{
    return { { "format_version", kFormatVersion }, { "kind", "certificate" }, { "mode", mode },
        { "problem", problem_to_json(inst) }, { "selection", selection_to_json(s, inst.gamma) } };
}

// ---- verbs ----

int cmd_build(const Common& c, const std::vector<long>& design, long tryst, long latin, long sudoku,
    const std::vector<long>& rainbow, const std::string& mode, bool list)
{
    if (list) {
        json arr = json::array();
        for (auto& b : builtin_instances())
            arr.push_back({ { "name", b.name }, { "description", b.description } });
        emit(c, { { "format_version", kFormatVersion }, { "builtins", arr } });
        return kOk;
    }
    std::optional<ProblemInstance> inst;
    int chosen = 0;
    if (!c.builtin.empty())
        ++chosen, inst = build_builtin(c.builtin);
    if (!design.empty()) {
        ++chosen;
        inst = build_nonpartite(Hypergraph::complete(design[1], static_cast<int>(design[2])),
            Hypergraph::complete(design[0], static_cast<int>(design[2]), Integer(design[3])));
    }
    if (tryst > 0)
        ++chosen, inst = build_tryst(tryst);
    if (latin > 0)
        ++chosen, inst = build_latin(latin);
    if (sudoku > 0)
        ++chosen, inst = build_sudoku(sudoku);
    if (!rainbow.empty()) {
        ++chosen;
        inst = build_rainbow(static_cast<int>(rainbow[0]), static_cast<int>(rainbow[1]), rainbow[2],
            mode == "all" ? RainbowMode::All : RainbowMode::Fixed);
    }
    if (chosen != 1)
        throw InputError("build needs exactly one recipe");
    emit(c, problem_to_json(*inst));
    std::cerr << "built instance with " << inst->target.support_size() << " target entries on "
              << inst->phi.vertex_count() << " vertices\n";
    return kOk;
}

int cmd_check_divisible(const Common& c, const std::vector<long>& design, const std::vector<long>& resolvable,
    const std::vector<long>& large, const std::vector<long>& complete, const std::vector<long>& rainbow,
    const std::string& mode)
{
    json rep = { { "format_version", kFormatVersion } };
    std::optional<DivisibilityReport> r;
    if (!design.empty()) {
        const long n = design[0], q = design[1], k = design[2];
        if (k < 1 || q < k || n < 0 || design[3] < 1)
            throw InputError("--design expects n q r lambda with 1 <= r <= q and lambda >= 1");
        r = check_H_divisible(Hypergraph::complete(q, static_cast<int>(k)),
            Hypergraph::complete(n, static_cast<int>(k), Integer(design[3])));
        rep["check"] = "design";
    } else if (!resolvable.empty()) {
        r = resolvable_conditions(resolvable[0], static_cast<int>(resolvable[1]), static_cast<int>(resolvable[2]),
            Integer(resolvable[3]));
        rep["check"] = "resolvable";
    } else if (!large.empty()) {
        r = large_set_conditions(large[0], static_cast<int>(large[1]), static_cast<int>(large[2]), Integer(large[3]));
        rep["check"] = "large-set";
    } else if (!complete.empty()) {
        r = complete_resolution_conditions(complete[0], static_cast<int>(complete[1]));
        rep["check"] = "complete-resolution";
    } else if (!rainbow.empty()) {
        r = rainbow_divisible(static_cast<int>(rainbow[0]), static_cast<int>(rainbow[1]), rainbow[2],
            mode == "all" ? RainbowMode::All : RainbowMode::Fixed);
        rep["check"] = "rainbow-" + mode;
    } else {
        throw InputError("check-divisible needs one of --design, --resolvable, --large-set, --complete-resolution, --rainbow");
    }
    rep.update(report_json(*r));
    emit(c, rep);
    std::cerr << (r->divisible ? "divisible" : "not divisible") << '\n';
    return r->divisible ? kOk : kNegative;
}

int cmd_lattice_member(const Common& c, const std::string& method)
{
    auto inst = load_instance(c);
    json rep = { { "format_version", kFormatVersion }, { "method", method } };
    bool member;
    if (method == "oracle") {
        auto o = lattice_member_oracle(inst.gamma, inst.phi, inst.target, budget_of(c, 200000));
        member = o.member;
        rep["molecules"] = o.molecules;
    } else if (method == "sharp" || method == "shadow") {
        auto r = lattice_member_L(inst.gamma, inst.target, method == "sharp" ? LatticeMethod::Sharp : LatticeMethod::Shadow);
        member = r.member;
        rep["orbits_checked"] = r.orbits_checked;
        if (r.failure)
            rep["failing_orbit"] = orbit_json(r.failure->orbit, r.failure->level);
    } else {
        throw InputError("unknown method: " + method);
    }
    rep["member"] = member;
    if (inst.provenance.value("builder", "") == "twisted-octahedron") {
        auto t = build_twisted_octahedron(inst.provenance.value("seed", std::uint64_t(1)));
        auto f = twisted_invariant(t, inst.target);
        rep["invariant"] = intvec_to_json(f);
        rep["invariant_admissible"] = twisted_invariant_admissible(f);
        bool vnull = true;
        for (int i = 0; i < inst.gamma.r(); ++i)
            vnull = vnull && vertex_null_check(inst.target, i);
        rep["null_vertex_sets"] = vnull;
        rep["null_labelled"] = null_check(inst.target, inst.gamma.r() - 1);
    }
    emit(c, rep);
    std::cerr << (member ? "member" : "not a member") << " (" << method << ")\n";
    return member ? kOk : kNegative;
}

int cmd_oracle(const Common& c)
{
    auto inst = load_instance(c);
    auto o = lattice_member_oracle(inst.gamma, inst.phi, inst.target, budget_of(c, 200000));
    json rep = { { "format_version", kFormatVersion }, { "member", o.member }, { "molecules", o.molecules } };
    if (o.solution)
        rep["combination"] = selection_to_json(*o.solution, inst.gamma);
    emit(c, rep);
    std::cerr << (o.member ? "member" : "not a member") << " of the molecule span (" << o.molecules
              << " molecules)\n";
    return o.member ? kOk : kNegative;
}

int cmd_solve(const Common& c, bool count, bool symmetry, const std::string& heuristic)
{
    auto inst = load_instance(c);
    auto cfg = search_config(c, budget_of(c, 10'000'000));
    cfg.symmetry_pruning = symmetry;
    cfg.heuristic = heuristic;
    if (count) {
        auto r = count_exact(inst.gamma, inst.phi, inst.target, cfg);
        json rep = { { "format_version", kFormatVersion }, { "status", to_string(r.status) },
            { "count", integer_to_json(r.count) }, { "stats", stats_json(r.stats) } };
        emit(c, rep);
        std::cerr << to_string(r.status) << ": " << r.count << " decompositions, " << r.stats.nodes << " nodes\n";
        return r.status == SolveStatus::Solved ? kOk : kBudget;
    }
    auto r = solve_exact(inst.gamma, inst.phi, inst.target, cfg);
    json rep;
    if (r.selection)
        rep = certificate(inst, *r.selection, "set");
    else
        rep = { { "format_version", kFormatVersion }, { "kind", "report" } };
    rep["status"] = to_string(r.status);
    rep["stats"] = stats_json(r.stats);
    if (!r.reason.empty())
        rep["reason"] = r.reason;
    emit(c, rep);
    std::cerr << to_string(r.status);
    if (r.selection)
        std::cerr << ": " << r.selection->size() << " molecules";
    std::cerr << ", " << r.stats.nodes << " nodes\n";
    switch (r.status) {
    case SolveStatus::Solved: return kOk;
    case SolveStatus::Unsat: return kNegative;
    default: return kBudget;
    }
}

int cmd_solve_integral(const Common& c)
{
    auto inst = load_instance(c);
    auto r = solve_integral(inst.gamma, inst.phi, inst.target, search_config(c, budget_of(c, 200000)));
    json rep;
    if (r.selection)
        rep = certificate(inst, *r.selection, "integral");
    else
        rep = { { "format_version", kFormatVersion }, { "kind", "report" } };
    rep["status"] = to_string(r.status);
    rep["molecules"] = r.molecules;
    emit(c, rep);
    std::cerr << to_string(r.status) << " (" << r.molecules << " molecules enumerated)\n";
    switch (r.status) {
    case SolveStatus::Solved: return kOk;
    case SolveStatus::Unsat: return kNegative;
    default: return kBudget;
    }
}

int cmd_verify(const Common& c, const std::string& cert_path, std::string mode)
{
    if (cert_path.empty())
        throw InputError("--certificate is required");
    auto cert = read_json_file(cert_path);
    if (!cert.is_object() || cert.value("format_version", 0) != kFormatVersion)
        throw InputError(cert_path + ": not a version " + std::to_string(kFormatVersion) + " certificate");
    ProblemInstance inst = (!c.builtin.empty() || !c.problem.empty()) ? load_instance(c) : [&] {
        if (!cert.contains("problem"))
            throw InputError(cert_path + ": certificate has no embedded problem; pass --builtin or --problem");
        return problem_from_json(cert["problem"]);
    }();
    if (!cert.contains("selection"))
        throw InputError(cert_path + ": no selection");
    if (mode.empty())
        mode = cert.value("mode", "set");
    if (mode != "set" && mode != "integral")
        throw InputError("unknown mode: " + mode);
    auto sel = selection_from_json(cert["selection"], inst.gamma);
    auto r = verify(inst.gamma, inst.phi, sel, inst.target, mode == "set" ? VerifyMode::Set : VerifyMode::Integral);
    json diff = json::array();
    for (auto& m : r.diff)
        diff.push_back({ { "map", injection_to_json(m.map) }, { "colour", m.colour },
            { "expected", integer_to_json(m.expected) }, { "actual", integer_to_json(m.actual) } });
    json rep = { { "format_version", kFormatVersion }, { "ok", r.ok }, { "mode", mode }, { "mismatches", r.mismatches },
        { "mode_violation", r.mode_violation }, { "invalid_key", r.invalid_key }, { "diff", diff } };
    if (!r.detail.empty())
        rep["detail"] = r.detail;
    emit(c, rep);
    std::cerr << (r.ok ? "certificate verified" : "certificate rejected: " + r.detail) << '\n';
    return r.ok ? kOk : kNegative;
}

int cmd_nibble(const Common& c, long complete_n, long runs)
{
    ProblemInstance inst = complete_n > 0
        ? build_nonpartite(Hypergraph::complete(3, 2), Hypergraph::complete(complete_n, 2))
        : load_instance(c);
    if (runs < 1)
        throw InputError("--runs must be positive");
    json traces = json::array();
    double sum = 0, lo = 1, hi = 0;
    bool nonneg = true, fixpoint = true;
    for (long k = 0; k < runs; ++k) {
        auto t = nibble_greedy(inst.gamma, inst.phi, inst.target, c.seed + static_cast<std::uint64_t>(k));
        double frac = t.target_support ? static_cast<double>(t.leave_support) / static_cast<double>(t.target_support) : 0;
        sum += frac;
        lo = std::min(lo, frac);
        hi = std::max(hi, frac);
        nonneg = nonneg && t.residual_nonnegative;
        fixpoint = fixpoint && t.fixpoint;
        json hist = json::object();
        for (auto& [u, cnt] : t.use_histogram)
            hist[to_string(u)] = cnt;
        traces.push_back({ { "seed", c.seed + static_cast<std::uint64_t>(k) }, { "chosen", t.chosen.size() },
            { "leave_support", t.leave_support }, { "target_support", t.target_support },
            { "max_use_ratio", to_string(t.max_use_ratio) }, { "use_histogram", hist } });
    }
    json rep = { { "format_version", kFormatVersion }, { "runs", runs }, { "mean_leave_fraction", sum / runs },
        { "min_leave_fraction", lo }, { "max_leave_fraction", hi }, { "residual_nonnegative", nonneg },
        { "fixpoint", fixpoint }, { "traces", traces } };
    emit(c, rep);
    std::cerr << runs << " runs, mean leave fraction " << sum / runs << '\n';
    return nonneg && fixpoint ? kOk : kNegative;
}

int cmd_reduce(const Common& c, const std::vector<long>& resolvable, const std::vector<long>& large,
    const std::vector<long>& complete, bool solve)
{
    std::optional<Reduction> red;
    std::optional<Hypergraph> g;
    long n = 0, q = 0, r = 0;
    Integer lambda = 1;
    if (!resolvable.empty()) {
        n = resolvable[0], q = resolvable[1], r = resolvable[2], lambda = resolvable[3];
        g = Hypergraph::complete(n, static_cast<int>(r), lambda);
        red = reduce_resolvable(Hypergraph::complete(q, static_cast<int>(r)), *g, c.seed);
    } else if (!large.empty()) {
        n = large[0], q = large[1], r = large[2], lambda = large[3];
        red = reduce_large_set(static_cast<int>(q), static_cast<int>(r), lambda, n, std::nullopt, c.seed);
    } else if (!complete.empty()) {
        n = complete[0], q = complete[1];
        red = reduce_complete_resolution(static_cast<int>(q), n);
    } else {
        throw InputError("reduce needs one of --resolvable, --large-set, --complete-resolution");
    }
    if (!solve) {
        emit(c, problem_to_json(red->instance));
        std::cerr << "reduced instance on " << red->instance.phi.vertex_count() << " vertices\n";
        return kOk;
    }
    auto& inst = red->instance;
    auto res = solve_exact(inst.gamma, inst.phi, inst.target, search_config(c, budget_of(c, 10'000'000)));
    json rep = { { "format_version", kFormatVersion }, { "status", to_string(res.status) },
        { "stats", stats_json(res.stats) } };
    if (!res.selection) {
        emit(c, rep);
        std::cerr << to_string(res.status) << '\n';
        return res.status == SolveStatus::Unsat ? kNegative : kBudget;
    }
    rep["decoded"] = decode(red->decoder, *res.selection);
    CheckResult check;
    auto kind = red->decoder.at("reduction").get<std::string>();
    if (kind == "resolvable")
        check = verify_resolvable(decode_resolvable(red->decoder, *res.selection), n, static_cast<int>(q), *g);
    else if (kind == "large-set")
        check = verify_large_set(decode_large_set(red->decoder, *res.selection), n, static_cast<int>(q),
            static_cast<int>(r), lambda, Hypergraph::complete(n, static_cast<int>(q)));
    else
        check = verify_complete_resolution(decode_complete_resolution(red->decoder, *res.selection), n, static_cast<int>(q));
    rep["verified"] = check.ok;
    if (!check.detail.empty())
        rep["detail"] = check.detail;
    emit(c, rep);
    std::cerr << "solved and decoded; independent check " << (check.ok ? "passed" : "failed: " + check.detail) << '\n';
    return check.ok ? kOk : kNegative;
}

int cmd_typicality(const Common& c, long n, long r, double p, long s)
{
    if (n < 1 || r < 1 || r > n || s < 1 || p < 0 || p > 1)
        throw InputError("typicality expects --n >= --r >= 1, --s >= 1 and 0 <= --density <= 1");
    Rng rng(c.seed);
    auto full = Hypergraph::complete(n, static_cast<int>(r));
    Hypergraph g(n, static_cast<int>(r));
    const auto threshold = static_cast<std::uint64_t>(p * 4294967296.0);
    for (auto& [e, m] : full.edges)
        if ((rng.next() >> 32) < threshold || p == 1)
            g.add(e, m);
    auto t = measure_typicality(g, static_cast<int>(s));
    json rep = { { "format_version", kFormatVersion }, { "n", n }, { "r", r }, { "s", s },
        { "edges", g.edges.size() }, { "typicality", to_string(t) }, { "typicality_float", t.get_d() } };
    emit(c, rep);
    std::cerr << "typicality " << t.get_d() << " over " << g.edges.size() << " edges\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app { "designlat: lattice and decomposition tools for labelled complexes" };
    app.require_subcommand(1);
    Common c;

    auto add_common = [&](CLI::App* sub, bool instance) {
        sub->add_option("--budget", c.budget, "node or molecule budget (e.g. 1000000, 10^6)");
        sub->add_option("--seed", c.seed, "64-bit seed")->capture_default_str();
        sub->add_option("--threads", c.threads, "worker threads")->capture_default_str();
        sub->add_option("--out", c.out, "write the report to this path instead of stdout");
        sub->add_option("--format", c.format, "report format")->check(CLI::IsMember({ "json", "text" }));
        if (instance) {
            sub->add_option("--builtin", c.builtin, "builtin instance name");
            sub->add_option("--problem", c.problem, "problem file");
        }
    };

    std::vector<long> design, resolvable, large, complete, rainbow;
    long tryst = 0, latin = 0, sudoku = 0, complete_n = 0, runs = 1, typ_n = 10, typ_r = 2, typ_s = 2;
    double density = 0.5;
    std::string mode = "fixed", method = "sharp", cert_path, verify_mode, heuristic = "mrv";
    bool list = false, count = false, symmetry = false, do_solve = false;

    auto* build = app.add_subcommand("build", "build a problem instance");
    add_common(build, false);
    build->add_option("--builtin", c.builtin, "builtin instance name");
    build->add_flag("--list", list, "list builtin instances");
    build->add_option("--design", design, "n q r lambda: K^r_q into lambda K^r_n")->expected(4);
    build->add_option("--tryst", tryst, "tryst table problem on n players");
    build->add_option("--latin", latin, "Latin squares of order n");
    build->add_option("--sudoku", sudoku, "Sudoku squares with boxes of side n");
    build->add_option("--rainbow", rainbow, "q r n")->expected(3);
    build->add_option("--mode", mode, "rainbow mode")->check(CLI::IsMember({ "all", "fixed" }));

    auto* div = app.add_subcommand("check-divisible", "arithmetic divisibility conditions");
    add_common(div, false);
    div->add_option("--design", design, "n q r lambda")->expected(4);
    div->add_option("--resolvable", resolvable, "n q r lambda")->expected(4);
    div->add_option("--large-set", large, "n q r lambda")->expected(4);
    div->add_option("--complete-resolution", complete, "n q")->expected(2);
    div->add_option("--rainbow", rainbow, "q r n")->expected(3);
    div->add_option("--mode", mode, "rainbow mode")->check(CLI::IsMember({ "all", "fixed" }));

    auto* lat = app.add_subcommand("lattice-member", "test the target against the decomposition lattice");
    add_common(lat, true);
    lat->add_option("--method", method, "sharp, shadow or oracle")->check(CLI::IsMember({ "sharp", "shadow", "oracle" }));

    auto* solve = app.add_subcommand("solve", "exact decomposition search");
    add_common(solve, true);
    solve->add_flag("--count", count, "count decompositions instead");
    solve->add_flag("--symmetry", symmetry, "prune symmetric root branches");
    solve->add_option("--heuristic", heuristic, "branching rule")->check(CLI::IsMember({ "mrv", "first" }));

    auto* integral = app.add_subcommand("solve-integral", "integral decomposition");
    add_common(integral, true);

    auto* ver = app.add_subcommand("verify", "check a certificate");
    add_common(ver, true);
    ver->add_option("--certificate", cert_path, "certificate file")->required();
    ver->add_option("--mode", verify_mode, "set or integral (default: from the certificate)");

    auto* nib = app.add_subcommand("nibble", "random greedy packing statistics");
    add_common(nib, true);
    nib->add_option("--complete", complete_n, "triangle packing of K_n");
    nib->add_option("--runs", runs, "number of seeds, starting at --seed")->capture_default_str();

    auto* red = app.add_subcommand("reduce", "build a reduction instance, optionally solving and decoding it");
    add_common(red, false);
    red->add_option("--resolvable", resolvable, "n q r lambda")->expected(4);
    red->add_option("--large-set", large, "n q r lambda")->expected(4);
    red->add_option("--complete-resolution", complete, "n q")->expected(2);
    red->add_flag("--solve", do_solve, "solve, decode and verify");

    auto* typ = app.add_subcommand("typicality", "typicality of a seeded random hypergraph");
    add_common(typ, false);
    typ->add_option("--n", typ_n, "vertices")->capture_default_str();
    typ->add_option("--r", typ_r, "uniformity")->capture_default_str();
    typ->add_option("--density", density, "edge probability")->capture_default_str();
    typ->add_option("--s", typ_s, "largest family size")->capture_default_str();

    auto* orc = app.add_subcommand("oracle", "membership in the span of all molecules");
    add_common(orc, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*build)
            return cmd_build(c, design, tryst, latin, sudoku, rainbow, mode, list);
        if (*div)
            return cmd_check_divisible(c, design, resolvable, large, complete, rainbow, mode);
        if (*lat)
            return cmd_lattice_member(c, method);
        if (*solve)
            return cmd_solve(c, count, symmetry, heuristic);
        if (*integral)
            return cmd_solve_integral(c);
        if (*ver)
            return cmd_verify(c, cert_path, verify_mode);
        if (*nib)
            return cmd_nibble(c, complete_n, runs);
        if (*red)
            return cmd_reduce(c, resolvable, large, complete, do_solve);
        if (*typ)
            return cmd_typicality(c, typ_n, typ_r, density, typ_s);
        if (*orc)
            return cmd_oracle(c);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << '\n';
        return kBudget;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << '\n';
        return kInput;
    }
    return kInput;
}
