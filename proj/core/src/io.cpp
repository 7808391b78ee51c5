#include <designlat/errors.hpp>
#include <designlat/io.hpp>

#include <fstream>
#include <sstream>

namespace designlat {

using nlohmann::json;

namespace {

void check_version(const json& j, const char* what)
{
    if (!j.is_object() || !j.contains("format_version"))
        throw InputError(std::string(what) + ": missing format_version");
    if (j.at("format_version").get<int>() != kFormatVersion)
        throw InputError(std::string(what) + ": unsupported format_version "
            + std::to_string(j.at("format_version").get<int>()));
}

json labels_array(LabelSet s)
{
    json a = json::array();
    for (auto l : s.labels())
        a.push_back(l);
    return a;
}

} // namespace

json injection_to_json(const Injection& m)
{
    json a = json::array();
    for (auto l : m.domain().labels())
        a.push_back(json::array({ l, m.at(l) }));
    return a;
}

Injection injection_from_json(const json& j)
{
    if (!j.is_array())
        throw InputError("map must be an array of [label, vertex] pairs");
    Injection m;
    for (auto& p : j) {
        if (!p.is_array() || p.size() != 2)
            throw InputError("map entry must be a [label, vertex] pair");
        int l = p[0].get<int>();
        long v = p[1].get<long>();
        if (l < 0 || l >= kMaxLabels)
            throw InputError("label out of range: " + std::to_string(l));
        if (v < 0 || v >= kNoVertex)
            throw InputError("vertex out of range: " + std::to_string(v));
        if (m.domain().contains(l))
            throw InputError("label repeated in map");
        m.set(l, static_cast<Vertex>(v));
    }
    return m;
}

json integer_to_json(const Integer& x)
{
    if (x.fits_slong_p())
        return x.get_si();
    return x.get_str();
}

Integer integer_from_json(const json& j)
{
    if (j.is_number_integer())
        return Integer(j.get<long>());
    if (j.is_string()) {
        Integer x;
        if (x.set_str(j.get<std::string>(), 10) != 0)
            throw InputError("malformed integer string: " + j.get<std::string>());
        return x;
    }
    throw InputError("expected an integer");
}

json intvec_to_json(const IntVec& v)
{
    json a = json::array();
    for (auto& x : v)
        a.push_back(integer_to_json(x));
    return a;
}

IntVec intvec_from_json(const json& j)
{
    if (!j.is_array())
        throw InputError("expected an integer array");
    IntVec v;
    for (auto& x : j)
        v.push_back(integer_from_json(x));
    return v;
}

json edge_vector_to_json(const EdgeVector& v)
{
    json entries = json::array();
    for (auto& [psi, val] : v.entries())
        entries.push_back({ { "labels", labels_array(psi.domain()) }, { "map", injection_to_json(psi) },
            { "value", intvec_to_json(val) } });
    return { { "format_version", kFormatVersion }, { "dim", v.dim() }, { "entries", entries } };
}

EdgeVector edge_vector_from_json(const json& j)
{
    check_version(j, "edge vector");
    EdgeVector v(j.at("dim").get<int>());
    for (auto& e : j.at("entries")) {
        auto psi = injection_from_json(e.at("map"));
        if (e.contains("labels") && LabelSet(e.at("labels").get<std::vector<int>>()) != psi.domain())
            throw InputError("edge vector entry: labels differ from the map domain");
        auto val = intvec_from_json(e.at("value"));
        if (static_cast<int>(val.size()) != v.dim())
            throw InputError("edge vector entry has the wrong dimension");
        v.add(psi, val);
    }
    return v;
}

json selection_to_json(const Selection& s, const VectorSystem& gamma)
{
    json entries = json::array();
    for (auto& [key, c] : s.entries())
        entries.push_back({ { "family", gamma.member(key.family).name }, { "map", injection_to_json(key.map) },
            { "coefficient", integer_to_json(c) } });
    return { { "format_version", kFormatVersion }, { "entries", entries } };
}

Selection selection_from_json(const json& j, const VectorSystem& gamma)
{
    check_version(j, "selection");
    Selection s;
    for (auto& e : j.at("entries")) {
        auto name = e.at("family").get<std::string>();
        auto a = gamma.family_index(name);
        if (!a)
            throw InputError("selection refers to unknown family member " + name);
        s.add(*a, injection_from_json(e.at("map")), integer_from_json(e.at("coefficient")));
    }
    return s;
}

json vector_system_to_json(const VectorSystem& gamma)
{
    json family = json::array();
    for (std::size_t a = 0; a < gamma.family_size(); ++a) {
        auto& m = gamma.member(a);
        std::vector<std::pair<Injection, IntVec>> sorted(m.gamma.begin(), m.gamma.end());
        std::sort(sorted.begin(), sorted.end(), [](auto& x, auto& y) { return canonical_less(x.first, y.first); });
        json g = json::array();
        for (auto& [theta, v] : sorted)
            g.push_back({ { "map", injection_to_json(theta) }, { "value", intvec_to_json(v) } });
        family.push_back({ { "name", m.name }, { "gamma", g } });
    }
    return { { "group", gamma.group().describe() }, { "r", gamma.r() }, { "dim", gamma.dim() }, { "family", family } };
}

VectorSystem vector_system_from_json(const json& j)
{
    auto group = group_from_descriptor(j.at("group"));
    std::vector<FamilyMember> family;
    for (auto& m : j.at("family")) {
        FamilyMember f;
        f.name = m.at("name").get<std::string>();
        for (auto& e : m.at("gamma"))
            f.gamma.emplace(injection_from_json(e.at("map")), intvec_from_json(e.at("value")));
        family.push_back(std::move(f));
    }
    return VectorSystem(group, j.at("r").get<int>(), j.at("dim").get<int>(), std::move(family));
}

json problem_to_json(const ProblemInstance& p)
{
    json out = { { "format_version", kFormatVersion }, { "provenance", p.provenance },
        { "complex", p.phi.describe() }, { "system", vector_system_to_json(p.gamma) },
        { "target", edge_vector_to_json(p.target) } };
    if (p.partition) {
        json parts = json::array();
        for (std::size_t k = 0; k < p.partition->label_parts.size(); ++k)
            parts.push_back({ { "labels", labels_array(p.partition->label_parts[k]) },
                { "vertices", p.partition->vertex_parts[k] } });
        out["partition"] = parts;
    }
    return out;
}

ProblemInstance problem_from_json(const json& j)
{
    check_version(j, "problem");
    try {
        auto phi = complex_from_descriptor(j.at("complex"));
        auto gamma = vector_system_from_json(j.at("system"));
        auto target = edge_vector_from_json(j.at("target"));
        std::optional<PartitionSpec> part;
        if (j.contains("partition")) {
            PartitionSpec p;
            for (auto& e : j.at("partition")) {
                p.label_parts.emplace_back(e.at("labels").get<std::vector<int>>());
                p.vertex_parts.push_back(e.at("vertices").get<std::vector<Vertex>>());
            }
            part = p;
        }
        return { std::move(phi), std::move(gamma), std::move(target), j.value("provenance", json::object()), part };
    } catch (const json::exception& e) {
        throw InputError(std::string("problem file: ") + e.what());
    }
}

json parse_json(const std::string& text, const std::string& source)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // locate line and column of the failing byte
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write " + path);
    out << text;
}

} // namespace designlat
