#include <designlat/builtins.hpp>
#include <designlat/errors.hpp>
#include <designlat/io.hpp>
#include <designlat/solver.hpp>

#include <gtest/gtest.h>

using namespace designlat;

TEST(Io, IntegersRoundTripIncludingBigValues)
{
    for (auto s : { "0", "-17", "123456789012345678901234567890" }) {
        Integer x(s);
        EXPECT_EQ(integer_from_json(integer_to_json(x)), x);
    }
    EXPECT_EQ(intvec_from_json(intvec_to_json({ 1, -2, 3 })), (IntVec { 1, -2, 3 }));
}

TEST(Io, InjectionRoundTrip)
{
    Injection m { { 0, 4 }, { 3, 1 } };
    EXPECT_EQ(injection_from_json(injection_to_json(m)), m);
}

TEST(Io, EdgeVectorRoundTrip)
{
    auto inst = build_builtin("tryst-9");
    auto j = edge_vector_to_json(inst.target);
    EXPECT_EQ(j.at("format_version"), kFormatVersion);
    EXPECT_EQ(edge_vector_from_json(j), inst.target);
}

TEST(Io, ProblemRoundTripPreservesSolvability)
{
    for (auto name : { "fano", "latin-3", "twisted-octahedron", "kts-9", "rainbow-fixed-q3n7" }) {
        auto inst = build_builtin(name);
        auto text = problem_to_json(inst).dump();
        auto back = problem_from_json(parse_json(text));
        EXPECT_EQ(back.target, inst.target) << name;
        EXPECT_EQ(problem_to_json(back).dump(), text) << name;
    }
}

TEST(Io, SelectionRoundTrip)
{
    auto inst = build_builtin("fano");
    auto r = solve_exact(inst.gamma, inst.phi, inst.target);
    ASSERT_TRUE(r.selection);
    auto back = selection_from_json(selection_to_json(*r.selection, inst.gamma), inst.gamma);
    EXPECT_EQ(back.entries(), r.selection->entries());
}

TEST(Io, VectorSystemRoundTrip)
{
    auto inst = build_builtin("tryst-9");
    auto j = vector_system_to_json(inst.gamma);
    auto back = vector_system_from_json(j);
    EXPECT_EQ(vector_system_to_json(back), j);
    EXPECT_TRUE(check_elementary(back));
}

TEST(Io, MalformedJsonReportsPosition)
{
    try {
        parse_json("{\n  \"a\": [1, 2,\n}", "bad.json");
        FAIL() << "expected an error";
    } catch (const InputError& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("bad.json"), std::string::npos) << msg;
        EXPECT_NE(msg.find("3:"), std::string::npos) << msg;
    }
}

TEST(Io, WrongVersionOrShapeIsInputError)
{
    EXPECT_THROW(problem_from_json(nlohmann::json { { "format_version", 99 } }), InputError);
    EXPECT_THROW(problem_from_json(nlohmann::json::array()), InputError);
    EXPECT_THROW(read_json_file("/nonexistent/path.json"), InputError);
}
