#include <designlat/io.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "")
{
    std::string cmd = env + (env.empty() ? "" : " ") + DESIGNLAT_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p)
        return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path temp_path(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "designlat_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST(Cli, CheckDivisible)
{
    auto r = run("check-divisible --design 7 3 2 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out).at("divisible"), true);
    EXPECT_EQ(run("check-divisible --design 6 3 2 1").code, 1);
    EXPECT_EQ(run("check-divisible --complete-resolution 8 3").code, 1);
    EXPECT_EQ(run("check-divisible --resolvable 9 3 2 1").code, 0);
}

TEST(Cli, TwistedOctahedronIsNotAMember)
{
    auto r = run("lattice-member --builtin twisted-octahedron");
    EXPECT_EQ(r.code, 1);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("member"), false);
    EXPECT_EQ(j.at("invariant"), nlohmann::json({ 1, -1, 0, 0 }));
    EXPECT_EQ(j.at("failing_orbit").at("level"), 2);
    EXPECT_EQ(run("lattice-member --builtin twisted-octahedron --method oracle").code, 1);
    EXPECT_EQ(run("lattice-member --builtin fano --method shadow").code, 0);
}

TEST(Cli, SolveThenVerifyInSeparateProcess)
{
    auto cert = temp_path("fano.json");
    auto r = run("solve --builtin fano --budget 10^6 --out " + cert.string());
    ASSERT_EQ(r.code, 0);
    auto j = designlat::read_json_file(cert.string());
    EXPECT_EQ(j.at("selection").at("entries").size(), 7u);
    EXPECT_EQ(run("verify --certificate " + cert.string()).code, 0);

    // tamper: drop one block
    j["selection"]["entries"].erase(0);
    auto bad = temp_path("fano_bad.json");
    designlat::write_text_file(bad.string(), j.dump());
    auto v = run("verify --certificate " + bad.string());
    EXPECT_EQ(v.code, 1);
    EXPECT_EQ(nlohmann::json::parse(v.out).at("mismatches"), 18);
}

TEST(Cli, EveryBuiltinCertificateVerifies)
{
    for (std::string name : { "fano", "latin-3", "sudoku-2", "kts-9", "rainbow-fixed-q3n7", "tryst-9" }) {
        auto cert = temp_path(name + ".json");
        ASSERT_EQ(run("solve --builtin " + name + " --out " + cert.string()).code, 0) << name;
        EXPECT_EQ(run("verify --certificate " + cert.string()).code, 0) << name;
    }
}

TEST(Cli, ProblemFilesRoundTrip)
{
    auto prob = temp_path("latin.json");
    ASSERT_EQ(run("build --latin 3 --out " + prob.string()).code, 0);
    auto r = run("solve --count --problem " + prob.string());
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out).at("count"), 12);
}

TEST(Cli, UnsatAndBudgetExitCodes)
{
    auto prob = temp_path("k6.json");
    ASSERT_EQ(run("build --design 6 3 2 1 --out " + prob.string()).code, 0);
    EXPECT_EQ(run("solve --problem " + prob.string()).code, 1);
    EXPECT_EQ(run("solve --builtin sudoku-2 --count --budget 3").code, 2);
    EXPECT_EQ(run("solve --builtin sudoku-2 --count", "DESIGNLAT_BUDGET=3").code, 2);
    EXPECT_EQ(run("solve --builtin sudoku-2 --count --budget 10^7", "DESIGNLAT_BUDGET=3").code, 0);
}

TEST(Cli, InputErrors)
{
    EXPECT_EQ(run("frobnicate").code, 3);
    EXPECT_EQ(run("solve").code, 3);
    EXPECT_EQ(run("solve --builtin nope").code, 3);
    EXPECT_EQ(run("solve --builtin fano --budget lots").code, 3);
    auto bad = temp_path("broken.json");
    {
        std::ofstream f(bad);
        f << "{\n  \"format_version\": 1,\n  \"complex\": [\n";
    }
    EXPECT_EQ(run("solve --problem " + bad.string()).code, 3);
    EXPECT_EQ(run("verify --certificate " + bad.string()).code, 3);
}

TEST(Cli, ReportsAreReproducible)
{
    for (std::string args : { "solve --builtin kts-9 --seed 7", "nibble --complete 15 --runs 3 --seed 4",
             "reduce --resolvable 9 3 2 1 --solve --seed 2", "typicality --n 9 --r 2 --seed 5" }) {
        auto a = run(args), b = run(args);
        EXPECT_EQ(a.code, 0) << args;
        EXPECT_EQ(a.out, b.out) << args;
    }
}

TEST(Cli, ReduceDecodesAKirkmanSystem)
{
    auto r = run("reduce --resolvable 9 3 2 1 --solve --seed 1");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("verified"), true);
    EXPECT_EQ(j.at("decoded").at("classes").size(), 4u);
}

TEST(Cli, TextFormat)
{
    auto r = run("check-divisible --design 7 3 2 1 --format text");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("divisible: true"), std::string::npos);
}

TEST(Cli, OracleAndIntegral)
{
    EXPECT_EQ(run("oracle --builtin fano").code, 0);
    EXPECT_EQ(run("oracle --builtin twisted-octahedron").code, 1);
    EXPECT_EQ(run("solve-integral --builtin twisted-octahedron").code, 1);
    auto cert = temp_path("fano_int.json");
    ASSERT_EQ(run("solve-integral --builtin fano --out " + cert.string()).code, 0);
    EXPECT_EQ(run("verify --certificate " + cert.string()).code, 0);
}
