#include "qconnect/cli.hpp"
#include "qconnect/complex_literal.hpp"
#include "qconnect/report_io.hpp"
#include "qconnect/verify.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace qconnect;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "qconnect");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("qconnect_test_" + name);
}

}  // namespace

TEST_CASE("complex literals")
{
    CHECK(parse_complex("0.5") == Complex(0.5, 0.0));
    CHECK(parse_complex("-2") == Complex(-2.0, 0.0));
    CHECK(parse_complex("1-2i") == Complex(1.0, -2.0));
    CHECK(parse_complex("-3e-2+4i") == Complex(-0.03, 4.0));
    CHECK(parse_complex("1.5e+1-2.5E-1i") == Complex(15.0, -0.25));
    CHECK(parse_complex("+1+1i") == Complex(1.0, 1.0));
    for (const char* bad : {"", "1+2j", "i", "1 + 2i", "abc", "1+i2", "--1", "1+2i3"}) {
        CAPTURE(bad);
        CHECK_FALSE(parse_complex(bad).has_value());
    }
}

TEST_CASE("eval")
{
    SUBCASE("A_q at the origin")
    {
        const Run r = run({"eval", "Aq", "--q", "0.5", "--x", "0"});
        CHECK(r.code == kExitPass);
        CHECK(r.out.rfind("1+0i", 0) == 0);
        CHECK(r.out.find("terms=") != std::string::npos);
    }
    SUBCASE("rphis with parameters")
    {
        const Run r = run({"eval", "rphis", "--upper", "0", "--lower", "-0.5", "--q", "0.5", "--x", "3-2i"});
        CHECK(r.code == kExitPass);
        CHECK(r.out.rfind("0.24334554424366", 0) == 0);
    }
    SUBCASE("theta near a zero warns")
    {
        const Run r = run({"eval", "theta", "--q", "0.5", "--x", "-2"});
        CHECK(r.code == kExitPass);
        CHECK(r.err.find("theta zero") != std::string::npos);
    }
    SUBCASE("bad literal is a usage error")
    {
        const Run r = run({"eval", "Aq", "--q", "0.5", "--x", "1+2j"});
        CHECK(r.code == kExitUsage);
        CHECK(r.err.find(std::string(kComplexGrammar)) != std::string::npos);
    }
    SUBCASE("|q| >= 1 is a usage error")
    {
        CHECK(run({"eval", "Aq", "--q", "1.5", "--x", "1"}).code == kExitUsage);
    }
    SUBCASE("unknown function")
    {
        CHECK(run({"eval", "Bessel", "--x", "1"}).code == kExitUsage);
    }
    SUBCASE("domain errors")
    {
        CHECK(run({"eval", "2f0", "--q", "0.5", "--lambda", "1", "--x", "2"}).code == kExitDomain);
        CHECK(run({"eval", "g-borel", "--q", "0.5", "--x", "4"}).code == kExitDomain);
    }
}

TEST_CASE("check")
{
    SUBCASE("pass")
    {
        const Run r = run({"check", "thm-ramanujan-qairy", "--q", "0.5", "--grid-default"});
        CHECK(r.code == kExitPass);
        CHECK(r.out.rfind("PASS max_rel_err=", 0) == 0);
    }
    SUBCASE("mutation fails")
    {
        const Run r = run({"check", "thm-2f0", "--q", "0.5", "--grid-default", "--mutate"});
        CHECK(r.code == kExitFail);
        CHECK(r.out.rfind("FAIL max_rel_err=", 0) == 0);
    }
    SUBCASE("lambda on the unit spiral")
    {
        CHECK(run({"check", "thm-2f0", "--q", "0.5", "--lambda", "1.0", "--grid-default"}).code == kExitDomain);
    }
    SUBCASE("empty grid")
    {
        CHECK(run({"check", "watson", "--q", "0.5", "--grid", "2+1i,5"}).code == kExitDomain);
    }
    SUBCASE("unknown identity")
    {
        CHECK(run({"check", "no-such", "--grid-default"}).code == kExitUsage);
    }
    SUBCASE("json round trip")
    {
        const auto path = temp_file("report.json");
        const Run r = run({"check", "thm-eq-Eq", "--q", "0.3", "--grid-default", "--out", path.string()});
        REQUIRE(r.code == kExitPass);
        const std::string written = slurp(path);
        const IdentityReport back = report_from_json(written);
        CHECK(back.identity == "thm-eq-Eq");
        CHECK(back.points.size() == 24);
        CHECK(to_json(back) == written);
        const Run shown = run({"show", path.string()});
        CHECK(shown.code == kExitPass);
        CHECK(shown.out == written);
        std::filesystem::remove(path);
    }
    SUBCASE("csv")
    {
        const auto path = temp_file("report.csv");
        const Run r = run({"check", "qde-theta", "--q", "0.5", "--grid", "0.5+0.5i", "--out", path.string(),
                           "--format", "csv"});
        REQUIRE(r.code == kExitPass);
        const std::string text = slurp(path);
        CHECK(text.rfind("x_re,x_im,lhs_re,", 0) == 0);
        std::filesystem::remove(path);
    }
    SUBCASE("truncation from the environment")
    {
        ::setenv("Q_CONNECT_TRUNC_EPS", "1e-12", 1);
        const auto path = temp_file("env.json");
        const Run r = run({"check", "qde-ramanujan", "--q", "0.5", "--grid", "0.5+0.5i", "--out", path.string()});
        CHECK(r.code == kExitPass);
        CHECK(report_from_json(slurp(path)).trunc.eps == 1e-12);
        run({"check", "qde-ramanujan", "--q", "0.5", "--grid", "0.5+0.5i", "--out", path.string(), "--eps", "1e-14"});
        CHECK(report_from_json(slurp(path)).trunc.eps == 1e-14);
        ::unsetenv("Q_CONNECT_TRUNC_EPS");
        std::filesystem::remove(path);
    }
}

TEST_CASE("show rejects malformed files")
{
    const auto path = temp_file("bad.json");
    std::ofstream(path) << "{\"identity\": 3}";
    CHECK(run({"show", path.string()}).code == kExitUsage);
    std::filesystem::remove(path);
}
