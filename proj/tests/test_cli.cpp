#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "schema_check.hpp"
#include "volrigid/cli.hpp"

using nlohmann::json;

namespace {

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "")
{
    std::ostringstream out, err;
    std::istringstream in(stdin_text);
    int code = volrigid::cli::run(args, out, err, in);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path)
{
    std::ifstream f(path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

const json& schema()
{
    static const json s = json::parse(slurp(VOLRIGID_DOCS_DIR "/cli-schema.json"));
    return s;
}

const std::string fixture = VOLRIGID_TEST_DATA "/census_fixture.csv";

// (schema definition, command line)
const std::vector<std::pair<std::string, std::vector<std::string>>>& invocations()
{
    static const std::vector<std::pair<std::string, std::vector<std::string>>> v = {
        {"qf values", {"qf", "values", "--form", "1,1,1", "--limit", "25"}},
        {"qf gap", {"qf", "gap", "--form", "1,1,1", "--q0", "13", "--limit", "100"}},
        {"qf reps", {"qf", "reps", "--form", "1,1,1", "-m", "7"}},
        {"qf reps", {"qf", "reps", "--form", "1,0,12", "-m", "49", "--all"}},
        {"prime-seq", {"prime-seq", "--count", "2", "--cap", "100000"}},
        {"prime-seq", {"prime-seq", "--family", "m125", "--primes", "3,11", "--count", "2", "--cap", "1000000"}},
        {"nz eval", {"nz", "eval", "--manifold", "m004", "-p", "5", "-q", "1"}},
        {"nz check", {"nz", "check", "--points", "100"}},
        {"nz wl-coeffs", {"nz", "wl-coeffs"}},
        {"nz constants", {"nz", "constants"}},
        {"certify", {"certify", "--manifold", "m004", "-a", "7", "-b", "4", "--c2", "5"}},
        {"certify", {"certify", "--manifold", "m125", "-a", "1", "-b", "2"}},
        {"mutant census", {"mutant", "census", "-n", "3"}},
        {"mutant graph", {"mutant", "graph", "--word", "001"}},
        {"mutant graph", {"mutant", "graph", "--word", "1111", "--first-stage-modulus", "2"}},
        {"mutant classes", {"mutant", "classes", "-n", "6"}},
        {"census hist", {"census", "hist", "--input", fixture}},
    };
    return v;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("validator rejects what it should")
    {
        json s = {{"type", "object"},
                  {"required", {"a"}},
                  {"additionalProperties", false},
                  {"properties", {{"a", {{"type", "array"}, {"items", {{"type", "integer"}}}}}}}};
        std::vector<std::string> errors;
        CHECK(schema_check::validate(json{{"a", {1, 2}}}, s, errors));
        CHECK_FALSE(schema_check::validate(json{{"a", {1, 2.5}}}, s, errors));
        CHECK_FALSE(schema_check::validate(json{{"b", 1}}, s, errors));
        CHECK_FALSE(schema_check::validate(json::array(), s, errors));
        CHECK_FALSE(schema_check::validate(json{{"a", {}}, {"c", 1}}, s, errors));
    }

    TEST_CASE("documented invocations")
    {
        auto constants = run({"nz", "constants"});
        REQUIRE(constants.code == 0);
        auto c = json::parse(constants.out);
        CHECK(std::abs(c["v_omega"].get<double>() - 2.029883) < 1e-6);
        CHECK(std::abs(c["V8"].get<double>() - 3.663862) < 1e-6);

        auto census = run({"mutant", "census", "-n", "3"});
        REQUIRE(census.code == 0);
        CHECK(json::parse(census.out)["class_count"] == 4);

        auto gap = run({"qf", "gap", "--form", "1,1,1", "--q0", "13", "--limit", "100"});
        REQUIRE(gap.code == 0);
        CHECK(json::parse(gap.out)["gap"] == 6);
    }

    TEST_CASE("every JSON output re-parses, validates and is deterministic")
    {
        for (const auto& [def, args] : invocations()) {
            std::string line;
            for (const auto& a : args)
                line += a + " ";
            INFO(line);
            auto first = run(args);
            REQUIRE(first.code == 0);
            auto doc = json::parse(first.out);
            std::vector<std::string> errors;
            REQUIRE(schema()["definitions"].contains(def));
            bool ok = schema_check::validate(doc, schema()["definitions"][def], errors);
            for (const auto& e : errors)
                MESSAGE(e);
            CHECK(ok);
            CHECK(doc.dump(2) + "\n" == first.out);
            auto second = run(args);
            CHECK(second.out == first.out);
            CHECK(second.code == first.code);
        }
    }

    TEST_CASE("floats carry at most 12 significant digits")
    {
        std::function<void(const json&)> walk = [&](const json& v) {
            if (v.is_number_float()) {
                double d = v.get<double>();
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.12g", d);
                CHECK(std::strtod(buf, nullptr) == d);
            }
            if (v.is_structured())
                for (const auto& e : v)
                    walk(e);
        };
        for (const auto& [def, args] : invocations())
            walk(json::parse(run(args).out));
    }

    TEST_CASE("csv and table formats")
    {
        auto csv = run({"--format", "csv", "qf", "gap", "--form", "1,1,1", "--q0", "13", "--limit", "100"});
        CHECK(csv.code == 0);
        CHECK(csv.out == "form,q0,limit,gap\n\"1,1,1\",13,100,6\n");

        auto after = run({"qf", "values", "--form", "1,1,1", "--limit", "25", "--format", "csv"});
        CHECK(after.out == "value\n1\n3\n7\n13\n19\n21\n");

        auto table = run({"--format", "table", "mutant", "classes", "-n", "3"});
        CHECK(table.out == "word\n----\n000\n001\n011\n111\n");

        auto hist = run({"--format", "csv", "census", "hist", "--input", fixture});
        CHECK(hist.out.rfind("volume,count,names\n2.0298832128,2,m004;m003\n", 0) == 0);
        CHECK(run({"--format", "xml", "nz", "constants"}).code == 2);
    }

    TEST_CASE("exit codes")
    {
        auto usage = run({});
        CHECK(usage.code == 2);
        CHECK(usage.err.find("Usage:") != std::string::npos);
        CHECK(run({"bogus"}).code == 2);
        CHECK(run({"qf"}).code == 2);
        CHECK(run({"qf", "gap", "--q0", "13"}).code == 2);
        CHECK(run({"qf", "gap", "--form", "1,x,1", "--q0", "13", "--limit", "100"}).code == 2);
        CHECK(run({"nz", "eval", "--manifold", "m999", "-p", "1", "-q", "0"}).code == 2);
        CHECK(run({"prime-seq", "--primes", "7,7"}).code == 2);
        CHECK(run({"--shards", "0", "prime-seq"}).code == 2);

        auto domain = run({"qf", "gap", "--form", "1,2,1", "--q0", "13", "--limit", "100"});
        CHECK(domain.code == 1);
        CHECK(domain.err.find("positive definite") != std::string::npos);
        CHECK(domain.out.empty());
        CHECK(run({"qf", "gap", "--form", "1,1,1", "--q0", "2", "--limit", "100"}).code == 1);
        CHECK(run({"certify", "--manifold", "m004", "-a", "2", "-b", "4"}).code == 1);
        CHECK(run({"mutant", "census", "-n", "31"}).code == 1);
        CHECK(run({"mutant", "graph", "--word", "01"}).code == 1);
        CHECK(run({"census", "hist", "--input", "/nonexistent/file.csv"}).code == 1);
        CHECK(run({"nz", "check", "--points", "20", "--tolerance", "1e-30"}).code == 1);

        auto help = run({"--help"});
        CHECK(help.code == 0);
        CHECK(help.out.find("prime-seq") != std::string::npos);
        CHECK(run({"qf", "gap", "--help"}).code == 0);
    }

    TEST_CASE("search cap from the environment and the flag")
    {
        ::setenv("VOLRIGID_CAP", "5000", 1);
        auto env = json::parse(run({"prime-seq", "--count", "100"}).out);
        CHECK(env["cap"] == "5000");
        CHECK(env["truncated"] == true);
        auto flag = json::parse(run({"--cap", "300", "prime-seq"}).out);
        CHECK(flag["cap"] == "300");
        CHECK(flag["witnesses"][0]["value"] == 241);
        ::setenv("VOLRIGID_CAP", "ten", 1);
        CHECK(run({"prime-seq"}).code == 2);
        ::unsetenv("VOLRIGID_CAP");
        CHECK(json::parse(run({"prime-seq"}).out)["cap"] == "1000000000");
    }

    TEST_CASE("sharded prime searches print the same bytes")
    {
        std::vector<std::string> base = {"prime-seq", "-g", "2", "--count", "3", "--cap", "100000000"};
        auto one = run(base);
        REQUIRE(one.code == 0);
        CHECK(json::parse(one.out)["witnesses"][0]["value"] == 396541);
        for (const char* k : {"2", "4"}) {
            auto args = base;
            args.insert(args.begin(), {"--shards", k});
            CHECK(run(args).out == one.out);
        }
    }

    TEST_CASE("census from stdin reports bad lines and keeps going")
    {
        auto r = run({"census", "hist", "--input", "-"}, "name,volume\na,2.5\nb,-1\nc,2.5000001\n");
        CHECK(r.code == 0);
        CHECK(r.err == "census: line 3: volume must be finite and positive: '-1'\n");
        auto doc = json::parse(r.out);
        REQUIRE(doc.size() == 1);
        CHECK(doc[0]["count"] == 2);
    }

    TEST_CASE("fixture histogram matches the golden file byte for byte")
    {
        auto r = run({"census", "hist", "--input", fixture});
        REQUIRE(r.code == 0);
        CHECK(r.err.empty());
        CHECK(r.out == slurp(VOLRIGID_TEST_DATA "/census_fixture_hist.json"));
    }
}
