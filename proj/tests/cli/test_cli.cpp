#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "ffh/io.hpp"

using namespace ffh;

namespace {

struct Run {
    int rc;
    std::string out;
};

std::string quote(std::string const & s)
{
    std::string r = "'";
    for (char c : s)
        r += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return r + "'";
}

Run run(std::vector<std::string> const & args)
{
    std::string cmd = quote(FFHEEG_CLI);
    for (auto const & a : args)
        cmd += " " + quote(a);
    cmd += " 2>/dev/null";
    FILE * pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Json run_json(std::vector<std::string> const & args)
{
    auto r = run(args);
    REQUIRE(r.rc == 0);
    return Json::parse(r.out);
}

std::string temp_file(std::string const & name, std::string const & content)
{
    auto path = std::filesystem::temp_directory_path() / ("ffheeg_cli_" + name);
    std::ofstream(path) << content;
    return path.string();
}

QuadFieldPtr running()
{
    auto f = FiniteField::prime(3);
    return make_field(f, parse_poly(f, "T^3+2*T+1"));
}

} // namespace

TEST_CASE("usage errors exit 1")
{
    CHECK(run({"tower", "--levels", "3"}).rc == 1);
    CHECK(run({"--seed", "1"}).rc == 1);
    CHECK(run({"--seed", "1", "frobnicate"}).rc == 1);
    CHECK(run({"--seed", "1", "verify", "--suite", "nonsense"}).rc == 1);
    CHECK(run({"--seed", "1", "--format", "xml", "field"}).rc == 1);
    CHECK(run({"--seed", "1", "factor", "--a", "{\"den\":", "--b", "{}"}).rc == 1);
    CHECK(run({"--seed", "1", "classgroup", "--cond", "T*(T+1)"}).rc == 1);
    CHECK(run({"--seed", "1", "--config", "/nonexistent/run.json", "field"}).rc == 1);
    CHECK(run({"--seed", "1", "--config", temp_file("bad.json", R"({"colour":1})"), "field"}).rc == 1);
    CHECK(run({"--seed", "1", "--config", temp_file("seed.json", R"({"seed":2})"), "field"}).rc == 1);
}

TEST_CASE("mathematical errors exit 2, budget exits 3")
{
    CHECK(run({"--seed", "1", "--D", "T^2", "field"}).rc == 2);
    CHECK(run({"--seed", "1", "--n-level", "T", "--p", "T", "heegner", "--level", "1"}).rc == 2);
    CHECK(run({"--seed", "1", "factor", "--a", R"({"den":"1","a":"T","b":"0","c":"T"})", "--b",
               R"({"den":"1","a":"1","b":"0","c":"1"})"})
              .rc == 2);
    CHECK(run({"--seed", "1", "theta", "--m-level", "1", "--horizon", "3", "--r", "g1"}).rc == 2);
    CHECK(run({"--seed", "1", "--max-enumeration", "100", "tower", "--levels", "4"}).rc == 3);
}

TEST_CASE("tower table")
{
    auto r = run({"--seed", "1", "tower", "--levels", "3", "--format", "table"});
    CHECK(r.rc == 0);
    CHECK(r.out == "n,|Pic|,factors,|H_n|,s_bound,gen_bound\n"
                   "0,7,7,1,0,0\n"
                   "1,14,14,1,1,0\n"
                   "2,42,42,3,1,1\n");
    auto j = run_json({"--seed", "1", "tower", "--levels", "3"});
    CHECK(j["version"].is_string());
    CHECK(j["config"]["seed"] == 1);
    auto const & rows = j["result"]["rows"];
    REQUIRE(rows.size() == 3);
    CHECK(rows[0]["pic"] == 7);
    CHECK(rows[1]["pic"] == 14);
    CHECK(rows[2]["pic"] == 42);
    CHECK(rows[2]["hn"] == 3);
}

TEST_CASE("field and classgroup")
{
    auto j = run_json({"--seed", "3", "field"});
    CHECK(j["result"]["class_number"] == 7);
    CHECK(j["result"]["l_polynomial"] == Json::parse("[1,3,3]"));
    auto c = run_json({"--seed", "3", "classgroup", "--cond", "T^2"});
    CHECK(c["result"]["group"]["order"] == 42);
    CHECK(c["result"]["formula"] == 42);
    auto cfg = temp_file("q5.json", R"({"q":5,"D":"T^3+T","p":"T+1","n_level":"T+2"})");
    auto k = run_json({"--seed", "3", "--config", cfg, "classgroup", "--cond", "1"});
    CHECK(k["config"]["q"] == 5);
    CHECK(k["result"]["group"]["order"] == k["result"]["zeta"]);
}

TEST_CASE("factor and sublattices")
{
    auto K = running();
    auto OK = Order::maximal(K);
    auto P = primes_above(K, parse_poly(K->base(), "T+1")).front();
    auto j = run_json({"--seed", "1", "factor", "--a", to_json(OK.lattice()).dump(), "--b",
                       to_json(ideal_inverse(P, OK)).dump()});
    CHECK(j["result"]["dprime"] == "T+1");
    CHECK(j["result"]["c"] == "1");
    CHECK(lattice_from_json(K, j["result"]["Dideal"]) == P);

    auto O1 = Order(K, parse_poly(K->base(), "T")).lattice();
    auto s = run_json({"--seed", "1", "sublattices", "--lattice", to_json(O1).dump(), "--prime", "T"});
    CHECK(s["result"]["classified"] == true);
    CHECK(s["result"]["count_down"] == 1);
    CHECK(s["result"]["count_up"] == 3);
    /* every printed lattice re-parses to the same canonical lattice */
    auto direct = sublattices_prime(O1, parse_poly(K->base(), "T"));
    auto const & arr = s["result"]["sublattices"];
    REQUIRE(arr.size() == direct.entries.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        auto L = lattice_from_json(K, arr[i]["lattice"]);
        CHECK(L == direct.entries[i].first);
        CHECK(to_json(L) == arr[i]["lattice"]);
    }
}

TEST_CASE("heegner, geometric and theta")
{
    auto h = run_json({"--seed", "1", "heegner", "--level", "2"});
    for (auto const & [k, v] : h["result"]["checks"].items())
        CHECK_MESSAGE(v == true, k);
    auto g = run_json({"--seed", "1", "geometric", "--level", "2"});
    CHECK(g["result"]["m"] == "T^3+2*T+1");
    CHECK(g["result"]["lifted_point_coherent"] == true);
    for (auto const & c : g["result"]["hecke_checks"])
        CHECK(c["hecke_member"] == true);
    auto t = run_json({"--seed", "1", "theta", "--m-level", "1", "--horizon", "3"});
    auto ord = t["result"]["class_order"].get<int>();
    CHECK((ord == 3 || ord == 9));
}

TEST_CASE("verify is deterministic")
{
    auto a = run({"--seed", "7", "verify", "--suite", "factor"});
    auto b = run({"--seed", "7", "verify", "--suite", "factor"});
    CHECK(a.rc == 0);
    CHECK(a.out == b.out);
    auto j = Json::parse(a.out);
    CHECK(j["passed"] == 50);
    CHECK(j["total"] == 50);
    auto t = run({"--seed", "7", "--format", "table", "verify", "--suite", "sublattice"});
    CHECK(t.out.find("sublattice 20/20 PASS") != std::string::npos);
}
