#include <doctest.h>

#include <iostream>
#include <sstream>

#include <json.hpp>

#include "nilzeta/cli.hpp"

using namespace nilzeta;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "nilzeta");
    args.push_back("--no-cache");
    std::vector<char *> argv;
    for (auto &a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    auto *old_out = std::cout.rdbuf(out.rdbuf());
    auto *old_err = std::cerr.rdbuf(err.rdbuf());
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

nlohmann::json run_json(std::vector<std::string> args) {
    args.push_back("--json");
    Run r = run(args);
    REQUIRE(r.code == kExitOk);
    return nlohmann::json::parse(r.out);
}

} // namespace

TEST_CASE("config validation") {
    RunConfig c;
    c.primes = {2, 3};
    c.N = 5;
    CHECK_NOTHROW(c.validate());
    c.primes = {7};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.primes = {2};
    c.N = 25;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.N = 3;
    c.budget = 1e8;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.allow_large_budget = true;
    CHECK_NOTHROW(c.validate());
    c.no_cache = true;
    CHECK_FALSE(c.cache().enabled());
}

TEST_CASE("zeta subcommands") {
    auto fe = run_json({"zeta", "check-fe", "--group", "F24"});
    CHECK(fe["sign"] == 1);
    CHECK(fe["p_exp"] == 45);
    CHECK(fe["t_exp"] == 14);
    CHECK(fe["verified"] == true);

    auto s = run_json({"zeta", "series", "--group", "F22", "--prime", "2", "--upto", "3"});
    CHECK(s.dump().find("[1,3,7,19]") != std::string::npos);

    Run show = run({"zeta", "show", "--group", "F23"});
    CHECK(show.code == kExitOk);
    CHECK(show.out.find("T") != std::string::npos);
}

TEST_CASE("zeta envelope") {
    auto e = run_json({"--envelope", "zeta", "check-fe", "--group", "F23"});
    CHECK(e["group"] == "F23");
    CHECK(e["operation"] == "check-fe");
    CHECK(e["inputs"]["group"] == "F23");
    CHECK(e["result"]["p_exp"] == 15);
    CHECK(e["verified"] == true);
    CHECK(e["details"].is_object());
    auto plain = run_json({"zeta", "check-fe", "--group", "F23"});
    CHECK(plain == e["result"]);
}

TEST_CASE("oracle subcommands report matches") {
    auto c = run_json({"oracle", "count", "--group", "F22", "--prime", "3", "-N", "4"});
    CHECK(c["match"] == true);
    CHECK(c.contains("runtime_ms"));
    auto d = run_json({"oracle", "direct", "--group", "F23", "--prime", "2", "-N", "2"});
    CHECK(d["match"] == true);
    auto w = run_json({"oracle", "weights", "--case", "point-line", "--prime", "2", "--r", "1,2"});
    CHECK(w.dump().find("\"mismatch_count\":0") != std::string::npos);
    auto m = run_json({"oracle", "multiplicity", "--prime", "2", "--bound", "2"});
    CHECK(m["mismatches"] == 0);
}

TEST_CASE("geometry and combinat subcommands") {
    auto planes = run_json({"geometry", "--prime", "2", "--count", "planes"});
    CHECK(planes["count"] == 30);
    CHECK(planes["formula"] == 30);
    auto rulings = run_json({"geometry", "--prime", "3", "--count", "rulings"});
    CHECK(rulings["a"] == 40);
    CHECK(rulings["b"] == 40);
    auto mu = run({"combinat", "mu", "--a", "3", "--b", "1"});
    CHECK(mu.code == kExitOk);
    auto tc = run({"combinat", "type-count", "--type", "1:1"});
    CHECK(tc.code == kExitOk);
}

TEST_CASE("exit codes") {
    CHECK(run({"oracle", "count", "--group", "F24", "--prime", "3", "-N", "6"}).code == kExitBudget);
    CHECK(run({"zeta", "series", "--group", "F22", "--prime", "2", "-N", "25"}).code == kExitUsage);
    CHECK(run({"zeta", "series", "--group", "F99", "--prime", "2", "-N", "2"}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"--budget", "1e9", "zeta", "check-fe"}).code == kExitUsage);
    Run bad = run({"oracle", "weights", "--case", "cube"});
    CHECK(bad.code == kExitUsage);
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("output is deterministic apart from runtimes") {
    auto strip = [](nlohmann::json j) {
        j.erase("runtime_ms");
        return j.dump();
    };
    std::vector<std::string> args{"oracle", "count", "--group", "F23", "--prime", "2", "-N", "3"};
    CHECK(strip(run_json(args)) == strip(run_json(args)));
    std::vector<std::string> series{"zeta", "series", "--group", "F24", "--prime", "3", "-N", "6"};
    CHECK(run(series).out == run(series).out);
}
