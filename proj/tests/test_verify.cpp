#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "holobreak/verify.hpp"

using namespace holobreak;

namespace {

SuiteConfig small(const std::string& suite) {
    SuiteConfig c;
    c.suite = suite;
    c.ell_max = 2;
    return c;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("parameter parsing") {
    auto a = parse_param("7/2");
    CHECK(a.rational);
    CHECK(a.exact == mpq_class(7, 2));
    CHECK(a.value == 3.5);
    auto b = parse_param("2.5");
    CHECK_FALSE(b.rational);
    CHECK(b.exact == mpq_class(5, 2));
    auto c = parse_param("-1.25e1");
    CHECK(c.value == -12.5);
    CHECK(parse_param("4").rational);
    CHECK(parse_param("-6/4").exact == mpq_class(-3, 2));
    CHECK_THROWS_AS(parse_param("abc"), ConfigError);
    CHECK_THROWS_AS(parse_param("1/0"), ConfigError);
    CHECK_THROWS_AS(parse_param("1/2/3"), ConfigError);
    CHECK(parse_param_list("").empty());
    CHECK(parse_param_list("2, 5/2,3").size() == 3);
}

TEST_CASE("config errors") {
    auto c = small("no-such-suite");
    CHECK_THROWS_AS(run_suite(c), ConfigError);
    auto e = small("rc-identities");
    e.lambda1 = std::vector<ParamValue>{};
    CHECK_THROWS_AS(run_suite(e), ConfigError);
    auto n = small("bernstein-sato");
    n.n = std::vector<int>{};
    CHECK_THROWS_AS(run_suite(n), ConfigError);
    auto l = small("ortho-poly");
    l.ell_max = -3;
    CHECK_THROWS_AS(run_suite(l), ConfigError);
    auto t = small("ortho-poly");
    t.tol = -1;
    CHECK_THROWS_AS(run_suite(t), ConfigError);
}

TEST_CASE("all suites pass on small grids") {
    for (const auto& s : suite_names()) {
        auto cfg = small(s);
        if (s == "kernels") cfg.ell_max = 1;
        auto rep = run_suite(cfg);
        INFO(s);
        CHECK(rep.records.size() > 0);
        CHECK(rep.ok());
        for (const auto& r : rep.records) {
            INFO(r.id, " ", r.note);
            CHECK(r.pass);
            CHECK(r.suite == s);
        }
    }
}

TEST_CASE("modes") {
    auto c = small("bernstein-sato");
    c.n = std::vector<int>{3};
    c.lambda = parse_param_list("7/2");
    CHECK(run_suite(c).mode == "exact");
    c.lambda = parse_param_list("3.5");
    auto f = run_suite(c);
    CHECK(f.mode == "float");
    CHECK(f.ok());
    c.exact = true;
    CHECK(run_suite(c).mode == "exact");
}

TEST_CASE("reports are deterministic and order stable") {
    for (const char* s : {"rc-identities", "juhl-plancherel", "kernels"}) {
        auto cfg = small(s);
        cfg.ell_max = 1;
        cfg.threads = 1;
        auto a = run_suite(cfg);
        cfg.threads = 4;
        auto b = run_suite(cfg);
        auto c = run_suite(cfg);
        CHECK(a.json_lines(false) == b.json_lines(false));
        CHECK(b.json_lines(false) == c.json_lines(false));
        CHECK(a.csv(false) == c.csv(false));
        CHECK(count_lines(a.json_lines()) == a.records.size() + 1);
        CHECK(count_lines(a.csv()) == a.records.size() + 1);
    }
    auto cfg = small("ortho-poly");
    auto a = run_suite(cfg);
    cfg.seed = 99;
    // ortho-poly uses no random points
    CHECK(a.json_lines(false) == run_suite(cfg).json_lines(false));
}

TEST_CASE("failures are reported") {
    auto cfg = small("l2-plancherel");
    cfg.lambda1 = parse_param_list("2");
    cfg.lambda2 = parse_param_list("2");
    cfg.ell_max = 0;
    cfg.tol = 1e-30;
    auto rep = run_suite(cfg);
    CHECK_FALSE(rep.ok());
    CHECK(rep.failed() + rep.passed() == rep.records.size());
    auto js = rep.json_lines();
    CHECK(js.find("\"failed\":" + std::to_string(rep.failed())) != std::string::npos);
    CHECK(js.find("\"pass\":false") != std::string::npos);
}

TEST_CASE("test library") {
    auto lib = rc_test_library();
    CHECK(lib.size() == 12);
    for (const auto& f : lib) CHECK(f.arity() == 2);
}
