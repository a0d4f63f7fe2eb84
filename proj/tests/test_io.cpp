#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mhd/fixtures.hpp"
#include "mhd/io.hpp"

using namespace mhd;

namespace {

std::string slurp(std::string path) {
    path = std::string(DATA_DIR) + "/" + path;
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("domain files round trip through the fixture") {
    auto fx = *load_fixture("table1").domain;
    std::string text = serialize_domain(fx);
    CHECK(text == slurp("table1.domain"));
    auto back = parse_domain(text);
    CHECK(back.domain.prefs == fx.domain.prefs);
    CHECK(back.labels == fx.labels);
    CHECK(back.label_of(0, 2) == "3");
    CHECK(back.element_of(1, "0") == 0);
    CHECK(back.alt_label(back.domain.space.encode({2, 1})) == "3,1");
    CHECK_THROWS_AS(back.element_of(0, "7"), InputError);

    auto ex = *load_fixture("example1").domain;
    CHECK(parse_domain(slurp("example1.domain")).domain.prefs == ex.domain.prefs);
}

TEST_CASE("unlabeled components read and write numeric elements") {
    std::string text =
        "space 2x2\n"
        "0,0;0,1;1,0;1,1\n"
        "1,1;1,0;0,1;0,0\n";
    auto ld = parse_domain(text);
    CHECK(ld.domain.size() == 2);
    CHECK(ld.domain[1].peak() == 3);
    CHECK(serialize_domain(ld) == text);
}

TEST_CASE("domain parse errors carry line numbers") {
    auto error_of = [](const std::string& text) {
        try {
            parse_domain(text);
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(error_of("spaces 3x2\n") .find("line 1") != std::string::npos);
    CHECK(error_of("space 3\n").find("line 1") != std::string::npos);
    std::string header = "space 2x2\nlabels 1: a,b\n";
    CHECK(error_of(header + "a,0;b,0;a,1\n").find("line 3") != std::string::npos);
    CHECK(error_of(header + "a,0;a,0;b,0;b,1\n").find("line 3") != std::string::npos);
    CHECK(error_of(header + "c,0;a,0;b,0;b,1\n").find("line 3") != std::string::npos);
    CHECK(error_of(header + "a,0,0;b,0;a,1;b,1\n").find("line 3") != std::string::npos);
    std::string one = "a,0;b,0;a,1;b,1\n";
    CHECK(error_of(header + one + one).find("line 4") != std::string::npos);  // duplicate
    CHECK(error_of("space 2x2\nlabels 3: a,b\n").find("line 2") != std::string::npos);
    CHECK(error_of("space 2x2\nlabels 1: a\n").find("line 2") != std::string::npos);
    // comments and blank lines do not disturb numbering
    std::string numeric = "0,0;1,0;0,1;1,1\n";
    CHECK(error_of("# c\n\nspace 2x2\n" + numeric + "bad\n").find("line 5") != std::string::npos);
}

TEST_CASE("threshold strings round trip in domain labels") {
    auto fx = load_fixture("table1");
    auto t = parse_thresholds("1,0:3,0", *fx.domain);
    CHECK(t.lower == Alt{0, 0});
    CHECK(t.upper == Alt{2, 0});
    CHECK(serialize_thresholds(t, *fx.domain) == "1,0:3,0");
    CHECK(t.lower == fx.thresholds->lower);
    CHECK_THROWS_AS(parse_thresholds("1,0", *fx.domain), InputError);
    CHECK_THROWS_AS(parse_thresholds("1,0:2,0", *fx.domain), InputError);  // span 2
    CHECK_THROWS_AS(parse_thresholds("1,0:9,0", *fx.domain), InputError);
}

TEST_CASE("rule tables round trip with 1-based indices") {
    auto fx = *load_fixture("table1").domain;
    auto f = make_dictatorship(fx.domain, 1, 2);
    std::string text = serialize_scf(f, fx, "table1");
    auto [back, name] = parse_scf(text, fx);
    CHECK(name == "table1");
    CHECK(back == f);
    CHECK(text.find("scf n=2 domain=table1") == 0);
    CHECK(text.find("1 1 -> 1,0") != std::string::npos);
    // profiles must be complete and ascending
    auto lines = text.substr(0, text.rfind("30 30")) + "\n";
    CHECK_THROWS_AS(parse_scf(lines, fx), InputError);
}

TEST_CASE("ballot files round trip") {
    auto f = *load_fixture("lemma8_ballots").fbr;
    std::string text = serialize_fbr(f);
    CHECK(text == slurp("lemma8.fbr"));
    CHECK(parse_fbr(text) == f);
    CHECK_THROWS_AS(parse_fbr("fbr s=1\n"), InputError);
    CHECK_THROWS_AS(parse_fbr("fbr s=1 n=2\nJ=0 b=0\n"), InputError);  // missing coalitions
    CHECK_THROWS_AS(parse_fbr("fbr s=1 n=1\nJ=0 b=0\nJ=9 b=1\n"), InputError);
}

TEST_CASE("graph edge lists are sorted and offset") {
    Graph g({0, 1, 2});
    g.add_edge(1, 2, "adjacent+");
    g.add_edge(0, 1, "adjacent");
    CHECK(graph_edge_list(g) == "0 1 adjacent\n1 2 adjacent+\n");
    CHECK(graph_edge_list(g, 1) == "1 2 adjacent\n2 3 adjacent+\n");
}

TEST_CASE("reports render as text and as machine-readable JSON") {
    VerificationReport rep;
    rep.claim = "demo claim";
    rep.status = Status::Refuted;
    rep.scope = "n=2, space 2x2";
    rep.counts["sp_rules"] = 16;
    rep.witnesses = {"first witness"};
    auto text = emit_report(rep, false);
    CHECK(text.find("CLAIM: demo claim") != std::string::npos);
    CHECK(text.find("STATUS: refuted") != std::string::npos);
    CHECK(text.find("SCOPE: n=2, space 2x2") != std::string::npos);
    CHECK(text.find("sp_rules") != std::string::npos);
    CHECK(text.find("first witness") != std::string::npos);
    auto parsed = nlohmann::json::parse(emit_report(rep, true));
    CHECK(parsed["status"] == "refuted");
    CHECK(parsed["counts"]["sp_rules"] == 16);
    CHECK(parsed["witnesses"][0] == "first witness");

    CHECK(status_name(Status::Verified) == "verified");
    CHECK(status_name(Status::BudgetExhausted) == "budget-exhausted");
    CHECK(status_name(Status::HypothesisUnmet) == "hypothesis-unmet");
    CHECK(exit_code_for(Status::Verified) == 0);
    CHECK(exit_code_for(Status::Refuted) == 1);
    CHECK(exit_code_for(Status::HypothesisUnmet) == 2);
    CHECK(exit_code_for(Status::BudgetExhausted) == 3);
}
