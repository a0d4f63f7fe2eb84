#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mhd/fixtures.hpp"

using namespace mhd;

TEST_CASE("every fixture assertion list verifies") {
    const std::map<std::string, long long> expected = {
        {"table1", 9}, {"example1", 5}, {"lemma8_ballots", 4}, {"appendixA_graph", 10}};
    for (const auto& [name, count] : expected) {
        auto rep = run_fixture_assertions(name);
        CHECK(rep.status == Status::Verified);
        CHECK(rep.counts.at("assertions") == count);
        CHECK(rep.witnesses.empty());
        CHECK(!rep.scope.empty());
    }
    CHECK_THROWS_AS(load_fixture("nope"), InputError);
    CHECK_THROWS_AS(run_fixture_assertions("nope"), InputError);
}

TEST_CASE("the 30-preference fixture matches its transcription") {
    auto fx = load_fixture("table1");
    const auto& d = fx.domain->domain;
    CHECK(d.size() == 30);
    CHECK(d.space.sizes() == std::vector<int>{3, 2});
    // first column: the base ordering of the grid
    std::vector<Alt> first = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}};
    for (int k = 0; k < 6; ++k) CHECK(d.space.decode(d[0].ranking[k]) == first[k]);
    // last column reverses the first
    CHECK(is_complete_reversal(d[0], d[29]));
    CHECK(fx.thresholds->lower == Alt{0, 0});
    CHECK(fx.thresholds->upper == Alt{2, 0});
    // peak blocks cover every alternative
    std::set<int> peaks;
    for (const auto& p : d.prefs) peaks.insert(p.peak());
    CHECK(static_cast<int>(peaks.size()) == d.space.alt_count());
}

TEST_CASE("fixture files on disk equal the in-memory transcription") {
    for (const char* name : {"table1", "example1"}) {
        std::ifstream in(std::string(DATA_DIR) + "/" + name + ".domain");
        REQUIRE(in.good());
        std::ostringstream ss;
        ss << in.rdbuf();
        auto parsed = parse_domain(ss.str());
        auto fx = *load_fixture(name).domain;
        CHECK(parsed.domain.prefs == fx.domain.prefs);
        CHECK(parsed.labels == fx.labels);
    }
    std::ifstream in(std::string(DATA_DIR) + "/lemma8.fbr");
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK(parse_fbr(ss.str()) == *load_fixture("lemma8_ballots").fbr);
}

TEST_CASE("the two-preference fixture pairs a separable and a non-separable order") {
    auto fx = load_fixture("example1");
    const auto& d = fx.domain->domain;
    CHECK(d.size() == 2);
    CHECK(is_separable(d.space, d[0]));
    CHECK(!is_separable(d.space, d[1]));
    for (const auto& p : d.prefs) CHECK(is_mh_preference(d.space, p, *fx.thresholds));
}
