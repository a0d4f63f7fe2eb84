#include "mhd/fixtures.hpp"

namespace mhd {

namespace {

// 30 preferences over 3x2, best first; first coordinate shown 1..3 in the
// shipped labels, stored 0-based here.
constexpr int kTable1[30][6][2] = {
    {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}},
    {{0, 0}, {2, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}},
    {{0, 0}, {2, 0}, {1, 0}, {0, 1}, {2, 1}, {1, 1}},
    {{0, 0}, {2, 0}, {0, 1}, {1, 0}, {2, 1}, {1, 1}},
    {{0, 0}, {0, 1}, {2, 0}, {1, 0}, {2, 1}, {1, 1}},
    {{0, 0}, {0, 1}, {2, 0}, {2, 1}, {1, 0}, {1, 1}},
    {{1, 0}, {0, 0}, {2, 0}, {1, 1}, {0, 1}, {2, 1}},
    {{1, 0}, {0, 0}, {1, 1}, {2, 0}, {0, 1}, {2, 1}},
    {{1, 0}, {1, 1}, {0, 0}, {2, 0}, {0, 1}, {2, 1}},
    {{1, 0}, {1, 1}, {0, 0}, {0, 1}, {2, 0}, {2, 1}},
    {{2, 0}, {0, 0}, {1, 0}, {2, 1}, {0, 1}, {1, 1}},
    {{2, 0}, {0, 0}, {2, 1}, {1, 0}, {0, 1}, {1, 1}},
    {{2, 0}, {2, 1}, {0, 0}, {1, 0}, {0, 1}, {1, 1}},
    {{2, 0}, {2, 1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}},
    {{0, 1}, {0, 0}, {2, 1}, {2, 0}, {1, 1}, {1, 0}},
    {{0, 1}, {0, 0}, {2, 1}, {1, 1}, {2, 0}, {1, 0}},
    {{0, 1}, {2, 1}, {0, 0}, {1, 1}, {2, 0}, {1, 0}},
    {{0, 1}, {2, 1}, {1, 1}, {0, 0}, {2, 0}, {1, 0}},
    {{1, 1}, {1, 0}, {0, 1}, {0, 0}, {2, 1}, {2, 0}},
    {{1, 1}, {1, 0}, {0, 1}, {2, 1}, {0, 0}, {2, 0}},
    {{1, 1}, {1, 0}, {2, 1}, {0, 1}, {0, 0}, {2, 0}},
    {{1, 1}, {1, 0}, {2, 1}, {0, 1}, {2, 0}, {0, 0}},
    {{1, 1}, {2, 1}, {1, 0}, {0, 1}, {2, 0}, {0, 0}},
    {{1, 1}, {2, 1}, {0, 1}, {1, 0}, {2, 0}, {0, 0}},
    {{2, 1}, {2, 0}, {0, 1}, {0, 0}, {1, 1}, {1, 0}},
    {{2, 1}, {2, 0}, {0, 1}, {1, 1}, {0, 0}, {1, 0}},
    {{2, 1}, {0, 1}, {2, 0}, {1, 1}, {0, 0}, {1, 0}},
    {{2, 1}, {0, 1}, {1, 1}, {2, 0}, {0, 0}, {1, 0}},
    {{2, 1}, {0, 1}, {1, 1}, {2, 0}, {1, 0}, {0, 0}},
    {{2, 1}, {1, 1}, {0, 1}, {2, 0}, {1, 0}, {0, 0}},
};

// Two preferences over 4x2: a separable one and a non-separable hybrid one.
constexpr int kExample1Base[8][2] = {{0, 0}, {1, 0}, {2, 0}, {3, 0},
                                     {0, 1}, {1, 1}, {2, 1}, {3, 1}};
constexpr int kExample1Hat[8][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1},
                                    {2, 0}, {3, 0}, {3, 1}, {2, 1}};

LabeledDomain table1_domain() {
    ProductSpace space({3, 2});
    std::vector<Preference> prefs;
    for (const auto& column : kTable1) {
        std::vector<int> ranking;
        for (const auto& alt : column) ranking.push_back(space.encode({alt[0], alt[1]}));
        prefs.push_back(Preference::from_ranking(space, std::move(ranking)));
    }
    return {Domain(space, std::move(prefs)), {{"1", "2", "3"}, {"0", "1"}}};
}

LabeledDomain example1_domain() {
    ProductSpace space({4, 2});
    std::vector<Preference> prefs;
    for (const auto* column : {kExample1Base, kExample1Hat}) {
        std::vector<int> ranking;
        for (int k = 0; k < 8; ++k) ranking.push_back(space.encode({column[k][0], column[k][1]}));
        prefs.push_back(Preference::from_ranking(space, std::move(ranking)));
    }
    return {Domain(space, std::move(prefs)), {{"l2", "l4", "l6", "l9"}, {"l3", "l8"}}};
}

Fbr lemma8_fbr() {
    // n=3 over a 5-chain with thresholds (1, 3): voter 1 (bit 0) is the
    // constrained dictator
    Fbr f{0, 3, std::vector<int>(8)};
    f.ballots[0b000] = 0;
    f.ballots[0b010] = 0;
    f.ballots[0b100] = 0;
    f.ballots[0b110] = 1;
    f.ballots[0b001] = 3;
    f.ballots[0b011] = 4;
    f.ballots[0b101] = 4;
    f.ballots[0b111] = 4;
    return f;
}

struct AssertionLog {
    VerificationReport rep;

    void check(const std::string& id, bool ok) {
        ++rep.counts["assertions"];
        if (!ok) {
            ++rep.counts["failed"];
            rep.status = Status::Refuted;
            rep.witnesses.push_back("assertion failed: " + id);
        }
    }
};

void assert_table1(AssertionLog& log) {
    auto ld = table1_domain();
    const auto& d = ld.domain;
    auto t = is_mh_domain(d);
    log.check("table1 hybrid with thresholds (1,0):(3,0)",
              t && t->lower == Alt{0, 0} && t->upper == Alt{2, 0});
    log.check("table1 component 1 induces all 6 marginal orders",
              induced_marginal_domain(d, 0).size() == 6);
    log.check("table1 component 2 induces both marginal orders",
              induced_marginal_domain(d, 1).size() == 2);
    log.check("table1 minimally rich", check_minimal_richness(d).ok);
    log.check("table1 reversal pair P1,P30",
              is_complete_reversal(d[0], d[29]) && is_separable(d.space, d[0]) &&
                  is_separable(d.space, d[29]));
    log.check("table1 diversity+", check_diversity_plus(d).ok);
    log.check("table1 interior+", check_interior_plus(d).ok);
    log.check("table1 exterior+", check_exterior_plus(d).ok);
    log.check("table1 rich", is_rich_domain(d));
}

void assert_example1(AssertionLog& log) {
    auto ld = example1_domain();
    const auto& d = ld.domain;
    Thresholds t{{1, 0}, {3, 0}};
    log.check("example1 first preference separable", is_separable(d.space, d[0]));
    log.check("example1 second preference not separable", !is_separable(d.space, d[1]));
    log.check("example1 first preference hybrid", is_mh_preference(d.space, d[0], t));
    log.check("example1 second preference hybrid", is_mh_preference(d.space, d[1], t));
    auto at_peak = induce_marginal(d.space, d[1], 0);
    auto away = induce_marginal_at(d.space, d[1], 0, {0, 1});
    log.check("example1 marginal depends on the fixed coordinate",
              at_peak.ranking == std::vector<int>{0, 1, 2, 3} &&
                  away.ranking == std::vector<int>{0, 1, 3, 2});
}

void assert_lemma8(AssertionLog& log) {
    Fbr f = lemma8_fbr();
    log.check("ballots satisfy unanimity and monotonicity", validate_fbr(f, 5));
    log.check("ballots form a constrained dictatorship for (2nd,4th)",
              is_constrained_dictatorship(f, 1, 3));
    log.check("inside the interval voter 1's peak passes through",
              evaluate_fbr(f, {2, 0, 4}) == 2);
    log.check("below the interval the outcome is the five-way median",
              evaluate_fbr(f, {0, 2, 4}) == 1);
}

void assert_appendixA(AssertionLog& log) {
    auto ld = table1_domain();
    const auto& d = ld.domain;
    Graph g = build_pref_graph(d);
    auto labeled_edge = [&](int u, int v, const char* label) {
        return g.has_edge(u, v) && g.edge_label(u, v) == label;
    };
    log.check("edge P1-P2 is a consecutive swap", labeled_edge(0, 1, kEdgeAdjacent));
    log.check("edge P6-P15 flips one component pair everywhere",
              labeled_edge(5, 14, kEdgeAdjacentPlus));
    log.check("edge P3-P11 present", g.has_edge(2, 10));
    log.check("edge P1-P7 present", g.has_edge(0, 6));
    log.check("edge P18-P28 present", g.has_edge(17, 27));
    log.check("edge P24-P30 present", g.has_edge(23, 29));
    const std::vector<std::pair<int, int>> blocks = {{0, 5},   {6, 9},   {10, 13},
                                                     {14, 17}, {18, 23}, {24, 29}};
    bool blocks_ok = true;
    for (auto [lo, hi] : blocks)
        for (int i = lo; i < hi; ++i)
            if (!g.has_edge(i, i + 1) || d[i].peak() != d[i + 1].peak()) blocks_ok = false;
    log.check("each equal-peak block forms a path", blocks_ok);

    const int a = d.space.encode({1, 0});
    const int b = d.space.encode({0, 1});
    auto prefs_at = [&](const std::vector<int>& idxs) {
        std::vector<Preference> out;
        for (int i : idxs) out.push_back(d[i]);
        return out;
    };
    std::vector<int> clockwise = {0, 1, 2, 3, 4, 5, 14, 15, 16, 17, 27, 28, 29, 23, 22};
    std::vector<int> counter = {0, 6, 7, 8, 9, 18, 19, 20, 21, 22};
    log.check("clockwise walk restores the pair (2,0),(1,1)",
              path_has_restoration(d.space, prefs_at(clockwise), a, b));
    log.check("counter-clockwise walk does not restore it",
              !path_has_restoration(d.space, prefs_at(counter), a, b));
    log.check("a no-restoration path from P1 to P23 exists",
              exists_norestoration_path(d, g, 0, 22, a, b).has_value());
}

}  // namespace

FixtureCase load_fixture(const std::string& name) {
    if (name == "table1")
        return {name, table1_domain(), Thresholds{{0, 0}, {2, 0}}, std::nullopt};
    if (name == "example1")
        return {name, example1_domain(), Thresholds{{1, 0}, {3, 0}}, std::nullopt};
    if (name == "lemma8_ballots") return {name, std::nullopt, std::nullopt, lemma8_fbr()};
    if (name == "appendixA_graph")
        return {name, table1_domain(), Thresholds{{0, 0}, {2, 0}}, std::nullopt};
    throw InputError("unknown fixture '" + name + "'");
}

VerificationReport run_fixture_assertions(const std::string& name) {
    AssertionLog log;
    log.rep.claim = "fixture " + name + " assertions";
    log.rep.status = Status::Verified;
    if (name == "table1") {
        log.rep.scope = "30 preferences over 3x2";
        assert_table1(log);
    } else if (name == "example1") {
        log.rep.scope = "2 preferences over 4x2";
        assert_example1(log);
    } else if (name == "lemma8_ballots") {
        log.rep.scope = "8 coalitions over a 5-chain, n=3";
        assert_lemma8(log);
    } else if (name == "appendixA_graph") {
        log.rep.scope = "preference graph of the 30-preference 3x2 domain";
        assert_appendixA(log);
    } else {
        throw InputError("unknown fixture '" + name + "'");
    }
    return log.rep;
}

}  // namespace mhd
