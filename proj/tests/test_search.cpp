#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "mhd/fixtures.hpp"
#include "mhd/graphs.hpp"
#include "mhd/search.hpp"

using namespace mhd;

namespace {

std::vector<MarginalOrder> all_chain_orders(int component, int k) {
    std::vector<MarginalOrder> out;
    std::vector<int> r(k);
    std::iota(r.begin(), r.end(), 0);
    do out.push_back(MarginalOrder::from_ranking(component, r));
    while (std::next_permutation(r.begin(), r.end()));
    return out;
}

std::vector<MarginalOrder> single_peaked_orders(int component, int k) {
    std::vector<MarginalOrder> out;
    for (const auto& m : all_chain_orders(component, k)) {
        bool ok = true;
        for (int a = 0; a < k && ok; ++a)
            for (int b = 0; b < k && ok; ++b)
                if (a != b && in_interior(m.peak(), a, b) && !m.prefers(a, b)) ok = false;
        if (ok) out.push_back(m);
    }
    return out;
}

std::set<std::vector<int>> tables_of(const std::vector<MarginalScf>& rules) {
    std::set<std::vector<int>> out;
    for (const auto& r : rules) out.insert(r.table);
    return out;
}

}  // namespace

TEST_CASE("ballot family enumeration matches a naive lattice filter") {
    CHECK(enum_fbrs(2, 0, 2).size() == 4);
    CHECK(enum_fbrs(5, 0, 1).size() == 1);
    auto nine = enum_fbrs(3, 0, 2);
    CHECK(nine.size() == 9);
    for (const auto& f : nine) {
        CHECK(validate_fbr(f, 3));
        CHECK(f.component == 0);
    }
    CHECK(std::is_sorted(nine.begin(), nine.end(), [](const Fbr& a, const Fbr& b) {
        return a.ballots < b.ballots;
    }));
    // oracle: filter every ballot vector over the 4 coalitions
    std::set<std::vector<int>> naive;
    for (int idx = 0; idx < 81; ++idx) {
        Fbr cand{0, 2, decode_profile(idx, 3, 4)};
        if (validate_fbr(cand, 3)) naive.insert(cand.ballots);
    }
    std::set<std::vector<int>> got;
    for (const auto& f : nine) got.insert(f.ballots);
    CHECK(got == naive);

    auto constrained = enum_fbrs(3, 0, 2, std::make_pair(0, 2));
    CHECK(constrained.size() == 2);
    for (const auto& f : constrained) CHECK(is_constrained_dictatorship(f, 0, 2));
}

TEST_CASE("marginal rule enumeration matches exhaustive table filters") {
    // binary chain: all 16 two-voter tables, 4 survive
    auto two = all_chain_orders(0, 2);
    auto res2 = enum_sp_marginal_rules(two, 2);
    CHECK(res2.status == Status::Verified);
    CHECK(res2.rules.size() == 4);
    std::set<std::vector<int>> naive2;
    for (int idx = 0; idx < 16; ++idx) {
        MarginalScf cand{0, 2, two, decode_profile(idx, 2, 4)};
        if (is_unanimous(cand) && is_strategy_proof(cand)) naive2.insert(cand.table);
    }
    CHECK(tables_of(res2.rules) == naive2);

    // full 3-chain domain: only the dictators survive; oracle over all
    // peak-profile tables, lifted to the 36-profile table
    auto six = all_chain_orders(0, 3);
    auto res6 = enum_sp_marginal_rules(six, 2);
    CHECK(res6.status == Status::Verified);
    CHECK(res6.rules.size() == 2);
    for (const auto& r : res6.rules) CHECK(is_tops_only(r));
    std::set<std::vector<int>> naive6;
    for (int idx = 0; idx < 19683; ++idx) {
        auto peak_table = decode_profile(idx, 3, 9);
        MarginalScf cand{0, 2, six, std::vector<int>(36)};
        for (int p = 0; p < 36; ++p) {
            auto profile = decode_profile(p, 6, 2);
            cand.table[p] = peak_table[six[profile[0]].peak() * 3 + six[profile[1]].peak()];
        }
        if (is_unanimous(cand) && is_strategy_proof(cand)) naive6.insert(cand.table);
    }
    CHECK(tables_of(res6.rules) == naive6);

    // single-peaked 3-chain: exactly the ballot rules
    auto sp = single_peaked_orders(0, 3);
    auto res_sp = enum_sp_marginal_rules(sp, 2);
    CHECK(res_sp.rules.size() == 9);
    std::set<std::vector<int>> fbr_tables;
    for (const auto& f : enum_fbrs(3, 0, 2)) fbr_tables.insert(fbr_to_marginal_scf(f, sp).table);
    CHECK(tables_of(res_sp.rules) == fbr_tables);

    // worker split is deterministic
    auto res_w = enum_sp_marginal_rules(six, 2, {}, 4);
    CHECK(res_w.rules == res6.rules);
}

TEST_CASE("tiny budgets stop the search and say so") {
    auto six = all_chain_orders(0, 3);
    EnumerationBudget tiny{1, 300.0};
    CHECK(enum_sp_marginal_rules(six, 2, tiny).status == Status::BudgetExhausted);
    auto d = load_fixture("table1").domain->domain;
    CHECK(enum_sp_rules(d, 2, EnumMode::Full, tiny).status == Status::BudgetExhausted);
}

TEST_CASE("full and peak-table enumeration agree on a product domain") {
    auto space = ProductSpace({2, 2});
    auto d = gen_mh_domain(space, degenerate_thresholds(space));
    auto full = enum_sp_rules(d, 2, EnumMode::Full);
    auto tops = enum_sp_rules(d, 2, EnumMode::TopsOnly);
    CHECK(full.status == Status::Verified);
    CHECK(tops.status == Status::Verified);
    CHECK(full.rules.size() == 16);
    CHECK(full.rules == tops.rules);
    for (int voter : {0, 1}) {
        auto dict = make_dictatorship(d, voter, 2);
        CHECK(std::find(full.rules.begin(), full.rules.end(), dict) != full.rules.end());
    }
    // the 16 rules are exactly the pairings of per-component ballot rules
    std::set<std::vector<int>> assemblies;
    for (const auto& f0 : enum_fbrs(2, 0, 2))
        for (const auto& f1 : enum_fbrs(2, 1, 2)) {
            std::vector<MarginalScf> parts = {
                fbr_to_marginal_scf(f0, induced_marginal_domain(d, 0)),
                fbr_to_marginal_scf(f1, induced_marginal_domain(d, 1))};
            assemblies.insert(assemble(parts, d).table);
        }
    std::set<std::vector<int>> enumerated;
    for (const auto& r : full.rules) enumerated.insert(r.table);
    CHECK(enumerated == assemblies);
}

TEST_CASE("strategy-proof marginal rules equal ballot rules on hybrid domains") {
    auto fx = load_fixture("table1");
    const auto& d = fx.domain->domain;
    const auto& t = *fx.thresholds;
    auto r0 = verify_proposition1(d, t, 0, 2);
    CHECK(r0.status == Status::Verified);
    CHECK(r0.counts.at("sp_marginal_rules") == 2);
    CHECK(r0.counts.at("fbrs") == 2);
    CHECK(!r0.scope.empty());
    auto r1 = verify_proposition1(d, t, 1, 2);
    CHECK(r1.status == Status::Verified);
    CHECK(r1.counts.at("sp_marginal_rules") == 4);
    CHECK(r1.counts.at("fbrs") == 4);

    // a 4-chain component with a proper threshold interval
    ProductSpace wide({4, 2});
    Thresholds wt{{1, 0}, {3, 0}};
    auto wd = gen_mh_domain(wide, wt);
    auto rw = verify_proposition1(wd, wt, 0, 2);
    CHECK(rw.status == Status::Verified);
    CHECK(rw.counts.at("sp_marginal_rules") == rw.counts.at("fbrs"));
}

TEST_CASE("decomposability verification runs both directions") {
    auto space = ProductSpace({2, 2});
    auto mh = gen_mh_domain(space, degenerate_thresholds(space));
    auto ok = verify_decomposable_domain(mh, 2);
    CHECK(ok.status == Status::Verified);
    CHECK(ok.counts.at("sp_rules") == 16);
    CHECK(ok.witnesses.empty());

    auto uni = gen_universal(space);
    auto bad = verify_decomposable_domain(uni, 2);
    CHECK(bad.status == Status::Refuted);
    CHECK(!bad.witnesses.empty());

    auto d = load_fixture("table1").domain->domain;
    auto fx = verify_decomposable_domain(d, 2);
    CHECK(fx.status == Status::Verified);
    CHECK(fx.counts.at("sp_rules") == 8);
}

TEST_CASE("the characterization holds on rich domains and is refused elsewhere") {
    auto space = ProductSpace({2, 2});
    auto mh = verify_theorem(gen_mh_domain(space, degenerate_thresholds(space)), 2);
    CHECK(mh.status == Status::Verified);
    CHECK(mh.counts.at("hybrid") == 1);
    CHECK(mh.counts.at("decomposable") == 1);
    auto uni = verify_theorem(gen_universal(space), 2);
    CHECK(uni.status == Status::Verified);
    CHECK(uni.counts.at("hybrid") == 0);
    CHECK(uni.counts.at("decomposable") == 0);

    auto d = load_fixture("table1").domain->domain;
    Domain thin(d.space, {d[0], d[29]});
    CHECK(!is_rich_domain(thin));
    CHECK(verify_theorem(thin, 2).status == Status::HypothesisUnmet);
}

TEST_CASE("enumerated rules read only peaks and respect component locality") {
    auto d = load_fixture("table1").domain->domain;
    auto res = enum_sp_rules(d, 2, EnumMode::Full);
    REQUIRE(res.status == Status::Verified);
    REQUIRE(res.rules.size() == 8);
    const auto& sp = d.space;
    for (const auto& f : res.rules) {
        CHECK(is_tops_only(f, d));
        for (int voter = 0; voter < 2; ++voter)
            for (int i = 0; i < d.size(); ++i)
                for (int j = 0; j < d.size(); ++j) {
                    Alt pi = sp.decode(d[i].peak());
                    Alt pj = sp.decode(d[j].peak());
                    auto diff = disagreement_set(pi, pj);
                    for (int other = 0; other < d.size(); ++other) {
                        std::vector<int> a(2), b(2);
                        a[voter] = i;
                        b[voter] = j;
                        a[1 - voter] = b[1 - voter] = other;
                        Alt oa = sp.decode(f(a));
                        Alt ob = sp.decode(f(b));
                        for (int t = 0; t < sp.components(); ++t) {
                            // switching one voter's report moves the outcome
                            // only in components where their peak moved
                            if (std::find(diff.begin(), diff.end(), t) == diff.end())
                                CHECK(oa[t] == ob[t]);
                        }
                    }
                }
    }
}
