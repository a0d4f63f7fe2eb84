#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>

#include "mhd/domains.hpp"
#include "mhd/fixtures.hpp"
#include "mhd/rules.hpp"

using namespace mhd;

namespace {

Scf build_scf(const Domain& d, int n, const std::function<int(const std::vector<int>&)>& rule) {
    Scf f{n, d.size(), {}};
    long long total = checked_table_size(d.size(), n);
    f.table.resize(total);
    for (long long idx = 0; idx < total; ++idx)
        f.table[idx] = rule(decode_profile(static_cast<int>(idx), d.size(), n));
    return f;
}

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

}  // namespace

TEST_CASE("profile encoding round trips and guards") {
    for (int base : {2, 3, 5})
        for (int n : {1, 2, 3})
            for (int idx = 0; idx < checked_table_size(base, n); ++idx) {
                auto profile = decode_profile(idx, base, n);
                CHECK(static_cast<int>(profile.size()) == n);
                CHECK(encode_profile(profile, base) == idx);
            }
    // voter 0 most significant
    CHECK(encode_profile({1, 0}, 3) == 3);
    CHECK(decode_profile(5, 3, 2) == std::vector<int>{1, 2});
    CHECK(checked_table_size(10, 6) == 1'000'000);
    CHECK_THROWS_AS(checked_table_size(10, 7), ResourceError);
}

TEST_CASE("dictatorships are unanimous, strategy-proof, tops-only") {
    auto d = load_fixture("table1").domain->domain;
    for (int voter : {0, 1}) {
        auto f = make_dictatorship(d, voter, 2);
        CHECK(is_unanimous(f, d));
        CHECK(is_strategy_proof(f, d));
        CHECK(is_tops_only(f, d));
        auto vs = as_voting_scheme(f, d);
        REQUIRE(vs.has_value());
        // every alternative is some peak on this domain, so the compressed
        // table is total and returns the dictator's peak
        for (int a = 0; a < d.space.alt_count(); ++a)
            for (int b = 0; b < d.space.alt_count(); ++b)
                CHECK((*vs)({a, b}) == (voter == 0 ? a : b));
    }
    CHECK_THROWS_AS(make_dictatorship(d, 2, 2), InputError);
}

TEST_CASE("constant rules fail unanimity, rank readers fail tops-onlyness") {
    auto d = load_fixture("table1").domain->domain;
    auto constant = build_scf(d, 2, [](const std::vector<int>&) { return 3; });
    CHECK(!is_unanimous(constant, d));
    CHECK(is_strategy_proof(constant, d));
    // the outcome reads voter 0's second-ranked alternative
    auto second = build_scf(d, 1, [&](const std::vector<int>& pr) { return d[pr[0]].ranking[1]; });
    CHECK(!is_tops_only(second, d));
    CHECK(!as_voting_scheme(second, d).has_value());
    CHECK(!is_unanimous(second, d));
}

TEST_CASE("manipulation search returns a verifiable witness") {
    auto d = gen_universal(ProductSpace({2, 2}));
    auto f = build_scf(d, 2, [&](const std::vector<int>& pr) {
        return std::min(d[pr[0]].peak(), d[pr[1]].peak());
    });
    CHECK(is_unanimous(f, d));
    auto m = find_manipulation(f, d);
    REQUIRE(m.has_value());
    CHECK(f(m->profile) == m->sincere_outcome);
    auto lied = m->profile;
    lied[m->voter] = m->misreport;
    CHECK(f(lied) == m->misreport_outcome);
    CHECK(d[m->profile[m->voter]].prefers(m->misreport_outcome, m->sincere_outcome));
    CHECK(!is_strategy_proof(f, d));
    // the witness is lexicographically first
    CHECK(m->profile <= std::vector<int>(2, d.size() - 1));
}

TEST_CASE("ballot families validate unanimity bounds and monotonicity") {
    auto fbr = *load_fixture("lemma8_ballots").fbr;
    CHECK(fbr.n == 3);
    CHECK(validate_fbr(fbr, 5));
    auto bad_bottom = fbr;
    bad_bottom.ballots[0] = 1;
    CHECK(!validate_fbr(bad_bottom, 5));
    auto bad_top = fbr;
    bad_top.ballots[7] = 3;
    CHECK(!validate_fbr(bad_top, 5));
    auto nonmono = fbr;
    nonmono.ballots[3] = 0;  // below ballots[1] = 3
    CHECK(!validate_fbr(nonmono, 5));
    Fbr wrong_size{0, 3, {0, 4}};
    CHECK(!validate_fbr(wrong_size, 5));
}

TEST_CASE("ballot evaluation is unanimous and monotone in every peak") {
    auto fbr = *load_fixture("lemma8_ballots").fbr;
    CHECK(evaluate_fbr(fbr, {2, 0, 4}) == 2);
    CHECK(evaluate_fbr(fbr, {0, 2, 4}) == 1);
    for (int idx = 0; idx < 125; ++idx) {
        auto peaks = decode_profile(idx, 5, 3);
        int out = evaluate_fbr(fbr, peaks);
        CHECK(out >= 0);
        CHECK(out < 5);
        if (peaks[0] == peaks[1] && peaks[1] == peaks[2]) CHECK(out == peaks[0]);
        for (int v = 0; v < 3; ++v) {
            if (peaks[v] == 4) continue;
            auto up = peaks;
            ++up[v];
            CHECK(evaluate_fbr(fbr, up) >= out);
        }
    }
    CHECK_THROWS_AS(evaluate_fbr(fbr, {0, 0}), InputError);
    CHECK_THROWS_AS(evaluate_fbr(fbr, {0, 0, 5}), InputError);
}

TEST_CASE("constrained dictatorship detection") {
    auto fbr = *load_fixture("lemma8_ballots").fbr;
    CHECK(is_constrained_dictatorship(fbr, 1, 3));
    Fbr median{0, 3, {0, 0, 0, 2, 0, 2, 2, 2}};
    CHECK(validate_fbr(median, 3));
    CHECK(!is_constrained_dictatorship(median, 0, 2));
    Fbr dict{0, 2, {0, 2, 0, 2}};  // voter 0 decides
    CHECK(is_constrained_dictatorship(dict, 0, 2));
    CHECK_THROWS_AS(is_constrained_dictatorship(dict, 2, 0), InputError);
    CHECK_THROWS_AS(is_constrained_dictatorship(dict, 1, 1), InputError);
}

TEST_CASE("median rule equals its ballot form and is strategy-proof") {
    auto md = all_chain_orders(0, 3);
    auto med = make_median_marginal(md);
    Fbr ballots{0, 3, {0, 0, 0, 2, 0, 2, 2, 2}};  // min below majority, max at it
    CHECK(med == fbr_to_marginal_scf(ballots, md));
    CHECK(is_unanimous(med));
    CHECK(is_tops_only(med));
    // manipulable when reports need not be single-peaked (a 0-2-1 voter pulls
    // the median past their peak), strategy-proof once they are
    CHECK(!is_strategy_proof(med));
    auto sp = single_peaked_orders(0, 3);
    CHECK(sp.size() == 4);
    auto med_sp = make_median_marginal(sp);
    CHECK(med_sp == fbr_to_marginal_scf(ballots, sp));
    CHECK(!find_manipulation(med_sp).has_value());
    CHECK(is_strategy_proof(med_sp));
}

TEST_CASE("ballot rules are strategy-proof over single-peaked reports") {
    auto fbr = *load_fixture("lemma8_ballots").fbr;
    auto sp = single_peaked_orders(fbr.component, 5);
    CHECK(sp.size() == 16);
    auto f = fbr_to_marginal_scf(fbr, sp);
    CHECK(is_unanimous(f));
    CHECK(is_tops_only(f));
    CHECK(is_strategy_proof(f));
    for (int idx = 0; idx < static_cast<int>(f.table.size()); ++idx) {
        auto profile = decode_profile(idx, f.domain_size(), f.n);
        std::vector<int> peaks;
        for (int pi : profile) peaks.push_back(sp[pi].peak());
        CHECK(f.table[idx] == evaluate_fbr(fbr, peaks));
    }
}

TEST_CASE("marginal anti-dictators are manipulable") {
    std::vector<MarginalOrder> md = {MarginalOrder::from_ranking(0, {0, 1}),
                                     MarginalOrder::from_ranking(0, {1, 0})};
    MarginalScf f{0, 2, md, {}};
    f.table.resize(4);
    for (int idx = 0; idx < 4; ++idx)
        f.table[idx] = md[decode_profile(idx, 2, 2)[0]].ranking.back();
    auto m = find_manipulation(f);
    REQUIRE(m.has_value());
    CHECK(m->voter == 0);
    CHECK(md[m->profile[0]].prefers(m->misreport_outcome, m->sincere_outcome));
}

TEST_CASE("decompose splits component-wise rules and round trips") {
    auto d = load_fixture("table1").domain->domain;
    auto f = make_dictatorship(d, 0, 2);
    auto res = decompose(f, d);
    REQUIRE(res.ok);
    REQUIRE(res.marginals.size() == 2);
    for (int s = 0; s < 2; ++s) {
        CHECK(res.marginals[s].component == s);
        CHECK(res.marginals[s] ==
              make_marginal_dictatorship(induced_marginal_domain(d, s), 0, 2));
    }
    CHECK(assemble(res.marginals, d) == f);
    // and the other direction: assemble then decompose recovers the parts
    auto g = assemble(res.marginals, d);
    auto back = decompose(g, d);
    REQUIRE(back.ok);
    CHECK(back.marginals == res.marginals);
}

TEST_CASE("decompose rejects rules with cross-component dependence") {
    auto d = gen_universal(ProductSpace({2, 2}));
    auto f = build_scf(d, 2, [&](const std::vector<int>& pr) {
        return std::min(d[pr[0]].peak(), d[pr[1]].peak());
    });
    auto res = decompose(f, d);
    CHECK(!res.ok);
    CHECK(res.component >= 0);
    REQUIRE(res.profile_a.size() == 2);
    REQUIRE(res.profile_b.size() == 2);
    // the witness profiles agree on every voter's peak in that component yet
    // the rule picks different elements there
    int s = res.component;
    for (int v = 0; v < 2; ++v)
        CHECK(d.space.decode(d[res.profile_a[v]].peak())[s] ==
              d.space.decode(d[res.profile_b[v]].peak())[s]);
    CHECK(d.space.decode(f(res.profile_a))[s] != d.space.decode(f(res.profile_b))[s]);
}

TEST_CASE("assemble validates its inputs") {
    auto d = load_fixture("table1").domain->domain;
    auto parts = decompose(make_dictatorship(d, 1, 2), d).marginals;
    CHECK_THROWS_AS(assemble({parts[0]}, d), InputError);
    auto swapped = parts;
    std::swap(swapped[0], swapped[1]);
    CHECK_THROWS_AS(assemble(swapped, d), InputError);
    auto mismatched = parts;
    mismatched[1].n = 3;
    CHECK_THROWS_AS(assemble(mismatched, d), InputError);
}
