#include "mhd/rules.hpp"

#include <map>

namespace mhd {

long long checked_table_size(int base, int n, long long guard) {
    if (base <= 0 || n <= 0) throw InputError("table needs a positive base and voter count");
    long long size = 1;
    for (int i = 0; i < n; ++i) {
        size *= base;
        if (size > guard) throw ResourceError("rule table exceeds the size guard");
    }
    return size;
}

int encode_profile(const std::vector<int>& profile, int base) {
    int idx = 0;
    for (int v : profile) {
        if (v < 0 || v >= base) throw InputError("profile entry out of range");
        idx = idx * base + v;
    }
    return idx;
}

std::vector<int> decode_profile(int index, int base, int n) {
    std::vector<int> profile(n);
    for (int i = n - 1; i >= 0; --i) {
        profile[i] = index % base;
        index /= base;
    }
    return profile;
}

// ---- axioms ---------------------------------------------------------------------

namespace {

void check_scf(const Scf& f, const Domain& d) {
    if (f.domain_size != d.size()) throw InputError("rule table does not match the domain");
    long long expected = 1;
    for (int i = 0; i < f.n; ++i) expected *= f.domain_size;
    if (static_cast<long long>(f.table.size()) != expected)
        throw InputError("rule table has the wrong size");
}

void check_marginal(const MarginalScf& f) {
    long long expected = 1;
    for (int i = 0; i < f.n; ++i) expected *= f.domain_size();
    if (static_cast<long long>(f.table.size()) != expected)
        throw InputError("marginal rule table has the wrong size");
}

}  // namespace

bool is_unanimous(const Scf& f, const Domain& d) {
    check_scf(f, d);
    std::vector<int> profile(f.n);
    for (int i = 0; i < d.size(); ++i) {
        std::fill(profile.begin(), profile.end(), i);
        if (f(profile) != d[i].peak()) return false;
    }
    // profiles with equal peaks across distinct preferences
    for (int idx = 0; idx < f.profile_count(); ++idx) {
        auto prof = decode_profile(idx, f.domain_size, f.n);
        int peak = d[prof[0]].peak();
        bool same = true;
        for (int i = 1; i < f.n; ++i)
            if (d[prof[i]].peak() != peak) same = false;
        if (same && f.table[idx] != peak) return false;
    }
    return true;
}

bool is_unanimous(const MarginalScf& f) {
    check_marginal(f);
    long long count = f.table.size();
    for (int idx = 0; idx < count; ++idx) {
        auto prof = decode_profile(idx, f.domain_size(), f.n);
        int peak = f.marginal_domain[prof[0]].peak();
        bool same = true;
        for (int i = 1; i < f.n; ++i)
            if (f.marginal_domain[prof[i]].peak() != peak) same = false;
        if (same && f.table[idx] != peak) return false;
    }
    return true;
}

std::optional<VotingScheme> as_voting_scheme(const Scf& f, const Domain& d) {
    check_scf(f, d);
    long long size = checked_table_size(d.space.alt_count(), f.n);
    VotingScheme g{d.space, f.n, std::vector<int>(size, -1)};
    for (int idx = 0; idx < f.profile_count(); ++idx) {
        auto prof = decode_profile(idx, f.domain_size, f.n);
        std::vector<int> peaks(f.n);
        for (int i = 0; i < f.n; ++i) peaks[i] = d[prof[i]].peak();
        int cell = encode_profile(peaks, d.space.alt_count());
        if (g.table[cell] == -1)
            g.table[cell] = f.table[idx];
        else if (g.table[cell] != f.table[idx])
            return std::nullopt;
    }
    return g;
}

bool is_tops_only(const Scf& f, const Domain& d) { return as_voting_scheme(f, d).has_value(); }

bool is_tops_only(const MarginalScf& f) {
    check_marginal(f);
    std::map<std::vector<int>, int> by_peaks;
    long long count = f.table.size();
    for (int idx = 0; idx < count; ++idx) {
        auto prof = decode_profile(idx, f.domain_size(), f.n);
        std::vector<int> peaks(f.n);
        for (int i = 0; i < f.n; ++i) peaks[i] = f.marginal_domain[prof[i]].peak();
        auto [it, inserted] = by_peaks.emplace(std::move(peaks), f.table[idx]);
        if (!inserted && it->second != f.table[idx]) return false;
    }
    return true;
}

namespace {

// Shared brute-force manipulation search; prefers(voterPref, a, b) decides
// strict preference of outcomes.
template <typename Outcome, typename Prefers>
std::optional<Manipulation> manipulation_search(const std::vector<int>& table, int base, int n,
                                                Outcome&& outcome, Prefers&& prefers) {
    for (int idx = 0; idx < static_cast<int>(table.size()); ++idx) {
        auto prof = decode_profile(idx, base, n);
        int sincere = table[idx];
        for (int i = 0; i < n; ++i) {
            int truth = prof[i];
            for (int dev = 0; dev < base; ++dev) {
                if (dev == truth) continue;
                auto misprof = prof;
                misprof[i] = dev;
                int lied = outcome(misprof);
                if (lied != sincere && prefers(truth, lied, sincere))
                    return Manipulation{i, prof, dev, sincere, lied};
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Manipulation> find_manipulation(const Scf& f, const Domain& d) {
    check_scf(f, d);
    return manipulation_search(
        f.table, f.domain_size, f.n, [&](const std::vector<int>& p) { return f(p); },
        [&](int truth, int a, int b) { return d[truth].prefers(a, b); });
}

std::optional<Manipulation> find_manipulation(const MarginalScf& f) {
    check_marginal(f);
    return manipulation_search(
        f.table, f.domain_size(), f.n, [&](const std::vector<int>& p) { return f(p); },
        [&](int truth, int a, int b) { return f.marginal_domain[truth].prefers(a, b); });
}

bool is_strategy_proof(const Scf& f, const Domain& d) { return !find_manipulation(f, d); }
bool is_strategy_proof(const MarginalScf& f) { return !find_manipulation(f); }

// ---- fixed ballot rules -----------------------------------------------------------

bool validate_fbr(const Fbr& f, int k) {
    if (f.n < 1 || f.n > 16) return false;
    const int masks = 1 << f.n;
    if (static_cast<int>(f.ballots.size()) != masks) return false;
    for (int b : f.ballots)
        if (b < 0 || b >= k) return false;
    if (f.ballots[0] != 0 || f.ballots[masks - 1] != k - 1) return false;
    for (int mask = 0; mask < masks; ++mask)
        for (int i = 0; i < f.n; ++i)
            if (!(mask & (1 << i)) && f.ballots[mask] > f.ballots[mask | (1 << i)]) return false;
    return true;
}

int evaluate_fbr(const Fbr& f, const std::vector<int>& peaks) {
    if (static_cast<int>(peaks.size()) != f.n) throw InputError("peak count does not match n");
    const int masks = 1 << f.n;
    for (int p : peaks)
        if (p < 0 || p > f.ballots[masks - 1]) throw InputError("peak outside the chain");
    int best = f.ballots[0];
    for (int mask = 1; mask < masks; ++mask) {
        int v = f.ballots[mask];
        for (int i = 0; i < f.n; ++i)
            if (mask & (1 << i)) v = std::min(v, peaks[i]);
        best = std::max(best, v);
    }
    return best;
}

bool is_constrained_dictatorship(const Fbr& f, int lower, int upper) {
    if (lower >= upper) throw InputError("constrained dictatorship needs lower below upper");
    const int masks = 1 << f.n;
    for (int i = 0; i < f.n; ++i) {
        bool ok = true;
        for (int mask = 0; mask < masks && ok; ++mask) {
            if (mask & (1 << i))
                ok = f.ballots[mask] >= upper;
            else
                ok = f.ballots[mask] <= lower;
        }
        if (ok) return true;
    }
    return false;
}

MarginalScf fbr_to_marginal_scf(const Fbr& f, std::vector<MarginalOrder> marginal_domain) {
    if (marginal_domain.empty()) throw InputError("empty marginal domain");
    const int q = static_cast<int>(marginal_domain.size());
    long long size = checked_table_size(q, f.n);
    MarginalScf out{f.component, f.n, std::move(marginal_domain), std::vector<int>(size)};
    std::vector<int> peaks(f.n);
    for (int idx = 0; idx < size; ++idx) {
        auto prof = decode_profile(idx, q, f.n);
        for (int i = 0; i < f.n; ++i) peaks[i] = out.marginal_domain[prof[i]].peak();
        out.table[idx] = evaluate_fbr(f, peaks);
    }
    return out;
}

// ---- constructions ---------------------------------------------------------------

Scf make_dictatorship(const Domain& d, int voter, int n, long long guard) {
    if (voter < 0 || voter >= n) throw InputError("dictator index out of range");
    long long size = checked_table_size(d.size(), n, guard);
    Scf f{n, d.size(), std::vector<int>(size)};
    for (int idx = 0; idx < size; ++idx)
        f.table[idx] = d[decode_profile(idx, d.size(), n)[voter]].peak();
    return f;
}

MarginalScf make_marginal_dictatorship(std::vector<MarginalOrder> marginal_domain, int voter,
                                       int n, long long guard) {
    if (voter < 0 || voter >= n) throw InputError("dictator index out of range");
    const int q = static_cast<int>(marginal_domain.size());
    long long size = checked_table_size(q, n, guard);
    MarginalScf f{marginal_domain.front().component, n, std::move(marginal_domain),
                  std::vector<int>(size)};
    for (int idx = 0; idx < size; ++idx)
        f.table[idx] = f.marginal_domain[decode_profile(idx, q, n)[voter]].peak();
    return f;
}

MarginalScf make_median_marginal(std::vector<MarginalOrder> marginal_domain, long long guard) {
    const int n = 3;
    const int q = static_cast<int>(marginal_domain.size());
    if (q == 0) throw InputError("empty marginal domain");
    long long size = checked_table_size(q, n, guard);
    MarginalScf f{marginal_domain.front().component, n, std::move(marginal_domain),
                  std::vector<int>(size)};
    for (int idx = 0; idx < size; ++idx) {
        auto prof = decode_profile(idx, q, n);
        std::vector<int> peaks(n);
        for (int i = 0; i < n; ++i) peaks[i] = f.marginal_domain[prof[i]].peak();
        std::sort(peaks.begin(), peaks.end());
        f.table[idx] = peaks[1];
    }
    return f;
}

// ---- decomposition ---------------------------------------------------------------

DecomposeResult decompose(const Scf& f, const Domain& d) {
    check_scf(f, d);
    const int m = d.space.components();
    DecomposeResult out;
    for (int t = 0; t < m; ++t) {
        // component outcome keyed by the voters' component-t peak coordinates
        std::map<std::vector<int>, std::pair<int, int>> by_coords;  // -> (outcome, profile)
        for (int idx = 0; idx < f.profile_count(); ++idx) {
            auto prof = decode_profile(idx, f.domain_size, f.n);
            std::vector<int> coords(f.n);
            for (int i = 0; i < f.n; ++i) coords[i] = d.space.decode(d[prof[i]].peak())[t];
            int outcome = d.space.decode(f.table[idx])[t];
            auto [it, inserted] = by_coords.emplace(coords, std::make_pair(outcome, idx));
            if (!inserted && it->second.first != outcome) {
                out.component = t;
                out.profile_a = decode_profile(it->second.second, f.domain_size, f.n);
                out.profile_b = prof;
                return out;
            }
        }
        auto ds = induced_marginal_domain(d, t);
        const int q = static_cast<int>(ds.size());
        long long size = checked_table_size(q, f.n);
        MarginalScf ft{t, f.n, ds, std::vector<int>(size)};
        for (int idx = 0; idx < size; ++idx) {
            auto prof = decode_profile(idx, q, f.n);
            std::vector<int> coords(f.n);
            for (int i = 0; i < f.n; ++i) coords[i] = ds[prof[i]].peak();
            ft.table[idx] = by_coords.at(coords).first;
        }
        out.marginals.push_back(std::move(ft));
    }
    if (!(assemble(out.marginals, d).table == f.table))
        throw std::logic_error("decomposition did not reproduce the rule table");
    out.ok = true;
    return out;
}

Scf assemble(const std::vector<MarginalScf>& marginals, const Domain& d, long long guard) {
    const int m = d.space.components();
    if (static_cast<int>(marginals.size()) != m)
        throw InputError("need one marginal rule per component");
    const int n = marginals.front().n;
    for (int s = 0; s < m; ++s)
        if (marginals[s].component != s || marginals[s].n != n)
            throw InputError("marginal rules disagree on component or voter count");
    // induced marginal of each preference, as an index into each rule's domain
    std::vector<std::vector<int>> midx(m, std::vector<int>(d.size()));
    for (int s = 0; s < m; ++s)
        for (int i = 0; i < d.size(); ++i) {
            midx[s][i] = marginal_index(marginals[s].marginal_domain,
                                        induce_marginal(d.space, d[i], s));
            if (midx[s][i] < 0)
                throw InputError("marginal rule undefined on an induced marginal");
        }
    long long size = checked_table_size(d.size(), n, guard);
    Scf f{n, d.size(), std::vector<int>(size)};
    std::vector<int> mprof(n);
    Alt coords(m);
    for (int idx = 0; idx < size; ++idx) {
        auto prof = decode_profile(idx, d.size(), n);
        for (int s = 0; s < m; ++s) {
            for (int i = 0; i < n; ++i) mprof[i] = midx[s][prof[i]];
            coords[s] = marginals[s](mprof);
        }
        f.table[idx] = d.space.encode(coords);
    }
    return f;
}

}  // namespace mhd
