#include "mhd/domains.hpp"

#include <numeric>

#include "mhd/graphs.hpp"

namespace mhd {

bool validate_thresholds(const ProductSpace& space, const Thresholds& t) {
    if (static_cast<int>(t.lower.size()) != space.components() ||
        static_cast<int>(t.upper.size()) != space.components())
        return false;
    for (int s = 0; s < space.components(); ++s) {
        if (t.lower[s] < 0 || t.lower[s] >= space.size(s)) return false;
        if (t.upper[s] < 0 || t.upper[s] >= space.size(s)) return false;
        if (t.lower[s] != t.upper[s] && std::abs(t.lower[s] - t.upper[s]) < 2) return false;
    }
    return true;
}

Thresholds degenerate_thresholds(const ProductSpace& space) {
    Alt zero(space.components(), 0);
    return {zero, zero};
}

Thresholds extreme_thresholds(const ProductSpace& space) {
    Thresholds t;
    t.lower.assign(space.components(), 0);
    t.upper.resize(space.components());
    for (int s = 0; s < space.components(); ++s)
        t.upper[s] = space.size(s) >= 3 ? space.size(s) - 1 : 0;
    return t;
}

std::optional<std::vector<MarginalOrder>> separability_witness(const ProductSpace& space,
                                                               const Preference& p) {
    std::vector<MarginalOrder> witness;
    for (int s = 0; s < space.components(); ++s) {
        std::optional<MarginalOrder> common;
        for (int z = 0; z < space.alt_count(); ++z) {
            Alt coords = space.decode(z);
            if (coords[s] != 0) continue;  // one representative per fibre
            MarginalOrder m = induce_marginal_at(space, p, s, coords);
            if (!common)
                common = std::move(m);
            else if (!(*common == m))
                return std::nullopt;
        }
        witness.push_back(std::move(*common));
    }
    return witness;
}

bool is_separable(const ProductSpace& space, const Preference& p) {
    return separability_witness(space, p).has_value();
}

namespace {

// Calls fn(a_idx, b_idx, s, a_coords, b_coords) for every ordered similar pair.
// Stops early when fn returns false; returns whether all calls returned true.
template <typename Fn>
bool for_each_similar_pair(const ProductSpace& space, Fn&& fn) {
    for (int ai = 0; ai < space.alt_count(); ++ai) {
        Alt a = space.decode(ai);
        for (int s = 0; s < space.components(); ++s) {
            Alt b = a;
            for (int e = 0; e < space.size(s); ++e) {
                if (e == a[s]) continue;
                b[s] = e;
                if (!fn(ai, space.encode(b), s, a, b)) return false;
            }
        }
    }
    return true;
}

}  // namespace

bool is_top_separable(const ProductSpace& space, const Preference& p) {
    const Alt x = space.decode(p.peak());
    return for_each_similar_pair(space, [&](int ai, int bi, int s, const Alt& a, const Alt&) {
        if (a[s] == x[s]) return p.prefers(ai, bi);
        return true;
    });
}

bool is_hybrid_marginal(const MarginalOrder& m, int lower, int upper) {
    const int k = m.elems();
    if (lower < 0 || lower >= k || upper < 0 || upper >= k)
        throw InputError("threshold element out of range");
    if (lower != upper && std::abs(lower - upper) < 2)
        throw InputError("distinct marginal thresholds must span at least 3 elements");
    const int x = m.peak();
    for (int a = 0; a < k; ++a) {
        if (in_interior(lower, a, upper)) continue;
        for (int b = 0; b < k; ++b) {
            if (b == a) continue;
            if (in_interior(x, a, b) && !m.prefers(a, b)) return false;
        }
    }
    return true;
}

bool is_semi_separable(const ProductSpace& space, const Preference& p,
                       const std::vector<std::vector<MarginalOrder>>& marginal_domains) {
    if (static_cast<int>(marginal_domains.size()) != space.components())
        throw InputError("need one marginal domain per component");
    for (const auto& md : marginal_domains)
        if (md.empty()) throw InputError("empty marginal domain");
    const Alt x = space.decode(p.peak());
    for (int ai = 0; ai < space.alt_count(); ++ai) {
        Alt a = space.decode(ai);
        for (int bi = 0; bi < space.alt_count(); ++bi) {
            if (bi == ai) continue;
            Alt b = space.decode(bi);
            bool hypothesis = true;
            for (int s : disagreement_set(a, b)) {
                // Vacuous for a component whose marginal domain has no order
                // peaked at x[s].
                for (const auto& m : marginal_domains[s]) {
                    if (m.peak() != x[s]) continue;
                    if (!m.prefers(a[s], b[s])) {
                        hypothesis = false;
                        break;
                    }
                }
                if (!hypothesis) break;
            }
            if (hypothesis && !p.prefers(ai, bi)) return false;
        }
    }
    return true;
}

bool is_mh_preference(const ProductSpace& space, const Preference& p, const Thresholds& t) {
    if (!validate_thresholds(space, t)) throw InputError("invalid thresholds");
    const Alt x = space.decode(p.peak());
    return for_each_similar_pair(space, [&](int ai, int bi, int s, const Alt& a, const Alt& b) {
        if (a[s] == x[s] && !p.prefers(ai, bi)) return false;
        if (in_interior(x[s], a[s], b[s]) && !in_interior(t.lower[s], a[s], t.upper[s]) &&
            !p.prefers(ai, bi))
            return false;
        return true;
    });
}

bool is_msp_preference(const ProductSpace& space, const Preference& p) {
    const Alt x = space.decode(p.peak());
    return for_each_similar_pair(space, [&](int ai, int bi, int s, const Alt& a, const Alt& b) {
        if (in_interval(x[s], a[s], b[s]) && !p.prefers(ai, bi)) return false;
        return true;
    });
}

namespace {

template <typename Pred>
Domain gen_filtered(const ProductSpace& space, int guard, Pred&& keep) {
    if (space.alt_count() > guard)
        throw ResourceError("alternative count exceeds the enumeration guard");
    std::vector<int> ranking(space.alt_count());
    std::iota(ranking.begin(), ranking.end(), 0);
    std::vector<Preference> prefs;
    do {
        Preference p = Preference::from_ranking(space, ranking);
        if (keep(p)) prefs.push_back(std::move(p));
    } while (std::next_permutation(ranking.begin(), ranking.end()));
    return Domain(space, std::move(prefs));
}

}  // namespace

Domain gen_universal(const ProductSpace& space, int guard) {
    return gen_filtered(space, guard, [](const Preference&) { return true; });
}

Domain gen_mh_domain(const ProductSpace& space, const Thresholds& t, int guard) {
    if (!validate_thresholds(space, t)) throw InputError("invalid thresholds");
    return gen_filtered(space, guard,
                        [&](const Preference& p) { return is_mh_preference(space, p, t); });
}

Domain gen_msp_domain(const ProductSpace& space, int guard) {
    return gen_filtered(space, guard,
                        [&](const Preference& p) { return is_msp_preference(space, p); });
}

Domain gen_top_separable_domain(const ProductSpace& space, int guard) {
    return gen_filtered(space, guard,
                        [&](const Preference& p) { return is_top_separable(space, p); });
}

Domain gen_separable_domain(const ProductSpace& space, int guard) {
    return gen_filtered(space, guard,
                        [&](const Preference& p) { return is_separable(space, p); });
}

namespace {

bool mh_domain_conditions(const Domain& d,
                          const std::vector<std::vector<MarginalOrder>>& induced,
                          const Thresholds& t) {
    for (const auto& p : d.prefs)
        if (!is_mh_preference(d.space, p, t)) return false;
    for (int s = 0; s < d.space.components(); ++s) {
        std::vector<int> all(d.space.size(s));
        std::iota(all.begin(), all.end(), 0);
        if (!is_connected(build_elem_graph(induced[s], all))) return false;
        if (t.lower[s] != t.upper[s]) {
            Graph g = build_elem_graph(induced[s], interval(d.space, s, t.lower[s], t.upper[s]));
            if (!leaves(g).empty()) return false;
        }
    }
    return true;
}

std::vector<Thresholds> mh_domain_search(const Domain& d, bool first_only) {
    std::vector<std::vector<MarginalOrder>> induced;
    for (int s = 0; s < d.space.components(); ++s)
        induced.push_back(induced_marginal_domain(d, s));
    std::vector<Thresholds> found;
    const int count = d.space.alt_count();
    for (int li = 0; li < count; ++li) {
        Alt lower = d.space.decode(li);
        for (int ui = li; ui < count; ++ui) {
            Alt upper = d.space.decode(ui);
            Thresholds t{lower, upper};
            // Canonical form: lower below upper componentwise (the definitions
            // are symmetric per component).
            bool canonical = true;
            for (int s = 0; s < d.space.components(); ++s)
                if (lower[s] > upper[s]) canonical = false;
            if (!canonical || !validate_thresholds(d.space, t)) continue;
            if (mh_domain_conditions(d, induced, t)) {
                found.push_back(t);
                if (first_only) return found;
            }
        }
    }
    return found;
}

}  // namespace

std::optional<Thresholds> is_mh_domain(const Domain& d) {
    auto found = mh_domain_search(d, true);
    if (found.empty()) return std::nullopt;
    return found.front();
}

std::vector<Thresholds> mh_domain_thresholds_all(const Domain& d) {
    return mh_domain_search(d, false);
}

std::optional<HybridRepresentation> find_hybrid_representation(
    const std::vector<MarginalOrder>& ds, int guard) {
    if (ds.empty()) throw InputError("empty marginal set");
    const int k = ds.front().elems();
    for (const auto& m : ds)
        if (m.elems() != k || m.component != ds.front().component)
            throw InputError("marginal orders over different components");
    if (k > guard) throw ResourceError("component size exceeds the enumeration guard");

    std::optional<HybridRepresentation> best;
    int best_size = k + 1;
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    do {
        if (order.front() > order.back()) continue;  // reversal symmetry
        std::vector<int> pos(k);
        for (int i = 0; i < k; ++i) pos[order[i]] = i;
        // Relabel each marginal into chain positions under this order.
        std::vector<MarginalOrder> relabeled;
        relabeled.reserve(ds.size());
        for (const auto& m : ds) {
            std::vector<int> r(k);
            for (int i = 0; i < k; ++i) r[i] = pos[m.ranking[i]];
            relabeled.push_back(MarginalOrder::from_ranking(m.component, std::move(r)));
        }
        for (int lo = 0; lo < k; ++lo) {
            for (int hi = lo; hi < k; ++hi) {
                if (lo != hi && hi - lo < 2) continue;
                const int size = hi - lo + 1;
                if (size >= best_size) continue;  // earlier candidates win ties
                bool ok = true;
                for (const auto& m : relabeled)
                    if (!is_hybrid_marginal(m, lo, hi)) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    best = HybridRepresentation{ds.front().component, order, order[lo], order[hi]};
                    best_size = size;
                }
            }
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

}  // namespace mhd
