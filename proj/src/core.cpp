#include "mhd/core.hpp"

#include <set>

namespace mhd {

ProductSpace::ProductSpace(std::vector<int> component_sizes) : sizes_(std::move(component_sizes)) {
    if (sizes_.size() < 2) throw InputError("product space needs at least 2 components");
    long long count = 1;
    for (int sz : sizes_) {
        if (sz < 2) throw InputError("every component needs at least 2 elements");
        count *= sz;
        if (count > (1 << 24)) throw ResourceError("alternative count too large");
    }
    count_ = static_cast<int>(count);
}

int ProductSpace::size(int s) const {
    if (s < 0 || s >= components()) throw InputError("component index out of range");
    return sizes_[s];
}

int ProductSpace::encode(const Alt& a) const {
    check_alt(a);
    int idx = 0;
    for (int s = 0; s < components(); ++s) idx = idx * sizes_[s] + a[s];
    return idx;
}

Alt ProductSpace::decode(int index) const {
    if (index < 0 || index >= count_) throw InputError("alternative index out of range");
    Alt a(components());
    for (int s = components() - 1; s >= 0; --s) {
        a[s] = index % sizes_[s];
        index /= sizes_[s];
    }
    return a;
}

void ProductSpace::check_element(int s, int e) const {
    if (e < 0 || e >= size(s)) throw InputError("element index out of range");
}

void ProductSpace::check_alt(const Alt& a) const {
    if (static_cast<int>(a.size()) != components())
        throw InputError("alternative arity does not match space");
    for (int s = 0; s < components(); ++s) check_element(s, a[s]);
}

Preference Preference::from_ranking(const ProductSpace& space, std::vector<int> ranking) {
    const int n = space.alt_count();
    if (static_cast<int>(ranking.size()) != n)
        throw InputError("preference must rank every alternative exactly once");
    std::vector<int> pos(n, -1);
    for (int k = 0; k < n; ++k) {
        int a = ranking[k];
        if (a < 0 || a >= n || pos[a] != -1)
            throw InputError("preference ranking is not a permutation of the alternatives");
        pos[a] = k;
    }
    Preference p;
    p.ranking = std::move(ranking);
    p.position = std::move(pos);
    return p;
}

Preference Preference::reversed() const {
    Preference p;
    p.ranking.assign(ranking.rbegin(), ranking.rend());
    p.position.resize(position.size());
    const int n = static_cast<int>(ranking.size());
    for (int k = 0; k < n; ++k) p.position[p.ranking[k]] = k;
    return p;
}

MarginalOrder MarginalOrder::from_ranking(int component, std::vector<int> ranking) {
    const int n = static_cast<int>(ranking.size());
    if (n < 2) throw InputError("marginal order needs at least 2 elements");
    std::vector<int> pos(n, -1);
    for (int k = 0; k < n; ++k) {
        int e = ranking[k];
        if (e < 0 || e >= n || pos[e] != -1)
            throw InputError("marginal ranking is not a permutation");
        pos[e] = k;
    }
    MarginalOrder m;
    m.component = component;
    m.ranking = std::move(ranking);
    m.position = std::move(pos);
    return m;
}

MarginalOrder MarginalOrder::reversed() const {
    std::vector<int> r(ranking.rbegin(), ranking.rend());
    return MarginalOrder::from_ranking(component, std::move(r));
}

Domain::Domain(ProductSpace s, std::vector<Preference> p) : space(std::move(s)), prefs(std::move(p)) {
    std::set<std::vector<int>> seen;
    for (const auto& pref : prefs) {
        if (static_cast<int>(pref.ranking.size()) != space.alt_count())
            throw InputError("preference does not match the domain's space");
        if (!seen.insert(pref.ranking).second)
            throw InputError("duplicate preference in domain");
    }
}

std::vector<int> interval(const ProductSpace& space, int s, int a, int b) {
    space.check_element(s, a);
    space.check_element(s, b);
    std::vector<int> out;
    for (int x = std::min(a, b); x <= std::max(a, b); ++x) out.push_back(x);
    return out;
}

std::vector<int> interior_interval(const ProductSpace& space, int s, int a, int b) {
    space.check_element(s, a);
    space.check_element(s, b);
    std::vector<int> out;
    for (int x = std::min(a, b) + 1; x < std::max(a, b); ++x) out.push_back(x);
    return out;
}

std::vector<int> disagreement_set(const Alt& a, const Alt& b) {
    if (a.size() != b.size()) throw InputError("alternatives from different spaces");
    std::vector<int> out;
    for (int s = 0; s < static_cast<int>(a.size()); ++s)
        if (a[s] != b[s]) out.push_back(s);
    return out;
}

bool is_similar(const Alt& a, const Alt& b) { return disagreement_set(a, b).size() == 1; }

MarginalOrder induce_marginal(const ProductSpace& space, const Preference& p, int s) {
    return induce_marginal_at(space, p, s, space.decode(p.peak()));
}

MarginalOrder induce_marginal_at(const ProductSpace& space, const Preference& p, int s,
                                 const Alt& z) {
    space.check_alt(z);
    const int k = space.size(s);
    std::vector<int> elems(k);
    for (int e = 0; e < k; ++e) elems[e] = e;
    Alt probe = z;
    std::vector<int> rank_at(k);
    for (int e = 0; e < k; ++e) {
        probe[s] = e;
        rank_at[e] = p.rank_of(space.encode(probe));
    }
    std::sort(elems.begin(), elems.end(),
              [&](int x, int y) { return rank_at[x] < rank_at[y]; });
    return MarginalOrder::from_ranking(s, std::move(elems));
}

std::vector<MarginalOrder> induced_marginal_domain(const Domain& d, int s) {
    std::set<MarginalOrder> seen;
    for (const auto& p : d.prefs) seen.insert(induce_marginal(d.space, p, s));
    return {seen.begin(), seen.end()};
}

int marginal_index(const std::vector<MarginalOrder>& ds, const MarginalOrder& m) {
    for (int i = 0; i < static_cast<int>(ds.size()); ++i)
        if (ds[i] == m) return i;
    return -1;
}

bool is_complete_reversal(const Preference& p, const Preference& q) {
    if (p.ranking.size() != q.ranking.size())
        throw InputError("preferences from different spaces");
    const int n = static_cast<int>(p.ranking.size());
    for (int k = 0; k < n; ++k)
        if (p.ranking[k] != q.ranking[n - 1 - k]) return false;
    return true;
}

}  // namespace mhd
