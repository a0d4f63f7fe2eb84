#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mhd {

/// Bad caller input (out-of-range element, mismatched spaces, malformed file).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An enumeration guard or budget was exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An alternative: one element index per component.
using Alt = std::vector<int>;

/// A finite Cartesian product of linearly ordered component sets.
/// Elements of component s are encoded 0..size(s)-1; the component order is
/// the encoding order.
class ProductSpace {
public:
    explicit ProductSpace(std::vector<int> component_sizes);

    int components() const { return static_cast<int>(sizes_.size()); }
    int size(int s) const;
    const std::vector<int>& sizes() const { return sizes_; }
    int alt_count() const { return count_; }

    /// Mixed-radix index, row-major over components (component 0 most
    /// significant).
    int encode(const Alt& a) const;
    Alt decode(int index) const;

    void check_element(int s, int e) const;
    void check_alt(const Alt& a) const;

    bool operator==(const ProductSpace& o) const { return sizes_ == o.sizes_; }

private:
    std::vector<int> sizes_;
    int count_ = 0;
};

/// A strict linear order over all alternatives of a space, stored both as a
/// rank sequence (best first, encoded alt indices) and its inverse.
struct Preference {
    std::vector<int> ranking;   // ranking[k] = alt index at rank k (0 = best)
    std::vector<int> position;  // position[alt] = rank of alt

    static Preference from_ranking(const ProductSpace& space, std::vector<int> ranking);

    int peak() const { return ranking.front(); }
    int rank_of(int alt) const { return position[alt]; }
    bool prefers(int a, int b) const { return position[a] < position[b]; }
    Preference reversed() const;

    bool operator==(const Preference& o) const { return ranking == o.ranking; }
    auto operator<=>(const Preference& o) const { return ranking <=> o.ranking; }
};

/// A linear order over one component's elements.
struct MarginalOrder {
    int component = 0;
    std::vector<int> ranking;
    std::vector<int> position;

    static MarginalOrder from_ranking(int component, std::vector<int> ranking);

    int elems() const { return static_cast<int>(ranking.size()); }
    int peak() const { return ranking.front(); }
    bool prefers(int a, int b) const { return position[a] < position[b]; }
    MarginalOrder reversed() const;

    bool operator==(const MarginalOrder& o) const {
        return component == o.component && ranking == o.ranking;
    }
    auto operator<=>(const MarginalOrder& o) const {
        if (auto c = component <=> o.component; c != 0) return c;
        return ranking <=> o.ranking;
    }
};

/// A finite set of distinct preferences over one space, insertion-ordered.
struct Domain {
    ProductSpace space;
    std::vector<Preference> prefs;

    Domain(ProductSpace s, std::vector<Preference> p);

    int size() const { return static_cast<int>(prefs.size()); }
    const Preference& operator[](int i) const { return prefs[i]; }
};

// ---- interval machinery on a component chain --------------------------------

/// Closed interval of elements between a and b (inclusive, symmetric).
std::vector<int> interval(const ProductSpace& space, int s, int a, int b);

/// Open interval: elements strictly between a and b.
std::vector<int> interior_interval(const ProductSpace& space, int s, int a, int b);

inline bool in_interval(int a, int x, int b) {
    return std::min(a, b) <= x && x <= std::max(a, b);
}
inline bool in_interior(int a, int x, int b) {
    return std::min(a, b) < x && x < std::max(a, b);
}

// ---- alternatives and marginals ----------------------------------------------

/// Components on which a and b disagree.
std::vector<int> disagreement_set(const Alt& a, const Alt& b);

/// a and b disagree on exactly one component.
bool is_similar(const Alt& a, const Alt& b);

/// Marginal order of component s read off P at the peak's other coordinates.
MarginalOrder induce_marginal(const ProductSpace& space, const Preference& p, int s);

/// Marginal order of component s read off P at coordinates z (component s of z
/// is ignored).
MarginalOrder induce_marginal_at(const ProductSpace& space, const Preference& p, int s,
                                 const Alt& z);

/// Deduplicated induced marginal domain, sorted by ranking encoding.
std::vector<MarginalOrder> induced_marginal_domain(const Domain& d, int s);

/// Index of `m` in a canonical marginal domain, or -1.
int marginal_index(const std::vector<MarginalOrder>& ds, const MarginalOrder& m);

bool is_complete_reversal(const Preference& p, const Preference& q);

}  // namespace mhd
