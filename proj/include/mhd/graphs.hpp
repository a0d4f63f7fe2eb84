#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>

#include "mhd/core.hpp"

namespace mhd {

/// Undirected labeled graph over integer vertex ids. No self-loops.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::vector<int> vertices);

    void add_vertex(int v);
    void add_edge(int u, int v, std::string label = "");

    const std::vector<int>& vertices() const { return verts_; }
    bool has_vertex(int v) const { return adj_.count(v) > 0; }
    const std::vector<int>& neighbors(int v) const;
    bool has_edge(int u, int v) const;
    const std::string& edge_label(int u, int v) const;

    /// All edges as (min vertex, max vertex, label), sorted.
    std::vector<std::tuple<int, int, std::string>> edges() const;

private:
    std::vector<int> verts_;
    std::unordered_map<int, std::vector<int>> adj_;
    std::map<std::pair<int, int>, std::string> labels_;
};

bool is_connected(const Graph& g);
std::vector<int> leaves(const Graph& g);
std::optional<std::vector<int>> find_path(const Graph& g, int u, int v);

// ---- preference graphs --------------------------------------------------------

/// One swap of consecutively ranked alternatives.
bool are_adjacent(const ProductSpace& space, const Preference& p, const Preference& q);

/// Both separable; one component pair flipped consecutively at every fixing of
/// the other coordinates, everything else identical.
bool are_adjacent_plus(const ProductSpace& space, const Preference& p, const Preference& q);

inline constexpr const char* kEdgeAdjacent = "adjacent";
inline constexpr const char* kEdgeAdjacentPlus = "adjacent+";

/// Vertices 0..|D|-1; edges labeled kEdgeAdjacent or kEdgeAdjacentPlus.
Graph build_pref_graph(const Domain& d);

// ---- element graphs -----------------------------------------------------------

/// The marginal set contains two orders ranking a,b first and second in the two
/// opposite ways, with identical tails.
bool strongly_connected_elems(const std::vector<MarginalOrder>& ds, int a, int b);

/// Vertices = elems; edge iff strongly connected within ds.
Graph build_elem_graph(const std::vector<MarginalOrder>& ds, const std::vector<int>& elems);

/// Some pair of preferences with peaks a,b (alt indices) is adjacent-plus.
bool strongly_connected_plus_alts(const Domain& d, int a, int b);

// ---- restoration --------------------------------------------------------------

/// Relative ranking of alts a,b flips more than once along the path. The path
/// is validated: consecutive vertices must be adjacent or adjacent-plus.
bool path_has_restoration(const ProductSpace& space, const std::vector<Preference>& path, int a,
                          int b);

/// Shortest path (pref indices) from p to q along which the relative ranking
/// of a,b flips at most once, or nullopt.
std::optional<std::vector<int>> exists_norestoration_path(const Domain& d, const Graph& g, int p,
                                                          int q, int a, int b);

// ---- richness conditions ------------------------------------------------------

struct PropertyCheck {
    bool ok = true;
    std::string witness;  // failure description when !ok
};

/// Preferences sharing a peak are connected within the equal-peak subgraph.
PropertyCheck check_interior_plus(const Domain& d);

/// (i) every preference pair with distinct peaks admits a no-restoration path
/// for every alternative pair; (ii) preference pairs with similar peaks are
/// connected through vertices whose peaks stay on the shared coordinates.
PropertyCheck check_exterior_plus(const Domain& d);

/// Contains a separable complete-reversal pair.
PropertyCheck check_diversity_plus(const Domain& d);

/// Every alternative is the peak of some preference.
PropertyCheck check_minimal_richness(const Domain& d);

bool is_rich_domain(const Domain& d);

}  // namespace mhd
