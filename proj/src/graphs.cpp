#include "mhd/graphs.hpp"

#include <deque>
#include <set>

#include "mhd/domains.hpp"

namespace mhd {

Graph::Graph(std::vector<int> vertices) {
    for (int v : vertices) add_vertex(v);
}

void Graph::add_vertex(int v) {
    if (adj_.count(v)) throw InputError("duplicate vertex");
    verts_.push_back(v);
    adj_.emplace(v, std::vector<int>{});
}

void Graph::add_edge(int u, int v, std::string label) {
    if (u == v) throw InputError("self-loop");
    if (!has_vertex(u) || !has_vertex(v)) throw InputError("edge endpoint is not a vertex");
    auto key = std::minmax(u, v);
    if (labels_.count({key.first, key.second})) throw InputError("duplicate edge");
    labels_.emplace(std::make_pair(key.first, key.second), std::move(label));
    adj_[u].push_back(v);
    adj_[v].push_back(u);
}

const std::vector<int>& Graph::neighbors(int v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw InputError("unknown vertex");
    return it->second;
}

bool Graph::has_edge(int u, int v) const {
    auto key = std::minmax(u, v);
    return labels_.count({key.first, key.second}) > 0;
}

const std::string& Graph::edge_label(int u, int v) const {
    auto key = std::minmax(u, v);
    auto it = labels_.find({key.first, key.second});
    if (it == labels_.end()) throw InputError("no such edge");
    return it->second;
}

std::vector<std::tuple<int, int, std::string>> Graph::edges() const {
    std::vector<std::tuple<int, int, std::string>> out;
    out.reserve(labels_.size());
    for (const auto& [key, label] : labels_) out.emplace_back(key.first, key.second, label);
    return out;
}

bool is_connected(const Graph& g) {
    if (g.vertices().size() <= 1) return true;
    std::set<int> seen{g.vertices().front()};
    std::deque<int> queue{g.vertices().front()};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.neighbors(v))
            if (seen.insert(w).second) queue.push_back(w);
    }
    return seen.size() == g.vertices().size();
}

std::vector<int> leaves(const Graph& g) {
    std::vector<int> out;
    for (int v : g.vertices())
        if (g.neighbors(v).size() == 1) out.push_back(v);
    return out;
}

std::optional<std::vector<int>> find_path(const Graph& g, int u, int v) {
    if (!g.has_vertex(u) || !g.has_vertex(v)) throw InputError("unknown vertex");
    std::map<int, int> parent{{u, u}};
    std::deque<int> queue{u};
    while (!queue.empty()) {
        int w = queue.front();
        queue.pop_front();
        if (w == v) break;
        for (int x : g.neighbors(w))
            if (!parent.count(x)) {
                parent[x] = w;
                queue.push_back(x);
            }
    }
    if (!parent.count(v)) return std::nullopt;
    std::vector<int> path{v};
    while (path.back() != u) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

// ---- preference graphs --------------------------------------------------------

namespace {

// Ranks at which the two rankings differ, in increasing order.
std::vector<int> diff_ranks(const Preference& p, const Preference& q) {
    std::vector<int> out;
    for (int k = 0; k < static_cast<int>(p.ranking.size()); ++k)
        if (p.ranking[k] != q.ranking[k]) out.push_back(k);
    return out;
}

bool is_consecutive_swap_at(const Preference& p, const Preference& q, int k) {
    return p.ranking[k] == q.ranking[k + 1] && p.ranking[k + 1] == q.ranking[k];
}

}  // namespace

bool are_adjacent(const ProductSpace& space, const Preference& p, const Preference& q) {
    if (static_cast<int>(p.ranking.size()) != space.alt_count() ||
        static_cast<int>(q.ranking.size()) != space.alt_count())
        throw InputError("preference does not match the space");
    auto diff = diff_ranks(p, q);
    return diff.size() == 2 && diff[1] == diff[0] + 1 && is_consecutive_swap_at(p, q, diff[0]);
}

bool are_adjacent_plus(const ProductSpace& space, const Preference& p, const Preference& q) {
    if (static_cast<int>(p.ranking.size()) != space.alt_count() ||
        static_cast<int>(q.ranking.size()) != space.alt_count())
        throw InputError("preference does not match the space");
    auto diff = diff_ranks(p, q);
    if (diff.empty() || diff.size() % 2 != 0) return false;
    int comp = -1;
    std::pair<int, int> pair{-1, -1};
    for (size_t i = 0; i < diff.size(); i += 2) {
        int k = diff[i];
        if (diff[i + 1] != k + 1 || !is_consecutive_swap_at(p, q, k)) return false;
        Alt a = space.decode(p.ranking[k]);
        Alt b = space.decode(p.ranking[k + 1]);
        auto dis = disagreement_set(a, b);
        if (dis.size() != 1) return false;
        int s = dis[0];
        auto elems = std::minmax(a[s], b[s]);
        if (comp == -1) {
            comp = s;
            pair = {elems.first, elems.second};
        } else if (comp != s || pair != std::make_pair(elems.first, elems.second)) {
            return false;
        }
    }
    // Every fixing of the other coordinates must carry a flipped pair.
    if (static_cast<int>(diff.size()) / 2 != space.alt_count() / space.size(comp)) return false;
    return is_separable(space, p) && is_separable(space, q);
}

Graph build_pref_graph(const Domain& d) {
    std::vector<int> verts(d.size());
    for (int i = 0; i < d.size(); ++i) verts[i] = i;
    Graph g(std::move(verts));
    for (int i = 0; i < d.size(); ++i)
        for (int j = i + 1; j < d.size(); ++j) {
            if (are_adjacent(d.space, d[i], d[j]))
                g.add_edge(i, j, kEdgeAdjacent);
            else if (are_adjacent_plus(d.space, d[i], d[j]))
                g.add_edge(i, j, kEdgeAdjacentPlus);
        }
    return g;
}

// ---- element graphs -----------------------------------------------------------

bool strongly_connected_elems(const std::vector<MarginalOrder>& ds, int a, int b) {
    if (a == b) throw InputError("strong connectedness needs distinct elements");
    for (const auto& r1 : ds) {
        if (r1.ranking[0] != a || r1.ranking[1] != b) continue;
        for (const auto& r2 : ds) {
            if (r2.ranking[0] != b || r2.ranking[1] != a) continue;
            if (std::equal(r1.ranking.begin() + 2, r1.ranking.end(), r2.ranking.begin() + 2))
                return true;
        }
    }
    return false;
}

Graph build_elem_graph(const std::vector<MarginalOrder>& ds, const std::vector<int>& elems) {
    if (elems.empty()) throw InputError("empty element set");
    Graph g(elems);
    for (size_t i = 0; i < elems.size(); ++i)
        for (size_t j = i + 1; j < elems.size(); ++j)
            if (strongly_connected_elems(ds, elems[i], elems[j]))
                g.add_edge(elems[i], elems[j], "strong");
    return g;
}

bool strongly_connected_plus_alts(const Domain& d, int a, int b) {
    if (a == b) throw InputError("strong connectedness needs distinct alternatives");
    for (int i = 0; i < d.size(); ++i) {
        if (d[i].peak() != a) continue;
        for (int j = 0; j < d.size(); ++j) {
            if (d[j].peak() != b) continue;
            if (are_adjacent_plus(d.space, d[i], d[j])) return true;
        }
    }
    return false;
}

// ---- restoration --------------------------------------------------------------

bool path_has_restoration(const ProductSpace& space, const std::vector<Preference>& path, int a,
                          int b) {
    if (path.empty()) throw InputError("empty path");
    if (a == b) throw InputError("restoration needs distinct alternatives");
    int flips = 0;
    for (size_t k = 0; k + 1 < path.size(); ++k) {
        if (!are_adjacent(space, path[k], path[k + 1]) &&
            !are_adjacent_plus(space, path[k], path[k + 1]))
            throw InputError("consecutive path vertices are not adjacent");
        if (path[k].prefers(a, b) != path[k + 1].prefers(a, b)) ++flips;
    }
    return flips > 1;
}

std::optional<std::vector<int>> exists_norestoration_path(const Domain& d, const Graph& g, int p,
                                                          int q, int a, int b) {
    if (!g.has_vertex(p) || !g.has_vertex(q)) throw InputError("unknown vertex");
    if (a == b) throw InputError("restoration needs distinct alternatives");
    if (p == q) return std::vector<int>{p};
    // Breadth-first search over (vertex, flip count) with flips capped at 1;
    // states with two or more flips can never be extended to a valid path.
    auto rel = [&](int v) { return d[v].prefers(a, b); };
    auto state = [&](int v, int f) { return v * 2 + f; };
    std::map<int, int> parent{{state(p, 0), state(p, 0)}};
    std::deque<int> queue{state(p, 0)};
    int goal = -1;
    while (!queue.empty() && goal == -1) {
        int st = queue.front();
        queue.pop_front();
        int v = st / 2, f = st % 2;
        for (int w : g.neighbors(v)) {
            int nf = f + (rel(v) != rel(w) ? 1 : 0);
            if (nf > 1) continue;
            int ns = state(w, nf);
            if (parent.count(ns)) continue;
            parent[ns] = st;
            if (w == q) {
                goal = ns;
                break;
            }
            queue.push_back(ns);
        }
    }
    if (goal == -1) return std::nullopt;
    std::vector<int> path;
    for (int st = goal;; st = parent[st]) {
        path.push_back(st / 2);
        if (parent[st] == st) break;
    }
    std::reverse(path.begin(), path.end());
    // Splice out repeated vertices. A cycle returns to the same vertex, so the
    // relative ranking of a,b is restored and the cycle's flips are even; the
    // spliced path keeps at most one flip.
    for (bool changed = true; changed;) {
        changed = false;
        std::map<int, size_t> first_at;
        for (size_t k = 0; k < path.size(); ++k) {
            auto [it, inserted] = first_at.emplace(path[k], k);
            if (!inserted) {
                path.erase(path.begin() + it->second, path.begin() + k);
                changed = true;
                break;
            }
        }
    }
    return path;
}

// ---- richness conditions ------------------------------------------------------

namespace {

// Connectivity from `from` to `to` through vertices in `allowed` only.
bool connected_within(const Graph& g, const std::set<int>& allowed, int from, int to) {
    if (from == to) return true;
    std::set<int> seen{from};
    std::deque<int> queue{from};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.neighbors(v)) {
            if (!allowed.count(w) || !seen.insert(w).second) continue;
            if (w == to) return true;
            queue.push_back(w);
        }
    }
    return false;
}

std::string alt_str(const ProductSpace& space, int a) {
    Alt coords = space.decode(a);
    std::string out = "(";
    for (int s = 0; s < space.components(); ++s) {
        if (s) out += ",";
        out += std::to_string(coords[s]);
    }
    return out + ")";
}

}  // namespace

PropertyCheck check_interior_plus(const Domain& d) {
    Graph g = build_pref_graph(d);
    std::map<int, std::vector<int>> by_peak;
    for (int i = 0; i < d.size(); ++i) by_peak[d[i].peak()].push_back(i);
    for (const auto& [peak, members] : by_peak) {
        std::set<int> allowed(members.begin(), members.end());
        for (size_t k = 1; k < members.size(); ++k)
            if (!connected_within(g, allowed, members[0], members[k]))
                return {false, "no equal-peak path between preferences " +
                                   std::to_string(members[0]) + " and " +
                                   std::to_string(members[k]) + " with peak " +
                                   alt_str(d.space, peak)};
    }
    return {true, ""};
}

PropertyCheck check_exterior_plus(const Domain& d) {
    Graph g = build_pref_graph(d);
    // (i) no-restoration paths between preferences with distinct peaks.
    for (int i = 0; i < d.size(); ++i)
        for (int j = 0; j < d.size(); ++j) {
            if (i == j || d[i].peak() == d[j].peak()) continue;
            for (int a = 0; a < d.space.alt_count(); ++a)
                for (int b = a + 1; b < d.space.alt_count(); ++b)
                    if (!exists_norestoration_path(d, g, i, j, a, b))
                        return {false, "no path without restoration of {" + alt_str(d.space, a) +
                                           "," + alt_str(d.space, b) + "} from preference " +
                                           std::to_string(i) + " to " + std::to_string(j)};
        }
    // (ii) no detours: similar peaks connect through peaks on the shared line.
    for (int i = 0; i < d.size(); ++i)
        for (int j = i + 1; j < d.size(); ++j) {
            Alt x = d.space.decode(d[i].peak());
            Alt y = d.space.decode(d[j].peak());
            auto dis = disagreement_set(x, y);
            if (dis.size() != 1) continue;
            const int s = dis[0];
            std::set<int> allowed;
            for (int k = 0; k < d.size(); ++k) {
                Alt z = d.space.decode(d[k].peak());
                bool on_line = true;
                for (int t = 0; t < d.space.components(); ++t)
                    if (t != s && z[t] != x[t]) on_line = false;
                if (on_line) allowed.insert(k);
            }
            if (!connected_within(g, allowed, i, j))
                return {false, "no detour-free path between preferences " + std::to_string(i) +
                                   " and " + std::to_string(j) + " (peaks " +
                                   alt_str(d.space, d[i].peak()) + ", " +
                                   alt_str(d.space, d[j].peak()) + ")"};
        }
    return {true, ""};
}

PropertyCheck check_diversity_plus(const Domain& d) {
    for (int i = 0; i < d.size(); ++i) {
        if (!is_separable(d.space, d[i])) continue;
        for (int j = i + 1; j < d.size(); ++j)
            if (is_complete_reversal(d[i], d[j]) && is_separable(d.space, d[j])) return {true, ""};
    }
    return {false, "no separable complete-reversal pair"};
}

PropertyCheck check_minimal_richness(const Domain& d) {
    std::vector<bool> seen(d.space.alt_count(), false);
    for (int i = 0; i < d.size(); ++i) seen[d[i].peak()] = true;
    for (int a = 0; a < d.space.alt_count(); ++a)
        if (!seen[a]) return {false, "no preference peaks at " + alt_str(d.space, a)};
    return {true, ""};
}

bool is_rich_domain(const Domain& d) {
    return check_minimal_richness(d).ok && check_diversity_plus(d).ok &&
           check_interior_plus(d).ok && check_exterior_plus(d).ok;
}

}  // namespace mhd
