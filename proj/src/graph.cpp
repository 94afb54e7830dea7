#include "gidkit/graph.hpp"

#include "gidkit/error.hpp"
#include "gidkit/id.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>

namespace gidkit {

namespace {

const VarSet kEmpty;

struct UnionFind {
    std::map<VarId, VarId> parent;

    explicit UnionFind(const VarSet& items) {
        for (const auto& v : items) parent[v] = v;
    }
    VarId find(const VarId& v) {
        VarId r = v;
        while (parent[r] != r) r = parent[r];
        VarId cur = v;
        while (parent[cur] != r) {
            VarId next = parent[cur];
            parent[cur] = r;
            cur = next;
        }
        return r;
    }
    bool unite(const VarId& a, const VarId& b) {
        VarId ra = find(a), rb = find(b);
        if (ra == rb) return false;
        if (rb < ra) std::swap(ra, rb);
        parent[rb] = ra;
        return true;
    }
};

// Forest over b: bidirected spanning tree extending fs, one shortest-path out-edge per non-root.
std::optional<CausalGraph> shape_forest(const CausalGraph& g, const VarSet& b, const VarSet& s,
                                        const CausalGraph& fs) {
    const CausalGraph gb = induced_subgraph(g, b);
    if (!is_single_c_component(gb, b) || ancestors(gb, s) != b) return std::nullopt;

    UnionFind uf(b);
    std::set<Edge> tree;
    for (const auto& e : fs.bidirected()) {
        uf.unite(e.first, e.second);
        tree.insert(e);
    }
    for (const auto& e : gb.bidirected())
        if (uf.unite(e.first, e.second)) tree.insert(e);

    std::map<VarId, int> dist;
    std::deque<VarId> queue;
    for (const auto& v : s) {
        dist[v] = 0;
        queue.push_back(v);
    }
    while (!queue.empty()) {
        VarId v = queue.front();
        queue.pop_front();
        for (const auto& p : gb.parents(v)) {
            if (dist.count(p)) continue;
            dist[p] = dist[v] + 1;
            queue.push_back(p);
        }
    }
    std::set<Edge> directed;
    for (const auto& v : b) {
        if (s.count(v)) continue;
        for (const auto& c : gb.children(v)) {
            if (dist.at(c) == dist.at(v) - 1) {
                directed.insert({v, c});
                break;
            }
        }
    }
    return CausalGraph(b, directed, tree);
}

bool valid_forest(const CausalGraph& f, const CausalGraph& g, const VarSet& a, const VarSet& s,
                  const CausalGraph& fs) {
    const VarSet& b = f.observed();
    if (!is_subset(b, a) || !is_subset(s, b) || b.size() == s.size()) return false;
    if (f.bidirected().size() + 1 != b.size()) return false;
    if (!is_c_forest(f, s)) return false;
    if (!(induced_subgraph(f, s) == fs)) return false;
    for (const auto& e : f.directed())
        if (!g.directed().count(e)) return false;
    for (const auto& e : f.bidirected())
        if (!g.bidirected().count(e)) return false;
    return true;
}

}  // namespace

std::string latent_label(const VarId& a, const VarId& b) {
    return a < b ? "U(" + a + "," + b + ")" : "U(" + b + "," + a + ")";
}

CausalGraph::CausalGraph(VarSet observed, std::set<Edge> directed, std::set<Edge> bidirected)
    : observed_(std::move(observed)), directed_(std::move(directed)) {
    for (const auto& v : observed_) {
        if (v.empty()) throw Error(ErrorKind::InvalidArgument, "empty vertex name");
        parents_[v];
        children_[v];
        spouses_[v];
    }
    for (const auto& [a, b] : directed_) {
        if (!contains(a) || !contains(b))
            throw Error(ErrorKind::InvalidVertex, "directed edge " + a + "->" + b + " has unknown endpoint");
        if (a == b) throw Error(ErrorKind::InvalidArgument, "self-loop on " + a);
        parents_[b].insert(a);
        children_[a].insert(b);
    }
    for (auto [a, b] : bidirected) {
        if (!contains(a) || !contains(b))
            throw Error(ErrorKind::InvalidVertex, "bidirected edge " + a + "<->" + b + " has unknown endpoint");
        if (a == b) throw Error(ErrorKind::InvalidArgument, "bidirected self-loop on " + a);
        if (b < a) std::swap(a, b);
        if (!bidirected_.insert({a, b}).second)
            throw Error(ErrorKind::InvalidArgument, "duplicate bidirected edge " + a + "<->" + b);
        spouses_[a].insert(b);
        spouses_[b].insert(a);
    }
    if (topological_order().size() != observed_.size())
        throw Error(ErrorKind::InvalidArgument, "directed part has a cycle");
}

const VarSet& CausalGraph::parents(const VarId& v) const {
    auto it = parents_.find(v);
    return it == parents_.end() ? kEmpty : it->second;
}

const VarSet& CausalGraph::children(const VarId& v) const {
    auto it = children_.find(v);
    return it == children_.end() ? kEmpty : it->second;
}

const VarSet& CausalGraph::spouses(const VarId& v) const {
    auto it = spouses_.find(v);
    return it == spouses_.end() ? kEmpty : it->second;
}

std::vector<std::string> CausalGraph::latent_parents(const VarId& v) const {
    std::vector<std::string> out;
    for (const auto& w : spouses(v)) out.push_back(latent_label(v, w));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> CausalGraph::latent_labels() const {
    std::vector<std::string> out;
    for (const auto& [a, b] : bidirected_) out.push_back(latent_label(a, b));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VarId> CausalGraph::topological_order() const {
    std::map<VarId, std::size_t> indegree;
    for (const auto& v : observed_) indegree[v] = parents(v).size();
    std::set<VarId> ready;
    for (const auto& [v, d] : indegree)
        if (d == 0) ready.insert(v);
    std::vector<VarId> order;
    while (!ready.empty()) {
        VarId v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (const auto& c : children(v))
            if (--indegree[c] == 0) ready.insert(c);
    }
    return order;
}

bool CausalGraph::operator==(const CausalGraph& other) const {
    return observed_ == other.observed_ && directed_ == other.directed_ && bidirected_ == other.bidirected_;
}

std::string to_string(const VarSet& s) {
    std::string out = "{";
    for (const auto& v : s) {
        if (out.size() > 1) out += ",";
        out += v;
    }
    return out + "}";
}

VarSet set_union(const VarSet& a, const VarSet& b) {
    VarSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

VarSet set_difference(const VarSet& a, const VarSet& b) {
    VarSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

VarSet set_intersection(const VarSet& a, const VarSet& b) {
    VarSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

bool is_subset(const VarSet& a, const VarSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void require_vertices(const CausalGraph& g, const VarSet& x) {
    for (const auto& v : x)
        if (!g.contains(v)) throw Error(ErrorKind::InvalidVertex, "unknown vertex '" + v + "'");
}

CausalGraph induced_subgraph(const CausalGraph& g, const VarSet& x) {
    require_vertices(g, x);
    std::set<Edge> directed, bidirected;
    for (const auto& e : g.directed())
        if (x.count(e.first) && x.count(e.second)) directed.insert(e);
    for (const auto& e : g.bidirected())
        if (x.count(e.first) && x.count(e.second)) bidirected.insert(e);
    return CausalGraph(x, directed, bidirected);
}

VarSet ancestors(const CausalGraph& g, const VarSet& x) {
    require_vertices(g, x);
    VarSet out = x;
    std::vector<VarId> stack(x.begin(), x.end());
    while (!stack.empty()) {
        VarId v = stack.back();
        stack.pop_back();
        for (const auto& p : g.parents(v))
            if (out.insert(p).second) stack.push_back(p);
    }
    return out;
}

std::vector<VarSet> c_components(const CausalGraph& g, const VarSet& x) {
    require_vertices(g, x);
    UnionFind uf(x);
    for (const auto& [a, b] : g.bidirected())
        if (x.count(a) && x.count(b)) uf.unite(a, b);
    std::map<VarId, VarSet> groups;
    for (const auto& v : x) groups[uf.find(v)].insert(v);
    // Roots are the smallest member of each group, so map order is "sorted by smallest member".
    std::vector<VarSet> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

VarSet root_set(const CausalGraph& h) {
    VarSet out;
    for (const auto& v : h.observed())
        if (h.children(v).empty()) out.insert(v);
    return out;
}

bool is_single_c_component(const CausalGraph& g, const VarSet& s) {
    return !s.empty() && c_components(g, s).size() == 1;
}

bool is_c_forest(const CausalGraph& h, const VarSet& roots) {
    if (!is_subset(roots, h.observed())) return false;
    if (root_set(h) != roots) return false;
    if (!is_single_c_component(h, h.observed())) return false;
    for (const auto& v : h.observed())
        if (h.children(v).size() > 1) return false;
    return true;
}

std::optional<CausalGraph> find_rooted_c_forest(const CausalGraph& g, const VarSet& a, const VarSet& s,
                                                const CausalGraph& fs) {
    require_vertices(g, a);
    if (!is_subset(s, a) || s.size() == a.size())
        throw Error(ErrorKind::InvalidArgument, "need S strictly inside A");
    if (!is_single_c_component(g, s)) throw Error(ErrorKind::InvalidArgument, "S is not a single c-component");
    if (fs.observed() != s || !fs.directed().empty() || fs.bidirected().size() + 1 != s.size() ||
        !is_single_c_component(fs, s))
        throw Error(ErrorKind::InvalidArgument, "F_S is not a spanning bidirected tree over S");
    for (const auto& e : fs.bidirected())
        if (!g.bidirected().count(e)) throw Error(ErrorKind::InvalidArgument, "F_S edge not in G");

    const IdTrace trace = id_single(s, induced_subgraph(g, a));
    if (trace.identifiable) return std::nullopt;
    const VarSet fixed_point = trace.steps.back().y;

    auto acceptable = [&](const VarSet& b) {
        if (b.size() == s.size()) return false;
        const CausalGraph gb = induced_subgraph(g, b);
        return is_single_c_component(gb, b) && ancestors(gb, s) == b;
    };

    VarSet b = fixed_point;
    for (bool shrunk = true; shrunk;) {
        shrunk = false;
        for (const auto& w : set_difference(b, s)) {
            VarSet candidate = b;
            candidate.erase(w);
            if (acceptable(candidate)) {
                b = std::move(candidate);
                shrunk = true;
                break;
            }
        }
    }
    if (auto f = shape_forest(g, b, s, fs); f && valid_forest(*f, g, a, s, fs)) return f;

    // Exhaustive search over vertex subsets of the fixed point, smallest first.
    const VarSet outside = set_difference(fixed_point, s);
    const std::vector<VarId> extra(outside.begin(), outside.end());
    if (extra.size() > 20) throw Error(ErrorKind::TooLarge, "c-forest search space too large");
    std::vector<std::uint32_t> masks(std::size_t{1} << extra.size());
    std::iota(masks.begin(), masks.end(), 0u);
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint32_t x, std::uint32_t y) { return __builtin_popcount(x) < __builtin_popcount(y); });
    for (auto mask : masks) {
        if (mask == 0) continue;
        VarSet candidate = s;
        for (std::size_t i = 0; i < extra.size(); ++i)
            if (mask & (1u << i)) candidate.insert(extra[i]);
        if (!acceptable(candidate)) continue;
        if (auto f = shape_forest(g, candidate, s, fs); f && valid_forest(*f, g, a, s, fs)) return f;
    }
    throw Error(ErrorKind::InternalContradiction,
                "Q" + to_string(s) + " is not identifiable from G[" + to_string(a) + "] but no c-forest was found");
}

}  // namespace gidkit
