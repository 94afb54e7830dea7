#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gidkit {

using VarId = std::string;
using VarSet = std::set<VarId>;
using Edge = std::pair<VarId, VarId>;

// Name of the latent confounder behind a bidirected pair, "U(a,b)" with a < b.
std::string latent_label(const VarId& a, const VarId& b);

class CausalGraph {
public:
    CausalGraph() = default;
    // Bidirected pairs may be given in either orientation; they are stored with first < second.
    CausalGraph(VarSet observed, std::set<Edge> directed, std::set<Edge> bidirected);

    const VarSet& observed() const { return observed_; }
    const std::set<Edge>& directed() const { return directed_; }
    const std::set<Edge>& bidirected() const { return bidirected_; }

    bool contains(const VarId& v) const { return observed_.count(v) > 0; }
    const VarSet& parents(const VarId& v) const;
    const VarSet& children(const VarId& v) const;
    // Bidirected neighbours of v.
    const VarSet& spouses(const VarId& v) const;
    // Sorted labels of the latents adjacent to v.
    std::vector<std::string> latent_parents(const VarId& v) const;
    std::vector<std::string> latent_labels() const;
    // Kahn's algorithm, lexicographic tie-break.
    std::vector<VarId> topological_order() const;

    bool operator==(const CausalGraph& other) const;

private:
    VarSet observed_;
    std::set<Edge> directed_;
    std::set<Edge> bidirected_;
    std::map<VarId, VarSet> parents_;
    std::map<VarId, VarSet> children_;
    std::map<VarId, VarSet> spouses_;
};

std::string to_string(const VarSet& s);

VarSet set_union(const VarSet& a, const VarSet& b);
VarSet set_difference(const VarSet& a, const VarSet& b);
VarSet set_intersection(const VarSet& a, const VarSet& b);
bool is_subset(const VarSet& a, const VarSet& b);

// Throws InvalidVertex if some member of x is not observed in g.
void require_vertices(const CausalGraph& g, const VarSet& x);

CausalGraph induced_subgraph(const CausalGraph& g, const VarSet& x);
VarSet ancestors(const CausalGraph& g, const VarSet& x);
std::vector<VarSet> c_components(const CausalGraph& g, const VarSet& x);
VarSet root_set(const CausalGraph& h);
bool is_c_forest(const CausalGraph& h, const VarSet& roots);
bool is_single_c_component(const CausalGraph& g, const VarSet& s);

// An S-rooted c-forest inside G[A] that extends fs, with spanning-tree bidirected part.
// Absent iff Q[S] is identifiable from G[A].
std::optional<CausalGraph> find_rooted_c_forest(const CausalGraph& g, const VarSet& a, const VarSet& s,
                                                const CausalGraph& fs);

}  // namespace gidkit
