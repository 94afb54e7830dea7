#pragma once

#include "gidkit/estimand.hpp"
#include "gidkit/graph.hpp"

#include <map>
#include <vector>

namespace gidkit {

struct IdStep {
    VarSet y;
    VarSet a;
    VarSet y_new;
};

struct IdTrace {
    std::vector<IdStep> steps;
    bool identifiable = false;
};

// Validates a query (X, Y) against g: known vertices, Y nonempty, X and Y disjoint.
void require_query(const VarSet& x, const VarSet& y, const CausalGraph& g);

// Anc(Y) in G[V \ X].
VarSet outcome_ancestors(const VarSet& x, const VarSet& y, const CausalGraph& g);

bool id(const VarSet& x, const VarSet& y, const CausalGraph& g);
IdTrace id_single(const VarSet& s, const CausalGraph& g);

// Q[W] = sum_{C \ W} Q[C] for W ancestral in G[C].
Estimand q_marginalize(const Estimand& q, const VarSet& c, const VarSet& w, const CausalGraph& g);

// Q[H_j] for every c-component H_j of H, by the telescoping product over a topological order of G[H].
std::map<VarSet, Estimand> ccomp_factorize(const Estimand& q, const VarSet& h, const CausalGraph& g);

// Q[S] in terms of `source` = Q[V(g)], replaying the id_single trace.
Estimand derive_estimand_single(const VarSet& s, const CausalGraph& g, const Estimand& source);

}  // namespace gidkit
