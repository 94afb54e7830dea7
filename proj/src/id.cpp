#include "gidkit/id.hpp"

#include "gidkit/error.hpp"

#include <algorithm>

namespace gidkit {

void require_query(const VarSet& x, const VarSet& y, const CausalGraph& g) {
    require_vertices(g, x);
    require_vertices(g, y);
    if (y.empty()) throw Error(ErrorKind::InvalidArgument, "outcome set is empty");
    if (!set_intersection(x, y).empty())
        throw Error(ErrorKind::InvalidArgument, "treatment and outcome overlap on " + to_string(set_intersection(x, y)));
}

VarSet outcome_ancestors(const VarSet& x, const VarSet& y, const CausalGraph& g) {
    return ancestors(induced_subgraph(g, set_difference(g.observed(), x)), y);
}

bool id(const VarSet& x, const VarSet& y, const CausalGraph& g) {
    require_query(x, y, g);
    for (const auto& part : c_components(g, outcome_ancestors(x, y, g)))
        if (!id_single(part, g).identifiable) return false;
    return true;
}

IdTrace id_single(const VarSet& s, const CausalGraph& g) {
    require_vertices(g, s);
    if (!is_single_c_component(g, s)) throw Error(ErrorKind::InvalidArgument, to_string(s) + " is not a single c-component");
    IdTrace trace;
    VarSet y = g.observed();
    while (y != s) {
        IdStep step{y, ancestors(induced_subgraph(g, y), s), {}};
        for (auto& part : c_components(g, step.a))
            if (part.count(*s.begin())) step.y_new = std::move(part);
        const bool stuck = step.y_new == y;
        y = step.y_new;
        trace.steps.push_back(std::move(step));
        if (stuck) return trace;
    }
    trace.identifiable = true;
    return trace;
}

Estimand q_marginalize(const Estimand& q, const VarSet& c, const VarSet& w, const CausalGraph& g) {
    if (!is_subset(w, c)) throw Error(ErrorKind::InvalidArgument, to_string(w) + " is not inside " + to_string(c));
    if (ancestors(induced_subgraph(g, c), w) != w)
        throw Error(ErrorKind::NotAncestral, to_string(w) + " is not ancestral in G[" + to_string(c) + "]");
    return Estimand::marginal(q, set_difference(c, w));
}

std::map<VarSet, Estimand> ccomp_factorize(const Estimand& q, const VarSet& h, const CausalGraph& g) {
    const std::vector<VarSet> parts = c_components(g, h);
    if (parts.size() == 1) return {{h, q}};

    const bool observational =
        q.is_observational() || (q.kind() == Estimand::Kind::Marginal && q.child().is_observational());
    const std::vector<VarId> order = induced_subgraph(g, h).topological_order();

    // prefix[i] = Q[{V_1..V_i}] = sum over the rest of H.
    std::vector<Estimand> prefix;
    VarSet rest = h;
    prefix.push_back(Estimand::marginal(q, rest));
    for (const auto& v : order) {
        rest.erase(v);
        prefix.push_back(Estimand::marginal(q, rest));
    }

    std::map<VarSet, Estimand> out;
    for (const auto& part : parts) {
        std::vector<Estimand> factors;
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (!part.count(order[i])) continue;
            std::optional<Estimand::Conditional> cond;
            if (observational) {
                cond = Estimand::Conditional{order[i], {}};
                for (std::size_t j = 0; j < i; ++j)
                    if (part.count(order[j])) cond->given.push_back(order[j]);
                for (std::size_t j = 0; j < i; ++j)
                    if (!part.count(order[j])) cond->given.push_back(order[j]);
            }
            factors.push_back(Estimand::quotient(prefix[i + 1], prefix[i], cond));
        }
        out.emplace(part, Estimand::product(std::move(factors)));
    }
    return out;
}

Estimand derive_estimand_single(const VarSet& s, const CausalGraph& g, const Estimand& source) {
    const IdTrace trace = id_single(s, g);
    if (!trace.identifiable)
        throw Error(ErrorKind::NotIdentifiable, "Q" + to_string(s) + " is not identifiable from this graph");
    Estimand expr = source;
    for (const auto& step : trace.steps) {
        expr = q_marginalize(expr, step.y, step.a, g);
        expr = ccomp_factorize(expr, step.a, g).at(step.y_new);
    }
    return expr;
}

}  // namespace gidkit
