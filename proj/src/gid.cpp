#include "gidkit/gid.hpp"

#include "gidkit/error.hpp"
#include "gidkit/id.hpp"

#include <algorithm>

namespace gidkit {

GivenCollection::GivenCollection(std::vector<VarSet> sets) : sets_(std::move(sets)) {
    for (std::size_t i = 0; i < sets_.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (sets_[i] == sets_[j])
                throw Error(ErrorKind::InvalidArgument, "duplicate given set " + to_string(sets_[i]) + " at positions " +
                                                            std::to_string(j) + " and " + std::to_string(i));
}

void GivenCollection::require_within(const CausalGraph& g) const {
    for (const auto& a : sets_) require_vertices(g, a);
}

std::optional<SingleResult> gid_single(const VarSet& s, const GivenCollection& a, const CausalGraph& g) {
    require_vertices(g, s);
    a.require_within(g);
    if (!is_single_c_component(g, s)) throw Error(ErrorKind::InvalidArgument, to_string(s) + " is not a single c-component");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!is_subset(s, a[i])) continue;
        const CausalGraph sub = induced_subgraph(g, a[i]);
        if (!id_single(s, sub).identifiable) continue;
        return SingleResult{i, derive_estimand_single(s, sub, Estimand::given(i, a[i], g.observed()))};
    }
    return std::nullopt;
}

GidResult gid(const VarSet& x, const VarSet& y, const GivenCollection& a, const CausalGraph& g) {
    require_query(x, y, g);
    a.require_within(g);
    const VarSet s = outcome_ancestors(x, y, g);
    GidResult result;
    result.decision = true;
    std::vector<Estimand> factors;
    for (const auto& part : c_components(g, s)) {
        ComponentResult cr{part, std::nullopt, std::nullopt};
        if (auto found = gid_single(part, a, g)) {
            cr.source = found->source;
            cr.estimand = found->estimand;
            factors.push_back(found->estimand);
        } else {
            result.decision = false;
        }
        result.per_component.push_back(std::move(cr));
    }
    if (result.decision) result.final = Estimand::marginal(Estimand::product(factors), set_difference(s, y));
    return result;
}

}  // namespace gidkit
