#pragma once

#include "gidkit/estimand.hpp"
#include "gidkit/graph.hpp"

#include <optional>
#include <vector>

namespace gidkit {

// Ordered list A_0..A_m of vertex sets whose Q-tables are available.
class GivenCollection {
public:
    GivenCollection() = default;
    // Rejects duplicate sets.
    explicit GivenCollection(std::vector<VarSet> sets);

    const std::vector<VarSet>& sets() const { return sets_; }
    std::size_t size() const { return sets_.size(); }
    bool empty() const { return sets_.empty(); }
    const VarSet& operator[](std::size_t i) const { return sets_[i]; }
    bool operator==(const GivenCollection&) const = default;

    void require_within(const CausalGraph& g) const;

private:
    std::vector<VarSet> sets_;
};

struct ComponentResult {
    VarSet set;
    std::optional<std::size_t> source;
    std::optional<Estimand> estimand;
};

struct GidResult {
    bool decision = false;
    std::vector<ComponentResult> per_component;
    std::optional<Estimand> final;
};

struct SingleResult {
    std::size_t source;
    Estimand estimand;
};

std::optional<SingleResult> gid_single(const VarSet& s, const GivenCollection& a, const CausalGraph& g);
GidResult gid(const VarSet& x, const VarSet& y, const GivenCollection& a, const CausalGraph& g);

}  // namespace gidkit
