#pragma once

#include "gidkit/graph.hpp"
#include "gidkit/rational.hpp"
#include "gidkit/table.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gidkit {

// Finite-domain SEM over a semi-Markovian graph; latents are named by latent_label.
class DiscreteSEM {
public:
    DiscreteSEM() = default;
    // cpts[X] is a table over {X} u parents_of(X) whose entries sum to 1 over X for each parent row.
    DiscreteSEM(CausalGraph graph, std::map<VarId, int> domains, std::map<VarId, std::vector<Rational>> priors,
                std::map<VarId, DistTable> cpts);

    const CausalGraph& graph() const { return graph_; }
    const std::map<VarId, int>& domains() const { return domains_; }
    const std::map<VarId, std::vector<Rational>>& priors() const { return priors_; }
    const std::map<VarId, DistTable>& cpts() const { return cpts_; }

    int card(const VarId& v) const;
    // Sorted observed parents and latent labels of X.
    std::vector<VarId> parents_of(const VarId& x) const;
    const DistTable& cpt(const VarId& x) const;
    DistTable prior_table(const VarId& latent) const;
    std::vector<Variable> observed_scope() const;

    bool operator==(const DiscreteSEM& other) const;

private:
    CausalGraph graph_;
    std::map<VarId, int> domains_;
    std::map<VarId, std::vector<Rational>> priors_;
    std::map<VarId, DistTable> cpts_;
};

// Builds P(x | parents) from f(x_value, parent_values).
DistTable make_cpt(const VarId& x, const std::vector<VarId>& parents, const std::map<VarId, int>& domains,
                   const std::function<Rational(int, const Realization&)>& f);

// Deterministic CPT: point mass on f(parent_values).
DistTable make_function_cpt(const VarId& x, const std::vector<VarId>& parents, const std::map<VarId, int>& domains,
                            const std::function<int(const Realization&)>& f);

// Mixed-radix code for vector-valued variables; component 0 is the most significant digit.
struct VectorCoding {
    std::vector<int> radices;

    int size() const;
    int component(int code, std::size_t pos) const;
    int encode(const std::vector<int>& components) const;
    std::vector<int> decode(int code) const;
};

DistTable joint(const DiscreteSEM& m);
DistTable intervene(const DiscreteSEM& m, const VarSet& x, const Realization& value);
DistTable q_eval(const DiscreteSEM& m, const VarSet& s);
bool is_positive(const DiscreteSEM& m);

// Strictly positive random model; CPT rows and priors use integer weights 1..9, normalized.
DiscreteSEM random_positive_sem(const CausalGraph& g, std::uint64_t seed, int card = 2);

}  // namespace gidkit
