#pragma once

#include "gidkit/gid.hpp"
#include "gidkit/graph.hpp"
#include "gidkit/linalg.hpp"
#include "gidkit/rational.hpp"
#include "gidkit/sem.hpp"
#include "gidkit/table.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gidkit {

struct ModifiedGraph {
    CausalGraph g_prime;
    // Given sets intersected with V', reordered so that the sets strictly containing S come first.
    std::vector<VarSet> a_prime;
    // order[i] is the original index of a_prime[i].
    std::vector<std::size_t> order;
    // forests[i] is built inside the i-th reordered set, for i < forests.size().
    std::vector<CausalGraph> forests;
};

struct WitnessConstruction {
    ModifiedGraph modified;
    VarSet s;
    int kappa = 5;
    Rational epsilon;
    VarId u0;
    VarId s0;
    std::vector<VarId> t;
    // Forest indices containing each vertex or latent of G', increasing; alpha is the count.
    std::map<VarId, std::vector<std::size_t>> membership;
    std::map<VarId, int> alpha;
    std::map<VarId, VectorCoding> coding;
    int d = 0;
    // theta[i] is over the variables of A'_i's factorization with U0 left free; eta likewise for S.
    std::vector<DistTable> theta;
    DistTable eta;
    std::vector<Rational> beta;
    std::vector<Rational> p;
    Realization v0;

    // Component X[i] of a vector-valued variable for forest i.
    int component(const VarId& x, int code, std::size_t forest) const;
    bool in_forest(const VarId& x, std::size_t forest) const;
    // dom(U0) index of (2x, 0, ..., 0) for x in [0:(kappa-1)/2].
    std::vector<int> gamma_block() const;
};

struct WitnessPair {
    DiscreteSEM m1;
    DiscreteSEM m2;
    VarSet s;
    GivenCollection collection;
    Realization v0;
    std::optional<WitnessConstruction> construction;
};

struct VerificationReport {
    bool positive_m1 = false;
    bool positive_m2 = false;
    std::vector<bool> given_equal;
    Rational q_s_m1;
    Rational q_s_m2;
    bool verified = false;
};

CausalGraph minimal_spanning_cforest(const CausalGraph& g, const VarSet& s);
ModifiedGraph modify_graph(const CausalGraph& g, const VarSet& s, const GivenCollection& a);

// Fills the choices (U0, S0, T_i, alpha, codings, d) for the given kappa and epsilon.
WitnessConstruction prepare_construction(const ModifiedGraph& modified, const VarSet& s, int kappa,
                                         const Rational& epsilon);
DiscreteSEM construct_m1(const WitnessConstruction& w);
void build_linear_system(WitnessConstruction& w, const DiscreteSEM& m1);
// theta/eta vector at a realization over (a superset of) the table's free vertices.
RationalRow vector_at(const WitnessConstruction& w, const DistTable& table, const Realization& v);
// Finds v0 and beta, p; returns false when no v0 separates eta from the span of the theta rows.
bool solve_witness_distribution(WitnessConstruction& w);
DiscreteSEM construct_m2(const WitnessConstruction& w, const DiscreteSEM& m1);

WitnessPair special_case_witness(const CausalGraph& g_prime, const VarSet& s, const std::vector<VarSet>& a_prime,
                                 const Rational& epsilon = Rational(1, 4));

// Pads a model on a subgraph of g: vertices and latents outside it get the single value 0.
DiscreteSEM lift_model(const DiscreteSEM& m, const CausalGraph& g);

WitnessPair build_witness(const VarSet& s, const GivenCollection& a, const CausalGraph& g);

VerificationReport verify_report(const WitnessPair& w);
bool verify_witness(const WitnessPair& w);

}  // namespace gidkit
