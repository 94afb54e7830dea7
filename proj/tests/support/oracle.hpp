#pragma once

#include "gidkit/estimand.hpp"
#include "gidkit/gid.hpp"
#include "gidkit/sem.hpp"
#include "gidkit/table.hpp"

namespace oracle {

// Brute-force enumeration over every joint assignment of observed and latent variables.
// Independent of DistTable::multiply, sum_out and elimination.

// P(v) over all observed vertices.
gidkit::DistTable joint(const gidkit::DiscreteSEM& m);

// Q[S](v): sum over latents of the CPTs of S and all latent priors, tabulated over all observed vertices.
gidkit::DistTable q(const gidkit::DiscreteSEM& m, const gidkit::VarSet& s);

// P_x(y) tabulated over X u Y, by truncated factorization.
gidkit::DistTable effect(const gidkit::DiscreteSEM& m, const gidkit::VarSet& x, const gidkit::VarSet& y);

// Evaluates e on oracle Q tables of `models` random positive SEMs (seeds seed0, seed0+1, ...) and compares it
// with effect() on every realization of X u Y u scope(e). Returns "" on agreement, else a description.
std::string estimand_mismatch(const gidkit::CausalGraph& g, const gidkit::VarSet& x, const gidkit::VarSet& y,
                              const gidkit::GivenCollection& given, const gidkit::Estimand& e, int models,
                              std::uint64_t seed0);

}  // namespace oracle
