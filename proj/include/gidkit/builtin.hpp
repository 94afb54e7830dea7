#pragma once

#include "gidkit/graph.hpp"
#include "gidkit/sem.hpp"

#include <map>
#include <string>
#include <vector>

namespace gidkit {

// "fig1": X1->Y1, X2->Y2, X1<->X2, Y1<->Y2.
// "thicket": T3->T2->T1->R, R<->T2, T1<->T3, R<->T3.
// "bow": X->Y, X<->Y.
// "frontdoor": X->M->Y, X<->Y.
CausalGraph builtin_graph(const std::string& name);
std::vector<std::string> builtin_graph_names();

struct ModelPair {
    DiscreteSEM m1;
    DiscreteSEM m2;
};

// "example2" on fig1 and "thicket" on the thicket graph.
std::map<std::string, ModelPair> builtin_models();

// Codes of the length-two vector variables T1, T2 in the thicket models.
extern const VectorCoding kThicketPair;

}  // namespace gidkit
