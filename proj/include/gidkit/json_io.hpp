#pragma once

#include "gidkit/estimand.hpp"
#include "gidkit/gid.hpp"
#include "gidkit/graph.hpp"
#include "gidkit/sem.hpp"
#include "gidkit/table.hpp"
#include "gidkit/witness.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace gidkit {

using Json = nlohmann::ordered_json;

// Parses text; syntax errors become ParseError naming the source, line and column.
Json parse_json(const std::string& text, const std::string& source = "input");
Json read_json_file(const std::string& path);

Json graph_to_json(const CausalGraph& g);
CausalGraph graph_from_json(const Json& j);

Json table_to_json(const DistTable& t);
DistTable table_from_json(const Json& j);

Json sem_to_json(const DiscreteSEM& m);
DiscreteSEM sem_from_json(const Json& j);

Json estimand_to_json(const Estimand& e);
Estimand estimand_from_json(const Json& j);

// A list of name-lists; the string "*" (alone or as a list entry) stands for all observed vertices.
GivenCollection collection_from_json(const Json& j, const CausalGraph& g);
Json collection_to_json(const GivenCollection& a);

Json realization_to_json(const Realization& r);
Realization realization_from_json(const Json& j);

Json report_to_json(const VerificationReport& r);
Json witness_to_json(const WitnessPair& w);
// Reads the models, S, collection and v0 back; construction metadata is not restored.
WitnessPair witness_from_json(const Json& j);

}  // namespace gidkit
