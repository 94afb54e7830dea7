#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gidkit {

struct Fact {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Checks the printed facts about a builtin model pair ("example2" or "thicket").
std::vector<Fact> reproduce_facts(const std::string& name);

// Exit codes: 0 success or identifiable, 3 non-identifiable, 1 usage or input error, 2 internal or failed check.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gidkit
