#pragma once

#include "gidkit/graph.hpp"
#include "gidkit/rational.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gidkit {

struct Variable {
    VarId name;
    int card = 1;
    bool operator==(const Variable&) const = default;
};

using Realization = std::map<VarId, int>;

std::string to_string(const Realization& r);

// Enumeration cap from GIDKIT_MAX_STATES (default 10^7).
std::size_t max_states();

// Exact table over a lexicographically sorted scope, row-major with the last variable fastest.
class DistTable {
public:
    DistTable();
    DistTable(std::vector<Variable> scope, std::vector<Rational> values);

    static DistTable constant(const Rational& value);
    static DistTable filled(std::vector<Variable> scope, const Rational& value);
    static DistTable from_function(std::vector<Variable> scope,
                                   const std::function<Rational(const std::vector<int>&)>& f);

    const std::vector<Variable>& scope() const { return scope_; }
    VarSet names() const;
    bool has(const VarId& v) const;
    int card(const VarId& v) const;
    std::size_t size() const { return values_.size(); }

    const std::vector<Rational>& values() const { return values_; }
    const Rational& value(std::size_t index) const { return values_[index]; }
    std::vector<int> decode(std::size_t index) const;
    Realization realization(std::size_t index) const;
    std::size_t encode(const std::vector<int>& digits) const;

    // Reads the entry at the projection of r onto the scope; extra keys are ignored.
    const Rational& at(const Realization& r) const;

    DistTable multiply(const DistTable& other) const;
    DistTable sum_out(const VarSet& vars) const;
    DistTable reduce(const Realization& fixed) const;
    // Pointwise quotient; the denominator's scope must be contained in this scope.
    DistTable divide(const DistTable& den) const;
    // Broadcast to a superset scope.
    DistTable expand(const std::vector<Variable>& scope) const;
    Rational total() const;

    bool operator==(const DistTable& other) const;

private:
    std::vector<Variable> scope_;
    std::vector<std::size_t> strides_;
    std::vector<Rational> values_;
};

// Sum-product variable elimination: multiplies all factors and sums out `eliminate`, greedily
// choosing the variable whose elimination creates the smallest intermediate factor.
DistTable eliminate(std::vector<DistTable> factors, const VarSet& eliminate);

std::vector<Variable> merge_scopes(const std::vector<Variable>& a, const std::vector<Variable>& b);

}  // namespace gidkit
