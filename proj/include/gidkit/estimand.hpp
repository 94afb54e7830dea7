#pragma once

#include "gidkit/graph.hpp"
#include "gidkit/rational.hpp"
#include "gidkit/table.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gidkit {

// Immutable expression tree over given tables Q[A_i].
class Estimand {
public:
    enum class Kind { Given, Marginal, Product, Quotient };

    // Rendering hint: the quotient equals P(target | given...) of the observational distribution.
    struct Conditional {
        VarId target;
        std::vector<VarId> given;
        bool operator==(const Conditional&) const = default;
    };

    // Leaf for Q[denotes]; its table is a section over the full `scope` (the ambient vertex set).
    static Estimand given(std::size_t index, VarSet denotes, VarSet scope);
    // Returns the child unchanged when `over` is empty; nested marginals are flattened.
    static Estimand marginal(const Estimand& child, const VarSet& over);
    static Estimand product(std::vector<Estimand> children);
    static Estimand quotient(const Estimand& numerator, const Estimand& denominator,
                             std::optional<Conditional> conditional = std::nullopt);

    Kind kind() const;
    const VarSet& scope() const;

    std::size_t index() const;
    const VarSet& denotes() const;
    bool is_observational() const;

    const VarSet& over() const;
    const Estimand& child() const;

    const std::vector<Estimand>& children() const;

    const Estimand& numerator() const;
    const Estimand& denominator() const;
    const std::optional<Conditional>& conditional() const;

    // Structural equality.
    bool operator==(const Estimand& other) const;

private:
    struct Node;
    explicit Estimand(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Pointwise exact evaluation; `at` must cover the scope, other keys are ignored.
Rational evaluate(const Estimand& e, const std::vector<DistTable>& given, const Realization& at);

// Whole-table evaluation over e.scope(), bottom-up.
DistTable evaluate_table(const Estimand& e, const std::vector<DistTable>& given);

std::string render(const Estimand& e);

}  // namespace gidkit
