#include "gidkit/error.hpp"
#include "gidkit/estimand.hpp"

#include <gtest/gtest.h>

using namespace gidkit;

namespace {

const VarSet kAB{"A", "B"};

DistTable p_ab() {
    return DistTable({{"A", 2}, {"B", 2}}, {Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)});
}

Estimand q() { return Estimand::given(0, kAB, kAB); }

Estimand a_given_b() {
    return Estimand::quotient(q(), Estimand::marginal(q(), {"A"}), Estimand::Conditional{"A", {"B"}});
}

}  // namespace

TEST(Estimand, FactoryRules) {
    EXPECT_EQ(Estimand::marginal(q(), {}), q());
    EXPECT_EQ(Estimand::product({q()}), q());
    const Estimand nested = Estimand::marginal(Estimand::marginal(q(), {"A"}), {"B"});
    EXPECT_EQ(nested.kind(), Estimand::Kind::Marginal);
    EXPECT_EQ(nested.over(), kAB);
    EXPECT_EQ(nested.child(), q());
    EXPECT_TRUE(nested.scope().empty());
    EXPECT_TRUE(q().is_observational());
    EXPECT_FALSE(Estimand::given(1, {"A"}, kAB).is_observational());
}

TEST(Estimand, FactoryErrors) {
    EXPECT_THROW(Estimand::given(0, {"C"}, kAB), Error);
    EXPECT_THROW(Estimand::marginal(q(), {"C"}), Error);
    EXPECT_THROW(Estimand::quotient(Estimand::marginal(q(), {"B"}), q()), Error);
}

TEST(Estimand, EvaluateConditional) {
    const std::vector<DistTable> given{p_ab()};
    EXPECT_EQ(evaluate(a_given_b(), given, {{"A", 0}, {"B", 1}}), Rational(2, 3));
    EXPECT_EQ(evaluate(a_given_b(), given, {{"A", 1}, {"B", 0}, {"Z", 4}}), Rational(1, 5));
    const DistTable t = evaluate_table(a_given_b(), given);
    EXPECT_EQ(t.values(), (std::vector<Rational>{Rational(4, 5), Rational(2, 3), Rational(1, 5), Rational(1, 3)}));
}

TEST(Estimand, PointwiseAndTableAgree) {
    const Estimand e = Estimand::marginal(Estimand::product({a_given_b(), Estimand::marginal(q(), {"A"})}), {"B"});
    const std::vector<DistTable> given{p_ab()};
    const DistTable t = evaluate_table(e, given);
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(t.value(i), evaluate(e, given, t.realization(i)));
    EXPECT_EQ(t.total(), 1);
}

TEST(Estimand, ZeroDenominatorNamesRealization) {
    const DistTable zero({{"A", 2}, {"B", 2}}, {Rational(1, 2), 0, Rational(1, 2), 0});
    for (bool pointwise : {true, false}) {
        try {
            if (pointwise) evaluate(a_given_b(), {zero}, {{"A", 0}, {"B", 1}});
            else evaluate_table(a_given_b(), {zero});
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::NonPositiveInput);
            EXPECT_NE(std::string(e.what()).find("B=1"), std::string::npos) << e.what();
        }
    }
}

TEST(Estimand, ScopeAndIndexChecks) {
    EXPECT_THROW(evaluate(q(), {}, {{"A", 0}, {"B", 0}}), Error);
    const DistTable wrong({{"A", 2}}, {Rational(1, 2), Rational(1, 2)});
    try {
        evaluate_table(q(), {wrong});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ScopeMismatch);
    }
    EXPECT_THROW(evaluate(q(), {p_ab()}, {{"A", 0}}), Error);
}

TEST(Estimand, Render) {
    EXPECT_EQ(render(q()), "Q0");
    EXPECT_EQ(render(a_given_b()), "P(a|b)");
    EXPECT_EQ(render(Estimand::quotient(q(), Estimand::marginal(q(), {"A"}))), "( Q0 / sum_{A} Q0 )");
    EXPECT_EQ(render(Estimand::marginal(Estimand::product({a_given_b(), Estimand::given(1, {"B"}, kAB)}), {"B"})),
              "sum_{B} ( P(a|b) * Q1 )");
}
