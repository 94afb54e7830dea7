#include "gidkit/builtin.hpp"
#include "gidkit/error.hpp"
#include "gidkit/id.hpp"

#include <gtest/gtest.h>

using namespace gidkit;

TEST(Id, Fig1TraceStopsAtFirstStep) {
    const CausalGraph g = builtin_graph("fig1");
    const IdTrace t = id_single({"Y1", "Y2"}, g);
    ASSERT_TRUE(t.identifiable);
    ASSERT_EQ(t.steps.size(), 1u);
    EXPECT_EQ(t.steps[0].y, g.observed());
    EXPECT_EQ(t.steps[0].a, g.observed());
    EXPECT_EQ(t.steps[0].y_new, (VarSet{"Y1", "Y2"}));
}

TEST(Id, ThicketIsStuck) {
    const CausalGraph g = builtin_graph("thicket");
    const IdTrace t = id_single({"R"}, g);
    EXPECT_FALSE(t.identifiable);
    ASSERT_FALSE(t.steps.empty());
    EXPECT_EQ(t.steps.back().y, t.steps.back().y_new);
    EXPECT_FALSE(id({"T1", "T2", "T3"}, {"R"}, g));
}

TEST(Id, ClassicalVerdicts) {
    EXPECT_FALSE(id({"X"}, {"Y"}, builtin_graph("bow")));
    EXPECT_TRUE(id({"X"}, {"Y"}, builtin_graph("frontdoor")));
    EXPECT_TRUE(id({"X1", "X2"}, {"Y1", "Y2"}, builtin_graph("fig1")));
    const CausalGraph napkin({"W", "X", "Y", "Z"}, {{"W", "Z"}, {"Z", "X"}, {"X", "Y"}}, {{"W", "X"}, {"W", "Y"}});
    EXPECT_TRUE(id({"X"}, {"Y"}, napkin));
    const CausalGraph instrument({"X", "Y", "Z"}, {{"Z", "X"}, {"X", "Y"}}, {{"X", "Y"}});
    EXPECT_FALSE(id({"X"}, {"Y"}, instrument));
}

TEST(Id, QueryValidation) {
    const CausalGraph g = builtin_graph("bow");
    EXPECT_THROW(id({"X"}, {}, g), Error);
    EXPECT_THROW(id({"X"}, {"X"}, g), Error);
    EXPECT_THROW(id({"Q"}, {"Y"}, g), Error);
    EXPECT_EQ(outcome_ancestors({"X"}, {"Y"}, builtin_graph("frontdoor")), (VarSet{"M", "Y"}));
}

TEST(Id, SingleRequiresOneComponent) {
    try {
        id_single({"X1", "Y1"}, builtin_graph("fig1"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
}

TEST(Id, MarginalizeRequiresAncestralSet) {
    const CausalGraph g = builtin_graph("frontdoor");
    const Estimand q = Estimand::given(0, g.observed(), g.observed());
    try {
        q_marginalize(q, g.observed(), {"M"}, g);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotAncestral);
    }
    EXPECT_EQ(render(q_marginalize(q, g.observed(), {"X", "M"}, g)), "sum_{Y} Q0");
}

TEST(Id, FactorizeFig1) {
    const CausalGraph g = builtin_graph("fig1");
    const auto parts = ccomp_factorize(Estimand::given(0, g.observed(), g.observed()), g.observed(), g);
    ASSERT_EQ(parts.size(), 2u);
    const std::string y = render(parts.at({"Y1", "Y2"}));
    EXPECT_NE(y.find("P(y1|x1,x2)"), std::string::npos) << y;
    EXPECT_NE(y.find("P(y2|y1,x1,x2)"), std::string::npos) << y;
}

TEST(Id, DeriveRefusesNonIdentifiable) {
    const CausalGraph g = builtin_graph("bow");
    try {
        derive_estimand_single({"Y"}, g, Estimand::given(0, g.observed(), g.observed()));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotIdentifiable);
    }
}
