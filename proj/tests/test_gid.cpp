#include "gidkit/builtin.hpp"
#include "gidkit/error.hpp"
#include "gidkit/gid.hpp"
#include "gidkit/id.hpp"
#include "support/corpus.hpp"

#include <gtest/gtest.h>

using namespace gidkit;

namespace {

GivenCollection observational(const CausalGraph& g) { return GivenCollection({g.observed()}); }

// Joint of a hand-specified front-door model, from an independent exact enumeration (scope M, X, Y).
DistTable frontdoor_joint() {
    std::vector<Rational> v;
    for (const char* s : {"7/27", "31/135", "25/432", "17/432", "113/3150", "136/1575", "121/840", "31/210"})
        v.push_back(parse_rational(s));
    return DistTable({{"M", 2}, {"X", 2}, {"Y", 2}}, v);
}

}  // namespace

TEST(Gid, CollectionRejectsDuplicatesAndUnknownVertices) {
    EXPECT_THROW(GivenCollection({{"X"}, {"X"}}), Error);
    EXPECT_THROW(GivenCollection({{"Q"}}).require_within(builtin_graph("bow")), Error);
}

TEST(Gid, Fig1Identifiable) {
    const CausalGraph g = builtin_graph("fig1");
    const GidResult r = gid({"X1", "X2"}, {"Y1", "Y2"}, observational(g), g);
    ASSERT_TRUE(r.decision);
    ASSERT_EQ(r.per_component.size(), 1u);
    EXPECT_EQ(r.per_component[0].source, 0u);
    EXPECT_EQ(render(*r.final), "P(y1|x1,x2) * P(y2|y1,x1,x2)");
}

TEST(Gid, ThicketNotIdentifiableFromJoint) {
    const CausalGraph g = builtin_graph("thicket");
    const GidResult r = gid({"T1", "T2", "T3"}, {"R"}, observational(g), g);
    EXPECT_FALSE(r.decision);
    EXPECT_FALSE(r.final.has_value());
    ASSERT_EQ(r.per_component.size(), 1u);
    EXPECT_FALSE(r.per_component[0].source.has_value());
}

TEST(Gid, FirstQualifyingSetIsUsed) {
    const CausalGraph g = builtin_graph("thicket");
    const auto single = gid_single({"R"}, GivenCollection({{"R", "T1"}, g.observed()}), g);
    ASSERT_TRUE(single.has_value());
    EXPECT_EQ(single->source, 0u);
    const GidResult r = gid({"T1", "T2", "T3"}, {"R"}, GivenCollection({g.observed(), {"R", "T1", "T2"}}), g);
    ASSERT_TRUE(r.decision);
    EXPECT_EQ(r.per_component[0].source, 1u);
}

TEST(Gid, DirectlyGivenTarget) {
    const CausalGraph g = builtin_graph("bow");
    const GidResult r = gid({"X"}, {"Y"}, GivenCollection({{"X"}, {"Y"}}), g);
    ASSERT_TRUE(r.decision);
    EXPECT_EQ(r.per_component[0].source, 1u);
    EXPECT_FALSE(gid({"X"}, {"Y"}, GivenCollection(), g).decision);
}

TEST(Gid, FrontdoorEstimandMatchesIndependentEnumeration) {
    const CausalGraph g = builtin_graph("frontdoor");
    const GidResult r = gid({"X"}, {"Y"}, observational(g), g);
    ASSERT_TRUE(r.decision);
    const DistTable t = evaluate_table(*r.final, {frontdoor_joint()});
    EXPECT_EQ(t.at({{"X", 0}, {"Y", 0}}), Rational(817, 1575));
    EXPECT_EQ(t.at({{"X", 0}, {"Y", 1}}), Rational(758, 1575));
    EXPECT_EQ(t.at({{"X", 1}, {"Y", 0}}), Rational(263, 630));
    EXPECT_EQ(t.at({{"X", 1}, {"Y", 1}}), Rational(367, 630));
}

TEST(Gid, AgreesWithIdOnObservationalCorpus) {
    for (const auto& inst : corpus::observational_instances())
        EXPECT_EQ(gid(inst.x, inst.y, inst.given, inst.graph).decision, id(inst.x, inst.y, inst.graph)) << inst.name;
}

TEST(Gid, MonotoneInTheCollection) {
    for (const auto& inst : corpus::collection_instances()) {
        if (!gid(inst.x, inst.y, inst.given, inst.graph).decision) continue;
        std::vector<VarSet> more = inst.given.sets();
        if (std::find(more.begin(), more.end(), inst.graph.observed()) == more.end()) more.push_back(inst.graph.observed());
        EXPECT_TRUE(gid(inst.x, inst.y, GivenCollection(more), inst.graph).decision) << inst.name;
    }
}
