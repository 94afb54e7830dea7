#include "gidkit/error.hpp"
#include "gidkit/gid.hpp"
#include "gidkit/id.hpp"
#include "gidkit/json_io.hpp"
#include "gidkit/witness.hpp"
#include "support/corpus.hpp"
#include "support/oracle.hpp"

#include <gtest/gtest.h>

using namespace gidkit;

namespace {

std::vector<corpus::Instance> instances() {
    auto out = corpus::observational_instances(6);
    for (auto more : {corpus::collection_instances(6), corpus::superset_instances(6)})
        out.insert(out.end(), more.begin(), more.end());
    return out;
}

// Every realization of the table's variables other than U0.
std::vector<Realization> rows_without(const DistTable& t, const VarId& u0) {
    std::vector<Realization> out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        Realization r = t.realization(i);
        if (r.count(u0) && r.at(u0) != 0) continue;
        r.erase(u0);
        out.push_back(std::move(r));
    }
    return out;
}

void check_construction(const WitnessConstruction& w, const std::string& where) {
    const auto gamma = w.gamma_block();
    for (const auto& theta : w.theta)
        for (const auto& v : rows_without(theta, w.u0)) {
            const RationalRow row = vector_at(w, theta, v);
            EXPECT_EQ(dot(w.beta, row), 0) << where;
            for (int j : gamma) EXPECT_EQ(row[j], row[gamma[0]]) << where;
        }
    EXPECT_EQ(dot(w.beta, vector_at(w, w.eta, w.v0)), 1) << where;
    Rational total = 0;
    for (const auto& p : w.p) {
        EXPECT_GT(p, 0) << where;
        EXPECT_LT(p, 1) << where;
        total += p;
    }
    EXPECT_EQ(total, 1) << where;
}

}  // namespace

TEST(Properties, SoundnessOnFreshModels) {
    std::size_t checked = 0;
    for (const auto& inst : instances()) {
        const GidResult r = gid(inst.x, inst.y, inst.given, inst.graph);
        if (!r.decision) continue;
        EXPECT_EQ(oracle::estimand_mismatch(inst.graph, inst.x, inst.y, inst.given, *r.final, 3, 7000), "") << inst.name;
        ++checked;
    }
    EXPECT_GT(checked, 50u);
}

TEST(Properties, PerComponentEstimandsMatchQ) {
    for (const auto& inst : instances()) {
        const GidResult r = gid(inst.x, inst.y, inst.given, inst.graph);
        const DiscreteSEM m = random_positive_sem(inst.graph, 77);
        std::vector<DistTable> given;
        for (const auto& a : inst.given.sets()) given.push_back(oracle::q(m, a));
        for (const auto& c : r.per_component) {
            if (!c.estimand) continue;
            const DistTable value = evaluate_table(*c.estimand, given);
            const DistTable truth = oracle::q(m, c.set);
            for (std::size_t i = 0; i < truth.size(); ++i)
                EXPECT_EQ(value.at(truth.realization(i)), truth.value(i)) << inst.name << " " << to_string(c.set);
        }
    }
}

TEST(Properties, CompletenessWithConstructionInvariants) {
    std::size_t main_case = 0, special = 0;
    for (const auto& inst : instances()) {
        const GidResult r = gid(inst.x, inst.y, inst.given, inst.graph);
        for (const auto& c : r.per_component) {
            if (c.source) continue;
            const std::string where = inst.name + " " + to_string(c.set);
            const WitnessPair w = build_witness(c.set, inst.given, inst.graph);
            const VerificationReport rep = verify_report(w);
            EXPECT_TRUE(rep.verified) << where;
            for (bool same : rep.given_equal) EXPECT_TRUE(same) << where;
            if (w.construction) {
                check_construction(*w.construction, where);
                ++main_case;
            } else {
                ++special;
            }
        }
    }
    EXPECT_GT(main_case, 5u);
    EXPECT_GT(special, 5u);
}

TEST(Properties, WitnessesAreReproducible) {
    std::size_t n = 0;
    for (const auto& inst : corpus::superset_instances(2)) {
        const GidResult r = gid(inst.x, inst.y, inst.given, inst.graph);
        for (const auto& c : r.per_component) {
            if (c.source || n++ > 20) continue;
            EXPECT_EQ(witness_to_json(build_witness(c.set, inst.given, inst.graph)).dump(),
                      witness_to_json(build_witness(c.set, inst.given, inst.graph)).dump())
                << inst.name;
        }
    }
}

TEST(Properties, GidWithJointAgreesWithId) {
    for (const auto& inst : corpus::observational_instances(6))
        EXPECT_EQ(gid(inst.x, inst.y, inst.given, inst.graph).decision, id(inst.x, inst.y, inst.graph)) << inst.name;
}

TEST(Properties, CorpusShape) {
    const auto graphs = corpus::graphs();
    EXPECT_GE(graphs.size(), 30u);
    for (const auto& [name, g] : graphs) {
        EXPECT_LE(g.observed().size(), 6u) << name;
        EXPECT_LE(g.bidirected().size(), 4u) << name;
    }
}

TEST(Properties, ConditionalInterventionalPositivity) {
    for (const auto& [name, g] : corpus::graphs()) {
        if (g.observed().size() < 3) continue;
        const DiscreteSEM m = random_positive_sem(g, 21);
        const VarId x = *g.observed().begin();
        const VarId w = *g.observed().rbegin();
        const DistTable p = intervene(m, {x}, {{x, 0}});
        const DistTable cond = p.divide(p.sum_out(set_difference(p.names(), {w})));
        for (const auto& v : cond.values()) EXPECT_GT(v, 0) << name;
    }
}
