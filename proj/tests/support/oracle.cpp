#include "support/oracle.hpp"

#include <functional>

namespace oracle {

using namespace gidkit;

namespace {

struct Space {
    std::vector<VarId> names;
    std::vector<int> cards;
};

Space all_variables(const DiscreteSEM& m) {
    Space s;
    for (const auto& [x, n] : m.domains()) {
        s.names.push_back(x);
        s.cards.push_back(n);
    }
    return s;
}

void for_each(const Space& space, const std::function<void(const Realization&)>& f) {
    std::vector<int> digits(space.names.size(), 0);
    while (true) {
        Realization r;
        for (std::size_t i = 0; i < digits.size(); ++i) r[space.names[i]] = digits[i];
        f(r);
        std::size_t i = digits.size();
        while (i > 0 && ++digits[i - 1] == space.cards[i - 1]) digits[--i] = 0;
        if (i == 0) return;
    }
}

std::vector<Variable> observed_scope(const DiscreteSEM& m, const VarSet& keep) {
    std::vector<Variable> out;
    for (const auto& x : keep) out.push_back({x, m.card(x)});
    return out;
}

Rational prior_weight(const DiscreteSEM& m, const Realization& r) {
    Rational w = 1;
    for (const auto& [u, p] : m.priors()) w *= p[r.at(u)];
    return w;
}

std::size_t index_of(const DistTable& t, const Realization& r) {
    std::vector<int> digits;
    for (const auto& v : t.scope()) digits.push_back(r.at(v.name));
    return t.encode(digits);
}

}  // namespace

DistTable joint(const DiscreteSEM& m) {
    const auto scope = observed_scope(m, m.graph().observed());
    const DistTable shape = DistTable::filled(scope, 0);
    std::vector<Rational> values(shape.size());
    for_each(all_variables(m), [&](const Realization& r) {
        Rational w = prior_weight(m, r);
        for (const auto& x : m.graph().observed()) w *= m.cpt(x).at(r);
        values[index_of(shape, r)] += w;
    });
    return DistTable(scope, values);
}

DistTable q(const DiscreteSEM& m, const VarSet& s) {
    const auto scope = observed_scope(m, m.graph().observed());
    const DistTable shape = DistTable::filled(scope, 0);
    std::vector<Rational> values(shape.size());
    for_each(all_variables(m), [&](const Realization& r) {
        Rational w = prior_weight(m, r);
        for (const auto& x : s) w *= m.cpt(x).at(r);
        values[index_of(shape, r)] += w;
    });
    return DistTable(scope, values);
}

DistTable effect(const DiscreteSEM& m, const VarSet& x, const VarSet& y) {
    VarSet xy = x;
    xy.insert(y.begin(), y.end());
    const auto scope = observed_scope(m, xy);
    const DistTable shape = DistTable::filled(scope, 0);
    std::vector<Rational> values(shape.size());
    for_each(all_variables(m), [&](const Realization& r) {
        Rational w = prior_weight(m, r);
        for (const auto& v : m.graph().observed())
            if (!x.count(v)) w *= m.cpt(v).at(r);
        values[index_of(shape, r)] += w;
    });
    return DistTable(scope, values);
}

std::string estimand_mismatch(const CausalGraph& g, const VarSet& x, const VarSet& y, const GivenCollection& given,
                              const Estimand& e, int models, std::uint64_t seed0) {
    for (int k = 0; k < models; ++k) {
        const DiscreteSEM m = random_positive_sem(g, seed0 + k);
        std::vector<DistTable> tables;
        for (const auto& a : given.sets()) tables.push_back(q(m, a));
        const DistTable truth = effect(m, x, y);
        const DistTable value = evaluate_table(e, tables);
        const DistTable both = value.expand(merge_scopes(value.scope(), truth.scope()));
        for (std::size_t i = 0; i < both.size(); ++i) {
            const Realization r = both.realization(i);
            if (both.value(i) != truth.at(r))
                return "seed " + std::to_string(seed0 + k) + " at " + to_string(r) + ": " + to_string(both.value(i)) +
                       " vs " + to_string(truth.at(r));
        }
    }
    return "";
}

}  // namespace oracle
