#include "gidkit/witness.hpp"

#include "gidkit/error.hpp"
#include "gidkit/id.hpp"
#include "gidkit/linalg.hpp"

#include <algorithm>

namespace gidkit {

namespace {

struct Dsu {
    std::map<VarId, VarId> parent;
    VarId find(const VarId& v) {
        auto it = parent.find(v);
        if (it == parent.end() || it->second == v) return v;
        return parent[v] = find(it->second);
    }
    bool unite(const VarId& a, const VarId& b) {
        VarId ra = find(a), rb = find(b);
        if (ra == rb) return false;
        parent[std::max(ra, rb)] = std::min(ra, rb);
        return true;
    }
};

bool forest_has_latent(const CausalGraph& f, const VarId& label) {
    for (const auto& [a, b] : f.bidirected())
        if (latent_label(a, b) == label) return true;
    return false;
}

// Observed and latent parents of x inside one forest.
std::vector<VarId> forest_parents(const CausalGraph& f, const VarId& x) {
    std::vector<VarId> out(f.parents(x).begin(), f.parents(x).end());
    for (const auto& u : f.latent_parents(x)) out.push_back(u);
    return out;
}

std::vector<VarId> sem_parents(const CausalGraph& g, const VarId& x) {
    std::vector<VarId> out(g.parents(x).begin(), g.parents(x).end());
    for (const auto& u : g.latent_parents(x)) out.push_back(u);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rational> uniform(int n) { return std::vector<Rational>(n, Rational(1, n)); }

// Sum over every latent of the factorization except U0, which stays free.
DistTable partial_q(const DiscreteSEM& m, const VarSet& set, const VarId& u0) {
    std::vector<DistTable> factors;
    VarSet latents;
    for (const auto& x : set) {
        factors.push_back(m.cpt(x));
        for (const auto& u : m.graph().latent_parents(x)) {
            if (u == u0 || latents.count(u)) continue;
            latents.insert(u);
            factors.push_back(m.prior_table(u));
        }
    }
    return eliminate(std::move(factors), latents);
}

// One row per assignment of the table's variables other than U0 (constant rows if U0 is absent).
std::vector<RationalRow> rows_over_u0(const DistTable& t, const VarId& u0, int d,
                                      std::vector<Realization>* where = nullptr) {
    std::vector<Variable> others;
    for (const auto& v : t.scope())
        if (v.name != u0) others.push_back(v);
    const DistTable index_space = DistTable::filled(others, Rational(0));
    std::vector<RationalRow> rows(index_space.size(), RationalRow(d));
    const bool free_u0 = t.has(u0);
    for (std::size_t idx = 0; idx < t.size(); ++idx) {
        Realization r = t.realization(idx);
        const int j = free_u0 ? r.at(u0) : -1;
        r.erase(u0);
        RationalRow& row = rows[index_space.encode([&] {
            std::vector<int> digits;
            for (const auto& v : others) digits.push_back(r.at(v.name));
            return digits;
        }())];
        if (free_u0) row[j] = t.value(idx);
        else std::fill(row.begin(), row.end(), t.value(idx));
    }
    if (where) {
        where->clear();
        for (std::size_t i = 0; i < index_space.size(); ++i) where->push_back(index_space.realization(i));
    }
    return rows;
}

Realization pad_realization(const Realization& v, const CausalGraph& g) {
    Realization out;
    for (const auto& x : g.observed()) {
        auto it = v.find(x);
        out[x] = it == v.end() ? 0 : it->second;
    }
    return out;
}

}  // namespace

int WitnessConstruction::component(const VarId& x, int code, std::size_t forest) const {
    const auto& forests = membership.at(x);
    const auto it = std::find(forests.begin(), forests.end(), forest);
    if (it == forests.end()) throw Error(ErrorKind::InvalidArgument, x + " is not in forest " + std::to_string(forest));
    return coding.at(x).component(code, static_cast<std::size_t>(it - forests.begin()));
}

bool WitnessConstruction::in_forest(const VarId& x, std::size_t forest) const {
    auto it = membership.find(x);
    return it != membership.end() && std::find(it->second.begin(), it->second.end(), forest) != it->second.end();
}

std::vector<int> WitnessConstruction::gamma_block() const {
    const VectorCoding& c = coding.at(u0);
    std::vector<int> out;
    for (int x = 0; 2 * x <= kappa - 1; ++x) {
        std::vector<int> digits(c.radices.size(), 0);
        digits[0] = 2 * x;
        out.push_back(c.encode(digits));
    }
    return out;
}

CausalGraph minimal_spanning_cforest(const CausalGraph& g, const VarSet& s) {
    require_vertices(g, s);
    if (!is_single_c_component(g, s)) throw Error(ErrorKind::InvalidArgument, to_string(s) + " is not a single c-component");
    Dsu dsu;
    std::set<Edge> tree;
    const CausalGraph sub = induced_subgraph(g, s);
    for (const auto& e : sub.bidirected())
        if (dsu.unite(e.first, e.second)) tree.insert(e);
    return CausalGraph(s, {}, tree);
}

ModifiedGraph modify_graph(const CausalGraph& g, const VarSet& s, const GivenCollection& a) {
    require_vertices(g, s);
    a.require_within(g);
    if (!is_single_c_component(g, s)) throw Error(ErrorKind::InvalidArgument, to_string(s) + " is not a single c-component");
    ModifiedGraph out;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (is_subset(s, a[i]) && a[i].size() > s.size()) out.order.push_back(i);
    if (out.order.empty())
        throw Error(ErrorKind::InvalidArgument, "no given set strictly contains " + to_string(s) + "; use the special case");
    const std::size_t k = out.order.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::find(out.order.begin(), out.order.end(), i) == out.order.end()) out.order.push_back(i);

    const CausalGraph fs = minimal_spanning_cforest(g, s);
    VarSet v_prime;
    std::set<Edge> directed, bidirected;
    for (std::size_t i = 0; i < k; ++i) {
        auto f = find_rooted_c_forest(g, a[out.order[i]], s, fs);
        if (!f)
            throw Error(ErrorKind::InternalContradiction,
                        "no c-forest for " + to_string(s) + " inside " + to_string(a[out.order[i]]));
        v_prime = set_union(v_prime, f->observed());
        directed.insert(f->directed().begin(), f->directed().end());
        bidirected.insert(f->bidirected().begin(), f->bidirected().end());
        out.forests.push_back(std::move(*f));
    }
    out.g_prime = CausalGraph(v_prime, directed, bidirected);
    for (auto idx : out.order) out.a_prime.push_back(set_intersection(a[idx], v_prime));
    return out;
}

WitnessConstruction prepare_construction(const ModifiedGraph& modified, const VarSet& s, int kappa,
                                         const Rational& epsilon) {
    if (kappa <= 4 || kappa % 2 == 0) throw Error(ErrorKind::InvalidArgument, "kappa must be an odd integer > 4");
    if (epsilon <= 0 || epsilon * kappa >= 1) throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1/kappa)");
    WitnessConstruction w;
    w.modified = modified;
    w.s = s;
    w.kappa = kappa;
    w.epsilon = epsilon;
    const CausalGraph& gp = modified.g_prime;
    const auto& forests = modified.forests;

    for (const auto& x : gp.observed())
        for (std::size_t i = 0; i < forests.size(); ++i)
            if (forests[i].contains(x)) w.membership[x].push_back(i);
    for (const auto& u : gp.latent_labels())
        for (std::size_t i = 0; i < forests.size(); ++i)
            if (forest_has_latent(forests[i], u)) w.membership[u].push_back(i);
    for (const auto& [x, in] : w.membership) w.alpha[x] = static_cast<int>(in.size());

    for (const auto& [a, b] : forests[0].bidirected()) {
        if (s.count(a) == s.count(b)) continue;
        const VarId label = latent_label(a, b);
        if (w.u0.empty() || label < w.u0) {
            w.u0 = label;
            w.s0 = s.count(a) ? a : b;
        }
    }
    if (w.u0.empty()) throw Error(ErrorKind::InternalContradiction, "first c-forest has no latent between S and T");
    for (std::size_t i = 0; i < forests.size(); ++i) {
        VarId chosen;
        for (const auto& x : set_difference(forests[i].observed(), s)) {
            const auto& ch = forests[i].children(x);
            if (std::any_of(ch.begin(), ch.end(), [&](const VarId& c) { return s.count(c) > 0; })) {
                chosen = x;
                break;
            }
        }
        if (chosen.empty()) throw Error(ErrorKind::InternalContradiction, "c-forest has no vertex with a child in S");
        w.t.push_back(chosen);
    }

    const VarSet s_latents = [&] {
        VarSet out;
        for (const auto& u : induced_subgraph(gp, s).latent_labels()) out.insert(u);
        return out;
    }();
    for (const auto& x : gp.observed()) {
        if (s.count(x)) w.coding[x] = VectorCoding{{kappa + 1}};
        else w.coding[x] = VectorCoding{std::vector<int>(w.alpha.at(x), 2)};
    }
    for (const auto& u : gp.latent_labels()) {
        if (s_latents.count(u)) {
            w.coding[u] = VectorCoding{{kappa + 1}};
        } else if (u == w.u0) {
            std::vector<int> radices(w.alpha.at(u), 2);
            radices[0] = kappa + 1;
            w.coding[u] = VectorCoding{radices};
        } else {
            w.coding[u] = VectorCoding{std::vector<int>(w.alpha.at(u), 2)};
        }
    }
    w.d = w.coding.at(w.u0).size();
    return w;
}

DiscreteSEM construct_m1(const WitnessConstruction& w) {
    const CausalGraph& gp = w.modified.g_prime;
    const auto& forests = w.modified.forests;
    const VarSet s_latents = [&] {
        VarSet out;
        for (const auto& u : induced_subgraph(gp, w.s).latent_labels()) out.insert(u);
        return out;
    }();

    std::map<VarId, int> domains;
    std::map<VarId, std::vector<Rational>> priors;
    for (const auto& [x, c] : w.coding) domains[x] = c.size();
    for (const auto& u : gp.latent_labels()) priors[u] = uniform(domains.at(u));

    std::map<VarId, DistTable> cpts;
    for (const auto& x : gp.observed()) {
        const std::vector<VarId> parents = sem_parents(gp, x);
        if (!w.s.count(x)) {
            const auto& in = w.membership.at(x);
            cpts[x] = make_function_cpt(x, parents, domains, [&](const Realization& pa) {
                std::vector<int> bits;
                for (auto i : in) {
                    int sum = 0;
                    for (const auto& y : forest_parents(forests[i], x)) sum += w.component(y, pa.at(y), i);
                    bits.push_back(sum % 2);
                }
                return w.coding.at(x).encode(bits);
            });
            continue;
        }
        const bool is_s0 = x == w.s0;
        std::vector<VarId> s_parents;
        for (const auto& u : induced_subgraph(gp, w.s).latent_parents(x)) s_parents.push_back(u);
        const int range = w.kappa + 1;
        cpts[x] = make_cpt(x, parents, domains, [&](int value, const Realization& pa) -> Rational {
            bool indicator = false;
            for (std::size_t i = 0; i < forests.size() && !indicator; ++i) {
                const VarId& ti = w.t[i];
                if (pa.count(ti) && w.component(ti, pa.at(ti), i) == 0) indicator = true;
                if (is_s0 && i != 0 && w.in_forest(w.u0, i) && w.component(w.u0, pa.at(w.u0), i) == 1) indicator = true;
                for (const auto& [y, val] : pa) {
                    if (indicator) break;
                    if (s_latents.count(y) || y == ti || (is_s0 && y == w.u0)) continue;
                    if (w.in_forest(y, i) && w.component(y, val, i) == 1) indicator = true;
                }
            }
            if (indicator) return Rational(1, range);
            int m = is_s0 ? w.coding.at(w.u0).component(pa.at(w.u0), 0) : 0;
            for (const auto& u : s_parents) m += pa.at(u);
            return value == m % range ? Rational(1) - w.kappa * w.epsilon : w.epsilon;
        });
    }
    return DiscreteSEM(gp, domains, priors, cpts);
}

void build_linear_system(WitnessConstruction& w, const DiscreteSEM& m1) {
    w.theta.clear();
    for (const auto& a : w.modified.a_prime) w.theta.push_back(partial_q(m1, a, w.u0));
    w.eta = partial_q(m1, w.s, w.u0);
}

RationalRow vector_at(const WitnessConstruction& w, const DistTable& table, const Realization& v) {
    RationalRow out(w.d);
    Realization r = v;
    for (int j = 0; j < w.d; ++j) {
        r[w.u0] = j;
        out[j] = table.at(r);
    }
    return out;
}

bool solve_witness_distribution(WitnessConstruction& w) {
    IntegerEchelon omega(static_cast<std::size_t>(w.d));
    omega.add(RationalRow(w.d, Rational(1)));
    std::set<IntegerRow> seen;
    for (const auto& theta : w.theta)
        for (const auto& row : rows_over_u0(theta, w.u0, w.d))
            if (seen.insert(primitive_row(row)).second) omega.add(row);

    // Proof-guided candidate: S at zero, T_i[i] = 1 and every other component 0.
    Realization candidate;
    for (const auto& x : w.modified.g_prime.observed()) {
        if (w.s.count(x)) {
            candidate[x] = 0;
            continue;
        }
        std::vector<int> bits;
        for (auto i : w.membership.at(x)) bits.push_back(w.t[i] == x ? 1 : 0);
        candidate[x] = w.coding.at(x).encode(bits);
    }
    std::optional<std::pair<Realization, RationalRow>> chosen;
    if (RationalRow eta = vector_at(w, w.eta, candidate); !omega.in_span(eta)) chosen.emplace(candidate, eta);
    if (!chosen) {
        std::vector<Realization> where;
        const auto rows = rows_over_u0(w.eta, w.u0, w.d, &where);
        for (std::size_t r = 0; r < rows.size() && !chosen; ++r) {
            if (omega.in_span(rows[r])) continue;
            Realization v;
            for (const auto& x : w.modified.g_prime.observed()) v[x] = where[r].count(x) ? where[r].at(x) : 0;
            chosen.emplace(v, rows[r]);
        }
    }
    if (!chosen) return false;

    const auto& [v0, eta] = *chosen;
    std::vector<RationalRow> basis;
    for (const auto& r : omega.rows()) basis.emplace_back(r.begin(), r.end());
    for (const auto& n : null_space(basis, static_cast<std::size_t>(w.d))) {
        const Rational c = dot(n, eta);
        if (c == 0) continue;
        w.beta.clear();
        for (const auto& x : n) w.beta.push_back(x / c);
        break;
    }
    if (w.beta.empty()) throw Error(ErrorKind::InternalContradiction, "eta outside the span but orthogonal to its complement");

    Rational h = 0;
    for (const auto& b : w.beta) h = std::max(h, Rational(abs(b)));
    w.p.clear();
    for (const auto& b : w.beta) w.p.push_back(Rational(1, w.d) + b / (2 * h * w.d));
    w.v0 = v0;
    return true;
}

DiscreteSEM construct_m2(const WitnessConstruction& w, const DiscreteSEM& m1) {
    auto priors = m1.priors();
    priors[w.u0] = w.p;
    return DiscreteSEM(m1.graph(), m1.domains(), priors, m1.cpts());
}

WitnessPair special_case_witness(const CausalGraph& g_prime, const VarSet& s, const std::vector<VarSet>& a_prime,
                                 const Rational& epsilon) {
    if (g_prime.observed() != s || !g_prime.directed().empty() || g_prime.bidirected().size() + 1 != s.size() ||
        !is_single_c_component(g_prime, s))
        throw Error(ErrorKind::InvalidArgument, "graph must be a bidirected spanning tree over S");
    for (const auto& a : a_prime)
        if (!is_subset(a, s) || a.size() == s.size())
            throw Error(ErrorKind::InvalidArgument, "given set " + to_string(a) + " is not strictly inside S");
    if (epsilon <= 0 || epsilon >= 1) throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");

    std::map<VarId, int> domains;
    std::map<VarId, std::vector<Rational>> priors;
    for (const auto& x : s) domains[x] = 2;
    for (const auto& u : g_prime.latent_labels()) {
        domains[u] = 2;
        priors[u] = uniform(2);
    }
    const VarId flipped = *s.begin();
    auto model = [&](bool flip) {
        std::map<VarId, DistTable> cpts;
        for (const auto& x : s) {
            const bool negate = flip && x == flipped;
            cpts[x] = make_cpt(x, sem_parents(g_prime, x), domains, [&](int value, const Realization& pa) -> Rational {
                int parity = negate ? 1 : 0;
                for (const auto& [u, bit] : pa) parity ^= bit;
                return (value == parity ? Rational(1) - epsilon : Rational(0)) + epsilon / 2;
            });
        }
        return DiscreteSEM(g_prime, domains, priors, cpts);
    };
    std::vector<VarSet> unique;
    for (const auto& a : a_prime)
        if (std::find(unique.begin(), unique.end(), a) == unique.end()) unique.push_back(a);
    Realization zero;
    for (const auto& x : s) zero[x] = 0;
    return WitnessPair{model(false), model(true), s, GivenCollection(unique), zero, std::nullopt};
}

DiscreteSEM lift_model(const DiscreteSEM& m, const CausalGraph& g) {
    const CausalGraph& sub = m.graph();
    std::map<VarId, int> domains;
    std::map<VarId, std::vector<Rational>> priors;
    for (const auto& x : g.observed()) domains[x] = sub.contains(x) ? m.card(x) : 1;
    const auto sub_latents = sub.latent_labels();
    for (const auto& u : g.latent_labels()) {
        const bool kept = std::binary_search(sub_latents.begin(), sub_latents.end(), u);
        domains[u] = kept ? m.card(u) : 1;
        priors[u] = kept ? m.priors().at(u) : std::vector<Rational>{Rational(1)};
    }
    std::map<VarId, DistTable> cpts;
    for (const auto& x : g.observed()) {
        const auto parents = sem_parents(g, x);
        if (!sub.contains(x)) {
            cpts[x] = make_function_cpt(x, parents, domains, [](const Realization&) { return 0; });
            continue;
        }
        const DistTable& inner = m.cpt(x);
        cpts[x] = make_cpt(x, parents, domains, [&](int value, const Realization& pa) -> Rational {
            Realization r = pa;
            r[x] = value;
            return inner.at(r);
        });
    }
    return DiscreteSEM(g, domains, priors, cpts);
}

WitnessPair build_witness(const VarSet& s, const GivenCollection& a, const CausalGraph& g) {
    require_vertices(g, s);
    a.require_within(g);
    if (!is_single_c_component(g, s)) throw Error(ErrorKind::InvalidArgument, to_string(s) + " is not a single c-component");
    if (gid_single(s, a, g))
        throw Error(ErrorKind::Refused, "Q" + to_string(s) + " is g-identifiable; no witness exists");

    const bool main_case = std::any_of(a.sets().begin(), a.sets().end(),
                                       [&](const VarSet& x) { return is_subset(s, x) && x.size() > s.size(); });
    WitnessPair pair;
    if (main_case) {
        const ModifiedGraph modified = modify_graph(g, s, a);
        const int kappa = 5;
        Rational epsilon(1, 2 * kappa);
        std::optional<WitnessConstruction> solved;
        std::optional<DiscreteSEM> m1;
        for (int step = 0; step < 20 && !solved; ++step, epsilon /= 2) {
            WitnessConstruction w = prepare_construction(modified, s, kappa, epsilon);
            DiscreteSEM candidate = construct_m1(w);
            build_linear_system(w, candidate);
            if (solve_witness_distribution(w)) {
                solved = std::move(w);
                m1 = std::move(candidate);
            }
        }
        if (!solved) throw Error(ErrorKind::ConstructionFailed, "no separating realization over the epsilon schedule");
        const DiscreteSEM m2 = construct_m2(*solved, *m1);
        pair = WitnessPair{lift_model(*m1, g), lift_model(m2, g), s, a, pad_realization(solved->v0, g), solved};
    } else {
        std::vector<VarSet> a_prime;
        for (const auto& x : a.sets()) a_prime.push_back(set_intersection(x, s));
        const WitnessPair inner = special_case_witness(minimal_spanning_cforest(g, s), s, a_prime);
        pair = WitnessPair{lift_model(inner.m1, g), lift_model(inner.m2, g), s, a, pad_realization(inner.v0, g),
                           std::nullopt};
    }
    if (!verify_witness(pair))
        throw Error(ErrorKind::InternalContradiction, "constructed witness for " + to_string(s) + " failed verification");
    return pair;
}

VerificationReport verify_report(const WitnessPair& w) {
    VerificationReport r;
    if (!(w.m1.graph() == w.m2.graph()) || w.m1.domains() != w.m2.domains()) return r;
    r.positive_m1 = is_positive(w.m1);
    r.positive_m2 = is_positive(w.m2);
    bool all_equal = true;
    for (const auto& a : w.collection.sets()) {
        const bool same = q_eval(w.m1, a) == q_eval(w.m2, a);
        r.given_equal.push_back(same);
        all_equal = all_equal && same;
    }
    r.q_s_m1 = q_eval(w.m1, w.s).at(w.v0);
    r.q_s_m2 = q_eval(w.m2, w.s).at(w.v0);
    r.verified = r.positive_m1 && r.positive_m2 && all_equal && r.q_s_m1 != r.q_s_m2;
    return r;
}

bool verify_witness(const WitnessPair& w) { return verify_report(w).verified; }

}  // namespace gidkit
