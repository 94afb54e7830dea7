#include "gidkit/sem.hpp"

#include "gidkit/error.hpp"

#include <algorithm>
#include <random>

namespace gidkit {

namespace {

std::vector<Variable> scope_for(const std::vector<VarId>& names, const std::map<VarId, int>& domains) {
    std::vector<Variable> scope;
    for (const auto& n : names) {
        auto it = domains.find(n);
        if (it == domains.end()) throw Error(ErrorKind::InvalidArgument, "no domain for " + n);
        scope.push_back({n, it->second});
    }
    std::sort(scope.begin(), scope.end(), [](const Variable& a, const Variable& b) { return a.name < b.name; });
    return scope;
}

std::vector<VarId> adjacent_latents(const CausalGraph& g, const VarSet& s) {
    std::set<VarId> out;
    for (const auto& v : s)
        for (const auto& u : g.latent_parents(v)) out.insert(u);
    return {out.begin(), out.end()};
}

// Sum over the latents adjacent to s of the product of the given factors and latent priors.
DistTable latent_sum(const DiscreteSEM& m, std::vector<DistTable> factors, const VarSet& s) {
    VarSet latents;
    for (const auto& u : adjacent_latents(m.graph(), s)) {
        factors.push_back(m.prior_table(u));
        latents.insert(u);
    }
    return eliminate(std::move(factors), latents);
}

}  // namespace

DiscreteSEM::DiscreteSEM(CausalGraph graph, std::map<VarId, int> domains,
                         std::map<VarId, std::vector<Rational>> priors, std::map<VarId, DistTable> cpts)
    : graph_(std::move(graph)), domains_(std::move(domains)), priors_(std::move(priors)), cpts_(std::move(cpts)) {
    for (auto& [u, p] : priors_)
        for (auto& x : p) x.canonicalize();
    const auto latents = graph_.latent_labels();
    VarSet known = graph_.observed();
    known.insert(latents.begin(), latents.end());
    for (const auto& v : known) {
        auto it = domains_.find(v);
        if (it == domains_.end()) throw Error(ErrorKind::InvalidArgument, "missing domain for " + v);
        if (it->second < 1) throw Error(ErrorKind::InvalidArgument, "domain of " + v + " is empty");
    }
    for (const auto& [v, card] : domains_)
        if (!known.count(v)) throw Error(ErrorKind::InvalidVertex, "domain given for unknown variable " + v);

    for (const auto& u : latents) {
        auto it = priors_.find(u);
        if (it == priors_.end()) throw Error(ErrorKind::InvalidArgument, "missing prior for " + u);
        if (static_cast<int>(it->second.size()) != domains_.at(u))
            throw Error(ErrorKind::InvalidArgument, "prior of " + u + " has wrong length");
        Rational sum = 0;
        for (const auto& p : it->second) {
            if (p < 0) throw Error(ErrorKind::InvalidArgument, "negative prior entry for " + u);
            sum += p;
        }
        if (sum != 1) throw Error(ErrorKind::InvalidArgument, "prior of " + u + " sums to " + to_string(sum));
    }
    if (priors_.size() != latents.size()) throw Error(ErrorKind::InvalidArgument, "prior given for unknown latent");

    for (const auto& x : graph_.observed()) {
        auto it = cpts_.find(x);
        if (it == cpts_.end()) throw Error(ErrorKind::InvalidArgument, "missing CPT for " + x);
        std::vector<VarId> names = parents_of(x);
        names.push_back(x);
        if (it->second.scope() != scope_for(names, domains_))
            throw Error(ErrorKind::InvalidArgument, "CPT of " + x + " does not match its parents and domains");
        for (const auto& p : it->second.values())
            if (p < 0) throw Error(ErrorKind::InvalidArgument, "negative CPT entry for " + x);
        const DistTable rows = it->second.sum_out({x});
        for (const auto& row : rows.values())
            if (row != 1) throw Error(ErrorKind::InvalidArgument, "CPT row of " + x + " sums to " + to_string(row));
    }
    if (cpts_.size() != graph_.observed().size()) throw Error(ErrorKind::InvalidArgument, "CPT given for unknown vertex");
}

int DiscreteSEM::card(const VarId& v) const {
    auto it = domains_.find(v);
    if (it == domains_.end()) throw Error(ErrorKind::InvalidVertex, "unknown variable " + v);
    return it->second;
}

std::vector<VarId> DiscreteSEM::parents_of(const VarId& x) const {
    std::vector<VarId> out(graph_.parents(x).begin(), graph_.parents(x).end());
    for (const auto& u : graph_.latent_parents(x)) out.push_back(u);
    std::sort(out.begin(), out.end());
    return out;
}

const DistTable& DiscreteSEM::cpt(const VarId& x) const {
    auto it = cpts_.find(x);
    if (it == cpts_.end()) throw Error(ErrorKind::InvalidVertex, "no CPT for " + x);
    return it->second;
}

DistTable DiscreteSEM::prior_table(const VarId& latent) const {
    auto it = priors_.find(latent);
    if (it == priors_.end()) throw Error(ErrorKind::InvalidVertex, "unknown latent " + latent);
    return DistTable({{latent, card(latent)}}, it->second);
}

std::vector<Variable> DiscreteSEM::observed_scope() const {
    std::vector<Variable> out;
    for (const auto& v : graph_.observed()) out.push_back({v, card(v)});
    return out;
}

bool DiscreteSEM::operator==(const DiscreteSEM& other) const {
    return graph_ == other.graph_ && domains_ == other.domains_ && priors_ == other.priors_ && cpts_ == other.cpts_;
}

DistTable make_cpt(const VarId& x, const std::vector<VarId>& parents, const std::map<VarId, int>& domains,
                   const std::function<Rational(int, const Realization&)>& f) {
    std::vector<VarId> names = parents;
    names.push_back(x);
    std::vector<Variable> scope = scope_for(names, domains);
    return DistTable::from_function(scope, [&](const std::vector<int>& digits) {
        Realization pa;
        int self = 0;
        for (std::size_t k = 0; k < scope.size(); ++k) {
            if (scope[k].name == x) self = digits[k];
            else pa[scope[k].name] = digits[k];
        }
        return f(self, pa);
    });
}

DistTable make_function_cpt(const VarId& x, const std::vector<VarId>& parents, const std::map<VarId, int>& domains,
                            const std::function<int(const Realization&)>& f) {
    return make_cpt(x, parents, domains, [&](int self, const Realization& pa) { return Rational(self == f(pa) ? 1 : 0); });
}

int VectorCoding::size() const {
    int n = 1;
    for (int r : radices) n *= r;
    return n;
}

int VectorCoding::component(int code, std::size_t pos) const {
    for (std::size_t k = radices.size(); k-- > pos + 1;) code /= radices[k];
    return code % radices[pos];
}

int VectorCoding::encode(const std::vector<int>& components) const {
    int code = 0;
    for (std::size_t k = 0; k < radices.size(); ++k) code = code * radices[k] + components[k];
    return code;
}

std::vector<int> VectorCoding::decode(int code) const {
    std::vector<int> out(radices.size());
    for (std::size_t k = radices.size(); k-- > 0;) {
        out[k] = code % radices[k];
        code /= radices[k];
    }
    return out;
}

DistTable q_eval(const DiscreteSEM& m, const VarSet& s) {
    require_vertices(m.graph(), s);
    const std::vector<Variable> full = m.observed_scope();
    std::size_t n = 1;
    for (const auto& v : full) {
        if (n > max_states() / static_cast<std::size_t>(v.card))
            throw Error(ErrorKind::TooLarge, "dom(V) exceeds the enumeration cap of " + std::to_string(max_states()));
        n *= static_cast<std::size_t>(v.card);
    }
    std::vector<DistTable> factors;
    for (const auto& x : s) factors.push_back(m.cpt(x));
    return latent_sum(m, std::move(factors), s).expand(full);
}

DistTable joint(const DiscreteSEM& m) { return q_eval(m, m.graph().observed()); }

DistTable intervene(const DiscreteSEM& m, const VarSet& x, const Realization& value) {
    require_vertices(m.graph(), x);
    for (const auto& v : x) {
        auto it = value.find(v);
        if (it == value.end()) throw Error(ErrorKind::InvalidRealization, "no value given for intervened " + v);
        if (it->second < 0 || it->second >= m.card(v))
            throw Error(ErrorKind::InvalidRealization, v + "=" + std::to_string(it->second) + " is outside its domain");
    }
    for (const auto& [k, v] : value)
        if (!x.count(k)) throw Error(ErrorKind::InvalidRealization, "value given for non-intervened " + k);
    const VarSet rest = set_difference(m.graph().observed(), x);
    std::vector<DistTable> factors;
    for (const auto& y : rest) factors.push_back(m.cpt(y).reduce(value));
    std::vector<Variable> scope;
    for (const auto& y : rest) scope.push_back({y, m.card(y)});
    return latent_sum(m, std::move(factors), rest).expand(scope);
}

bool is_positive(const DiscreteSEM& m) {
    const DistTable p = joint(m);
    return std::all_of(p.values().begin(), p.values().end(), [](const Rational& r) { return r > 0; });
}

DiscreteSEM random_positive_sem(const CausalGraph& g, std::uint64_t seed, int card) {
    std::mt19937_64 rng(seed);
    auto weight = [&]() { return Rational(static_cast<long>(rng() % 9) + 1); };
    std::map<VarId, int> domains;
    for (const auto& v : g.observed()) domains[v] = card;
    for (const auto& u : g.latent_labels()) domains[u] = card;

    std::map<VarId, std::vector<Rational>> priors;
    for (const auto& u : g.latent_labels()) {
        std::vector<Rational> w(card);
        Rational sum = 0;
        for (auto& x : w) sum += (x = weight());
        for (auto& x : w) x /= sum;
        priors[u] = std::move(w);
    }
    std::map<VarId, DistTable> cpts;
    for (const auto& x : g.observed()) {
        std::vector<VarId> parents(g.parents(x).begin(), g.parents(x).end());
        for (const auto& u : g.latent_parents(x)) parents.push_back(u);
        const DistTable w = make_cpt(x, parents, domains, [&](int, const Realization&) { return weight(); });
        cpts[x] = w.divide(w.sum_out({x}));
    }
    return DiscreteSEM(g, std::move(domains), std::move(priors), std::move(cpts));
}

}  // namespace gidkit
