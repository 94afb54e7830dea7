#include "gidkit/estimand.hpp"

#include "gidkit/error.hpp"

#include <algorithm>
#include <cctype>

namespace gidkit {

struct Estimand::Node {
    Kind kind = Kind::Given;
    VarSet scope;
    std::size_t index = 0;
    VarSet denotes;
    VarSet over;
    std::vector<Estimand> children;
    std::optional<Conditional> conditional;
};

namespace {

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string join(const VarSet& s) {
    std::string out;
    for (const auto& v : s) out += (out.empty() ? "" : ",") + v;
    return out;
}

using Domains = std::map<VarId, int>;

Domains collect_domains(const std::vector<DistTable>& given) {
    Domains d;
    for (const auto& t : given)
        for (const auto& v : t.scope()) {
            auto [it, fresh] = d.emplace(v.name, v.card);
            if (!fresh && it->second != v.card)
                throw Error(ErrorKind::ScopeMismatch, "variable " + v.name + " has inconsistent cardinality");
        }
    return d;
}

const DistTable& leaf_table(const Estimand& e, const std::vector<DistTable>& given) {
    if (e.index() >= given.size())
        throw Error(ErrorKind::InvalidArgument, "no table supplied for Q" + std::to_string(e.index()));
    const DistTable& t = given[e.index()];
    if (t.names() != e.scope())
        throw Error(ErrorKind::ScopeMismatch, "table " + std::to_string(e.index()) + " has scope " +
                                                  to_string(t.names()) + ", expected " + to_string(e.scope()));
    return t;
}

Rational eval_at(const Estimand& e, const std::vector<DistTable>& given, const Domains& domains,
                 Realization& at) {
    switch (e.kind()) {
        case Estimand::Kind::Given:
            return leaf_table(e, given).at(at);
        case Estimand::Kind::Marginal: {
            std::vector<VarId> vars(e.over().begin(), e.over().end());
            std::vector<int> cards;
            for (const auto& v : vars) {
                auto it = domains.find(v);
                if (it == domains.end()) throw Error(ErrorKind::ScopeMismatch, "no domain known for " + v);
                cards.push_back(it->second);
            }
            Realization inner = at;
            for (const auto& v : vars) inner[v] = 0;
            Rational sum = 0;
            for (bool carry = false; !carry;) {
                sum += eval_at(e.child(), given, domains, inner);
                carry = true;
                for (std::size_t k = vars.size(); k-- > 0 && carry;) {
                    if (++inner[vars[k]] < cards[k]) carry = false;
                    else inner[vars[k]] = 0;
                }
            }
            return sum;
        }
        case Estimand::Kind::Product: {
            Rational prod = 1;
            for (const auto& c : e.children()) {
                prod *= eval_at(c, given, domains, at);
                if (prod == 0) break;
            }
            return prod;
        }
        case Estimand::Kind::Quotient: {
            const Rational den = eval_at(e.denominator(), given, domains, at);
            if (den == 0) {
                Realization where;
                for (const auto& v : e.denominator().scope()) where[v] = at.at(v);
                throw Error(ErrorKind::NonPositiveInput, "zero denominator at " + to_string(where));
            }
            return eval_at(e.numerator(), given, domains, at) / den;
        }
    }
    return 0;
}

DistTable eval_table(const Estimand& e, const std::vector<DistTable>& given) {
    switch (e.kind()) {
        case Estimand::Kind::Given:
            return leaf_table(e, given);
        case Estimand::Kind::Marginal:
            return eval_table(e.child(), given).sum_out(e.over());
        case Estimand::Kind::Product: {
            DistTable acc;
            for (const auto& c : e.children()) acc = acc.multiply(eval_table(c, given));
            return acc;
        }
        case Estimand::Kind::Quotient:
            return eval_table(e.numerator(), given).divide(eval_table(e.denominator(), given));
    }
    return DistTable();
}

std::string render_node(const Estimand& e) {
    switch (e.kind()) {
        case Estimand::Kind::Given:
            return "Q" + std::to_string(e.index());
        case Estimand::Kind::Marginal: {
            const std::string inner = render_node(e.child());
            const bool wrap = e.child().kind() == Estimand::Kind::Product;
            return "sum_{" + join(e.over()) + "} " + (wrap ? "( " + inner + " )" : inner);
        }
        case Estimand::Kind::Product: {
            std::string out;
            for (const auto& c : e.children()) {
                std::string part = render_node(c);
                if (c.kind() == Estimand::Kind::Marginal) part = "( " + part + " )";
                out += (out.empty() ? "" : " * ") + part;
            }
            return out.empty() ? "1" : out;
        }
        case Estimand::Kind::Quotient: {
            if (const auto& cond = e.conditional()) {
                std::string out = "P(" + lower(cond->target);
                for (std::size_t i = 0; i < cond->given.size(); ++i)
                    out += (i == 0 ? "|" : ",") + lower(cond->given[i]);
                return out + ")";
            }
            return "( " + render_node(e.numerator()) + " / " + render_node(e.denominator()) + " )";
        }
    }
    return "";
}

}  // namespace

Estimand Estimand::given(std::size_t index, VarSet denotes, VarSet scope) {
    if (!is_subset(denotes, scope))
        throw Error(ErrorKind::InvalidArgument, "given set " + to_string(denotes) + " outside its scope");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Given;
    n->index = index;
    n->denotes = std::move(denotes);
    n->scope = std::move(scope);
    return Estimand(std::move(n));
}

Estimand Estimand::marginal(const Estimand& child, const VarSet& over) {
    if (over.empty()) return child;
    if (!is_subset(over, child.scope()))
        throw Error(ErrorKind::InvalidArgument, "marginal over " + to_string(over) + " outside child scope");
    if (child.kind() == Kind::Marginal) return marginal(child.child(), set_union(child.over(), over));
    auto n = std::make_shared<Node>();
    n->kind = Kind::Marginal;
    n->over = over;
    n->scope = set_difference(child.scope(), over);
    n->children = {child};
    return Estimand(std::move(n));
}

Estimand Estimand::product(std::vector<Estimand> children) {
    if (children.size() == 1) return children.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::Product;
    for (const auto& c : children) n->scope = set_union(n->scope, c.scope());
    n->children = std::move(children);
    return Estimand(std::move(n));
}

Estimand Estimand::quotient(const Estimand& numerator, const Estimand& denominator,
                            std::optional<Conditional> conditional) {
    if (!is_subset(denominator.scope(), numerator.scope()))
        throw Error(ErrorKind::InvalidArgument, "denominator scope exceeds numerator scope");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Quotient;
    n->scope = numerator.scope();
    n->children = {numerator, denominator};
    n->conditional = std::move(conditional);
    return Estimand(std::move(n));
}

Estimand::Kind Estimand::kind() const { return node_->kind; }
const VarSet& Estimand::scope() const { return node_->scope; }
std::size_t Estimand::index() const { return node_->index; }
const VarSet& Estimand::denotes() const { return node_->denotes; }
bool Estimand::is_observational() const { return node_->kind == Kind::Given && node_->denotes == node_->scope; }
const VarSet& Estimand::over() const { return node_->over; }
const Estimand& Estimand::child() const { return node_->children.at(0); }
const std::vector<Estimand>& Estimand::children() const { return node_->children; }
const Estimand& Estimand::numerator() const { return node_->children.at(0); }
const Estimand& Estimand::denominator() const { return node_->children.at(1); }
const std::optional<Estimand::Conditional>& Estimand::conditional() const { return node_->conditional; }

bool Estimand::operator==(const Estimand& other) const {
    if (node_ == other.node_) return true;
    const Node& a = *node_;
    const Node& b = *other.node_;
    return a.kind == b.kind && a.scope == b.scope && a.index == b.index && a.denotes == b.denotes &&
           a.over == b.over && a.conditional == b.conditional && a.children == b.children;
}

Rational evaluate(const Estimand& e, const std::vector<DistTable>& given, const Realization& at) {
    Realization local;
    for (const auto& v : e.scope()) {
        auto it = at.find(v);
        if (it == at.end()) throw Error(ErrorKind::ScopeMismatch, "realization lacks variable " + v);
        local[v] = it->second;
    }
    return eval_at(e, given, collect_domains(given), local);
}

DistTable evaluate_table(const Estimand& e, const std::vector<DistTable>& given) {
    collect_domains(given);
    return eval_table(e, given);
}

std::string render(const Estimand& e) { return render_node(e); }

}  // namespace gidkit
