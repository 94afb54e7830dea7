#include "gidkit/json_io.hpp"

#include "gidkit/error.hpp"

#include <fstream>
#include <sstream>

namespace gidkit {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("malformed ") + what + ": " + e.what());
    }
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

VarSet names_from_json(const Json& j) {
    VarSet out;
    for (const auto& x : j) out.insert(x.get<std::string>());
    return out;
}

Json names_to_json(const VarSet& s) { return Json(std::vector<std::string>(s.begin(), s.end())); }

std::string digits_key(const std::vector<int>& digits) {
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) out += (i ? "," : "") + std::to_string(digits[i]);
    return out;
}

std::vector<Rational> rationals_from_json(const Json& j) {
    std::vector<Rational> out;
    for (const auto& x : j) out.push_back(parse_rational(x.get<std::string>()));
    return out;
}

Json rationals_to_json(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

const char* kind_name(Estimand::Kind k) {
    switch (k) {
    case Estimand::Kind::Given: return "given";
    case Estimand::Kind::Marginal: return "marginal";
    case Estimand::Kind::Product: return "product";
    case Estimand::Kind::Quotient: return "quotient";
    }
    return "";
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, column = 1;
        const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < limit; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw Error(ErrorKind::ParseError,
                    source + ": invalid JSON at line " + std::to_string(line) + ", column " + std::to_string(column));
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str(), path);
}

Json graph_to_json(const CausalGraph& g) {
    Json j;
    j["observed"] = names_to_json(g.observed());
    j["directed"] = Json::array();
    for (const auto& [a, b] : g.directed()) j["directed"].push_back({a, b});
    j["bidirected"] = Json::array();
    for (const auto& [a, b] : g.bidirected()) j["bidirected"].push_back({a, b});
    return j;
}

CausalGraph graph_from_json(const Json& j) {
    return guarded("graph", [&] {
        auto edges = [&](const char* key) {
            std::set<Edge> out;
            if (!j.contains(key)) return out;
            for (const auto& e : j.at(key)) {
                if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::ParseError, std::string(key) + " edge must be a pair");
                out.emplace(e[0].get<std::string>(), e[1].get<std::string>());
            }
            return out;
        };
        return CausalGraph(names_from_json(field(j, "observed")), edges("directed"), edges("bidirected"));
    });
}

Json table_to_json(const DistTable& t) {
    Json j;
    j["scope"] = Json::array();
    for (const auto& v : t.scope()) j["scope"].push_back({{"name", v.name}, {"card", v.card}});
    j["entries"] = Json::object();
    for (std::size_t i = 0; i < t.size(); ++i) j["entries"][digits_key(t.decode(i))] = to_string(t.value(i));
    return j;
}

DistTable table_from_json(const Json& j) {
    return guarded("table", [&] {
        std::vector<Variable> scope;
        for (const auto& v : field(j, "scope")) scope.push_back({field(v, "name").get<std::string>(), field(v, "card").get<int>()});
        DistTable shape = DistTable::filled(scope, Rational(0));
        if (shape.scope() != scope) throw Error(ErrorKind::ParseError, "table scope must be sorted by name");
        const Json& entries = field(j, "entries");
        if (entries.size() != shape.size())
            throw Error(ErrorKind::ParseError, "table has " + std::to_string(entries.size()) + " entries, expected " +
                                                   std::to_string(shape.size()));
        std::vector<Rational> values(shape.size());
        std::vector<bool> seen(shape.size(), false);
        for (const auto& [key, value] : entries.items()) {
            std::vector<int> digits;
            std::stringstream in(key);
            for (std::string part; std::getline(in, part, ',');) {
                try {
                    digits.push_back(std::stoi(part));
                } catch (const std::exception&) {
                    throw Error(ErrorKind::ParseError, "bad entry key \"" + key + "\"");
                }
            }
            std::size_t idx;
            try {
                idx = shape.encode(digits);
            } catch (const Error&) {
                throw Error(ErrorKind::ParseError, "bad entry key \"" + key + "\"");
            }
            if (seen[idx]) throw Error(ErrorKind::ParseError, "duplicate entry key \"" + key + "\"");
            seen[idx] = true;
            values[idx] = parse_rational(value.template get<std::string>());
        }
        return DistTable(scope, values);
    });
}

Json sem_to_json(const DiscreteSEM& m) {
    Json j;
    j["graph"] = graph_to_json(m.graph());
    j["domains"] = Json::object();
    for (const auto& [x, n] : m.domains()) j["domains"][x] = n;
    j["priors"] = Json::object();
    for (const auto& [u, p] : m.priors()) j["priors"][u] = rationals_to_json(p);
    j["cpts"] = Json::object();
    for (const auto& [x, t] : m.cpts()) j["cpts"][x] = table_to_json(t);
    return j;
}

DiscreteSEM sem_from_json(const Json& j) {
    return guarded("model", [&] {
        CausalGraph g = graph_from_json(field(j, "graph"));
        std::map<VarId, int> domains;
        for (const auto& [x, n] : field(j, "domains").items()) domains[x] = n.template get<int>();
        std::map<VarId, std::vector<Rational>> priors;
        for (const auto& [u, p] : field(j, "priors").items()) priors[u] = rationals_from_json(p);
        std::map<VarId, DistTable> cpts;
        for (const auto& [x, t] : field(j, "cpts").items()) cpts[x] = table_from_json(t);
        return DiscreteSEM(std::move(g), domains, priors, cpts);
    });
}

Json estimand_to_json(const Estimand& e) {
    Json j;
    j["kind"] = kind_name(e.kind());
    switch (e.kind()) {
    case Estimand::Kind::Given:
        j["index"] = e.index();
        j["denotes"] = names_to_json(e.denotes());
        j["scope"] = names_to_json(e.scope());
        break;
    case Estimand::Kind::Marginal:
        j["over"] = names_to_json(e.over());
        j["child"] = estimand_to_json(e.child());
        break;
    case Estimand::Kind::Product:
        j["children"] = Json::array();
        for (const auto& c : e.children()) j["children"].push_back(estimand_to_json(c));
        break;
    case Estimand::Kind::Quotient:
        j["numerator"] = estimand_to_json(e.numerator());
        j["denominator"] = estimand_to_json(e.denominator());
        if (e.conditional())
            j["conditional"] = {{"target", e.conditional()->target}, {"given", e.conditional()->given}};
        break;
    }
    return j;
}

Estimand estimand_from_json(const Json& j) {
    return guarded("estimand", [&]() -> Estimand {
        const std::string kind = field(j, "kind").get<std::string>();
        if (kind == "given")
            return Estimand::given(field(j, "index").get<std::size_t>(), names_from_json(field(j, "denotes")),
                                   names_from_json(field(j, "scope")));
        if (kind == "marginal")
            return Estimand::marginal(estimand_from_json(field(j, "child")), names_from_json(field(j, "over")));
        if (kind == "product") {
            std::vector<Estimand> children;
            for (const auto& c : field(j, "children")) children.push_back(estimand_from_json(c));
            if (children.empty()) throw Error(ErrorKind::ParseError, "product needs at least one child");
            return Estimand::product(std::move(children));
        }
        if (kind == "quotient") {
            std::optional<Estimand::Conditional> cond;
            if (j.contains("conditional")) {
                const Json& c = j.at("conditional");
                cond = Estimand::Conditional{field(c, "target").get<std::string>(),
                                             field(c, "given").get<std::vector<std::string>>()};
            }
            return Estimand::quotient(estimand_from_json(field(j, "numerator")),
                                      estimand_from_json(field(j, "denominator")), cond);
        }
        throw Error(ErrorKind::ParseError, "unknown estimand kind \"" + kind + "\"");
    });
}

GivenCollection collection_from_json(const Json& j, const CausalGraph& g) {
    return guarded("given collection", [&] {
        if (j.is_string() && j.get<std::string>() == "*") return GivenCollection({g.observed()});
        if (!j.is_array()) throw Error(ErrorKind::ParseError, "given collection must be a list of name-lists or \"*\"");
        std::vector<VarSet> sets;
        for (const auto& s : j) {
            if (s.is_string() && s.get<std::string>() == "*") sets.push_back(g.observed());
            else sets.push_back(names_from_json(s));
        }
        GivenCollection out(std::move(sets));
        out.require_within(g);
        return out;
    });
}

Json collection_to_json(const GivenCollection& a) {
    Json out = Json::array();
    for (const auto& s : a.sets()) out.push_back(names_to_json(s));
    return out;
}

Json realization_to_json(const Realization& r) {
    Json out = Json::object();
    for (const auto& [x, v] : r) out[x] = v;
    return out;
}

Realization realization_from_json(const Json& j) {
    return guarded("realization", [&] {
        Realization out;
        for (const auto& [x, v] : j.items()) out[x] = v.template get<int>();
        return out;
    });
}

Json report_to_json(const VerificationReport& r) {
    Json j;
    j["positive_m1"] = r.positive_m1;
    j["positive_m2"] = r.positive_m2;
    j["given_equal"] = r.given_equal;
    j["q_s_m1"] = to_string(r.q_s_m1);
    j["q_s_m2"] = to_string(r.q_s_m2);
    j["verified"] = r.verified;
    return j;
}

Json witness_to_json(const WitnessPair& w) {
    Json j;
    j["target"] = names_to_json(w.s);
    j["given"] = collection_to_json(w.collection);
    j["v0"] = realization_to_json(w.v0);
    j["m1"] = sem_to_json(w.m1);
    j["m2"] = sem_to_json(w.m2);
    if (w.construction) {
        const WitnessConstruction& c = *w.construction;
        Json meta;
        meta["kind"] = "main";
        meta["kappa"] = c.kappa;
        meta["epsilon"] = to_string(c.epsilon);
        meta["u0"] = c.u0;
        meta["s0"] = c.s0;
        meta["t"] = c.t;
        meta["d"] = c.d;
        meta["beta"] = rationals_to_json(c.beta);
        meta["p"] = rationals_to_json(c.p);
        meta["reduced_graph"] = graph_to_json(c.modified.g_prime);
        j["construction"] = meta;
    } else {
        j["construction"] = {{"kind", "special"}};
    }
    j["verification"] = report_to_json(verify_report(w));
    return j;
}

WitnessPair witness_from_json(const Json& j) {
    return guarded("witness bundle", [&] {
        DiscreteSEM m1 = sem_from_json(field(j, "m1"));
        DiscreteSEM m2 = sem_from_json(field(j, "m2"));
        GivenCollection a = collection_from_json(field(j, "given"), m1.graph());
        return WitnessPair{std::move(m1), std::move(m2), names_from_json(field(j, "target")), std::move(a),
                           realization_from_json(field(j, "v0")), std::nullopt};
    });
}

}  // namespace gidkit
