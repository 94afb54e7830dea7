#include "gidkit/cli.hpp"

#include "gidkit/builtin.hpp"
#include "gidkit/error.hpp"
#include "gidkit/gid.hpp"
#include "gidkit/id.hpp"
#include "gidkit/json_io.hpp"
#include "gidkit/sem.hpp"
#include "gidkit/witness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace gidkit {

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInternal = 2;
constexpr int kNotIdentifiable = 3;

const std::string kBuiltinPrefix = "builtin:";

bool is_builtin(const std::string& ref) { return ref.rfind(kBuiltinPrefix, 0) == 0; }

CausalGraph load_graph(const std::string& ref) {
    if (is_builtin(ref)) return builtin_graph(ref.substr(kBuiltinPrefix.size()));
    return graph_from_json(read_json_file(ref));
}

// builtin:example2:m1 or a model JSON file.
DiscreteSEM load_model(const std::string& ref) {
    if (!is_builtin(ref)) return sem_from_json(read_json_file(ref));
    const std::string rest = ref.substr(kBuiltinPrefix.size());
    const auto colon = rest.find(':');
    const auto models = builtin_models();
    const auto it = models.find(rest.substr(0, colon));
    if (it == models.end() || colon == std::string::npos || (rest.substr(colon + 1) != "m1" && rest.substr(colon + 1) != "m2"))
        throw Error(ErrorKind::InvalidArgument, "unknown builtin model '" + rest + "' (use example2:m1, thicket:m2, ...)");
    return rest.substr(colon + 1) == "m1" ? it->second.m1 : it->second.m2;
}

VarSet parse_csv(const std::string& text) {
    VarSet out;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ',');) {
        const auto b = part.find_first_not_of(" \t"), e = part.find_last_not_of(" \t");
        if (b != std::string::npos) out.insert(part.substr(b, e - b + 1));
    }
    return out;
}

Realization parse_assignment(const std::string& text) {
    Realization out;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ',');) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "expected NAME=VALUE, got '" + part + "'");
        try {
            out[part.substr(0, eq)] = std::stoi(part.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "expected an integer value in '" + part + "'");
        }
    }
    return out;
}

GivenCollection load_collection(const std::string& ref, const CausalGraph& g) {
    if (ref == "*") return GivenCollection({g.observed()});
    return collection_from_json(read_json_file(ref), g);
}

Json names_json(const VarSet& s) { return Json(std::vector<std::string>(s.begin(), s.end())); }

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text << "\n";
        return;
    }
    std::ofstream file(path);
    if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    file << text << "\n";
}

int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::InternalContradiction:
    case ErrorKind::ConstructionFailed: return kInternal;
    default: return kInputError;
    }
}

struct QueryArgs {
    std::string graph, treatment, outcome, given = "*", out;
};

int cmd_check(const QueryArgs& q, std::ostream& out) {
    const CausalGraph g = load_graph(q.graph);
    const VarSet x = parse_csv(q.treatment), y = parse_csv(q.outcome);
    const GivenCollection a = load_collection(q.given, g);
    const GidResult r = gid(x, y, a, g);

    Json report;
    report["treatment"] = names_json(x);
    report["outcome"] = names_json(y);
    report["given"] = collection_to_json(a);
    report["decision"] = r.decision;
    report["components"] = Json::array();
    for (const auto& c : r.per_component) {
        Json entry;
        entry["set"] = names_json(c.set);
        entry["source"] = c.source ? Json(*c.source) : Json(nullptr);
        entry["estimand"] = c.estimand ? Json(render(*c.estimand)) : Json(nullptr);
        report["components"].push_back(entry);
    }
    if (r.final) {
        report["rendered"] = render(*r.final);
        report["estimand"] = estimand_to_json(*r.final);
    } else {
        Json blocked = Json::array();
        for (const auto& c : r.per_component)
            if (!c.source) blocked.push_back(names_json(c.set));
        report["witness_summary"] = {{"not_identifiable", blocked},
                                     {"hint", "run the witness subcommand for a verified counterexample pair"}};
    }
    emit(report.dump(2), q.out, out);
    return r.decision ? kOk : kNotIdentifiable;
}

int cmd_witness(const QueryArgs& q, std::ostream& out) {
    const CausalGraph g = load_graph(q.graph);
    const VarSet x = parse_csv(q.treatment), y = parse_csv(q.outcome);
    const GivenCollection a = load_collection(q.given, g);
    const GidResult r = gid(x, y, a, g);
    const auto blocked = std::find_if(r.per_component.begin(), r.per_component.end(),
                                      [](const ComponentResult& c) { return !c.source; });
    if (blocked == r.per_component.end())
        throw Error(ErrorKind::Refused, "the query is g-identifiable; no witness exists");
    const WitnessPair w = build_witness(blocked->set, a, g);
    emit(witness_to_json(w).dump(2), q.out, out);
    return kOk;
}

int cmd_reproduce(const std::string& name, std::ostream& out) {
    const auto facts = reproduce_facts(name);
    bool all = true;
    for (const auto& f : facts) {
        out << (f.pass ? "PASS " : "FAIL ") << f.name;
        if (!f.detail.empty()) out << " (" << f.detail << ")";
        out << "\n";
        all = all && f.pass;
    }
    return all ? kOk : kInternal;
}

struct EvalArgs {
    std::string estimand, tables, model, graph, at, out;
    std::optional<std::uint64_t> seed;
};

int cmd_eval(const EvalArgs& args, std::ostream& out) {
    Json ej = read_json_file(args.estimand);
    if (!ej.contains("kind") && ej.contains("estimand")) ej = ej.at("estimand");
    const Estimand e = estimand_from_json(ej);

    std::vector<DistTable> given;
    const int sources = !args.tables.empty() + !args.model.empty() + args.seed.has_value();
    if (sources != 1) throw Error(ErrorKind::InvalidArgument, "give exactly one of --tables, --model, --seed");
    if (!args.tables.empty()) {
        const Json tj = read_json_file(args.tables);
        if (tj.is_array())
            for (const auto& t : tj) given.push_back(table_from_json(t));
        else
            given.push_back(table_from_json(tj));
    } else if (!args.model.empty()) {
        given.push_back(joint(load_model(args.model)));
    } else {
        if (args.graph.empty()) throw Error(ErrorKind::InvalidArgument, "--seed needs --graph");
        given.push_back(joint(random_positive_sem(load_graph(args.graph), *args.seed)));
    }

    Json report;
    if (!args.at.empty()) {
        const Realization at = parse_assignment(args.at);
        report["at"] = realization_to_json(at);
        report["value"] = to_string(evaluate(e, given, at));
    } else {
        report["table"] = table_to_json(evaluate_table(e, given));
    }
    emit(report.dump(2), args.out, out);
    return kOk;
}

int cmd_verify(const std::string& bundle, std::ostream& out) {
    const WitnessPair w = witness_from_json(read_json_file(bundle));
    const VerificationReport r = verify_report(w);
    out << report_to_json(r).dump(2) << "\n";
    return r.verified ? kOk : kInternal;
}

Rational cell(const DistTable& t, const Realization& r) { return t.at(r); }

std::string show(const Rational& a, const Rational& b) { return to_string(a) + " vs " + to_string(b); }

std::vector<Fact> example2_facts() {
    const ModelPair pair = builtin_models().at("example2");
    std::vector<Fact> facts;
    const DistTable p1 = joint(pair.m1), p2 = joint(pair.m2);
    facts.push_back({"observational joints are equal", p1 == p2, ""});

    bool zero = true;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            zero = zero && cell(p1, {{"X1", 0}, {"X2", 1}, {"Y1", a}, {"Y2", b}}) == 0;
    facts.push_back({"P(x1=0,x2=1,y1,y2)=0", zero, ""});

    const Realization x{{"X1", 0}, {"X2", 1}};
    const Realization y{{"Y1", 0}, {"Y2", 0}};
    const Rational v1 = intervene(pair.m1, {"X1", "X2"}, x).at(y);
    const Rational v2 = intervene(pair.m2, {"X1", "X2"}, x).at(y);
    facts.push_back({"interventional values differ", v1 != v2, show(v1, v2)});
    facts.push_back({"interventional gap 4/9 != 5/9", v1 == Rational(4, 9) && v2 == Rational(5, 9),
                     "computed " + show(v1, v2)});
    facts.push_back({"models are not positive", !is_positive(pair.m1) && !is_positive(pair.m2), ""});
    return facts;
}

std::vector<Fact> thicket_facts() {
    const ModelPair pair = builtin_models().at("thicket");
    std::vector<Fact> facts;
    const DistTable p1 = joint(pair.m1), p2 = joint(pair.m2);
    facts.push_back({"observational joints are equal", p1 == p2, ""});

    const DistTable t = p1.sum_out({"R"});
    bool zero = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Realization r = t.realization(i);
        if (kThicketPair.component(r.at("T2"), 0) != r.at("T3")) zero = zero && t.value(i) == 0;
    }
    facts.push_back({"P(t1,t2,t3)=0 when t21!=t3", zero, ""});
    const bool has_zero = std::any_of(t.values().begin(), t.values().end(), [](const Rational& v) { return v == 0; });
    facts.push_back({"P(T1,T2,T3)>0 does not hold", has_zero, ""});

    const DistTable q1 = q_eval(pair.m1, {"R"}), q2 = q_eval(pair.m2, {"R"});
    std::string where;
    for (std::size_t i = 0; i < q1.size() && where.empty(); ++i)
        if (q1.value(i) != q2.value(i)) where = to_string(q1.realization(i)) + ": " + show(q1.value(i), q2.value(i));
    facts.push_back({"Q[R] differs between the models", !where.empty(), where});
    return facts;
}

}  // namespace

std::vector<Fact> reproduce_facts(const std::string& name) {
    if (name == "example2") return example2_facts();
    if (name == "thicket") return thicket_facts();
    throw Error(ErrorKind::InvalidArgument, "unknown reproduction '" + name + "' (use example2 or thicket)");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"gidkit: causal effect identification from a collection of interventional distributions"};
    app.require_subcommand(1);

    QueryArgs check_args, witness_args;
    auto add_query = [](CLI::App* sub, QueryArgs& q) {
        sub->add_option("--graph", q.graph, "graph JSON file or builtin:NAME")->required();
        sub->add_option("--treatment", q.treatment, "comma-separated treatment vertices");
        sub->add_option("--outcome", q.outcome, "comma-separated outcome vertices")->required();
        sub->add_option("--given", q.given, "JSON list of vertex lists, or * for the observational joint");
        sub->add_option("--out", q.out, "write the JSON report here instead of stdout");
    };
    CLI::App* check = app.add_subcommand("check", "decide identifiability and print the estimand");
    add_query(check, check_args);
    CLI::App* witness = app.add_subcommand("witness", "emit a verified counterexample pair");
    add_query(witness, witness_args);

    std::string reproduce_name;
    CLI::App* reproduce = app.add_subcommand("reproduce", "check the facts about a builtin model pair");
    reproduce->add_option("name", reproduce_name, "example2 or thicket")->required();

    EvalArgs eval_args;
    CLI::App* eval = app.add_subcommand("eval", "evaluate an estimand on given tables");
    eval->add_option("--estimand", eval_args.estimand, "estimand JSON, or a check report")->required();
    eval->add_option("--tables", eval_args.tables, "JSON table or list of tables, one per given set");
    eval->add_option("--model", eval_args.model, "model JSON or builtin:PAIR:m1|m2; its joint is the only table");
    eval->add_option("--graph", eval_args.graph, "graph for --seed");
    eval->add_option("--seed", eval_args.seed, "use the joint of a random positive model on --graph");
    eval->add_option("--at", eval_args.at, "evaluate at NAME=VALUE,... instead of printing the table");
    eval->add_option("--out", eval_args.out, "write the JSON result here instead of stdout");

    std::string bundle;
    CLI::App* verify = app.add_subcommand("verify", "re-check a witness bundle");
    verify->add_option("--bundle", bundle, "witness bundle JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kInputError;
    }

    try {
        if (*check) return cmd_check(check_args, out);
        if (*witness) return cmd_witness(witness_args, out);
        if (*reproduce) return cmd_reproduce(reproduce_name, out);
        if (*eval) return cmd_eval(eval_args, out);
        if (*verify) return cmd_verify(bundle, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kInputError;
}

}  // namespace gidkit
