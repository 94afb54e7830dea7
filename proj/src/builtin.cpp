#include "gidkit/builtin.hpp"

#include "gidkit/error.hpp"

namespace gidkit {

const VectorCoding kThicketPair{{2, 2}};

CausalGraph builtin_graph(const std::string& name) {
    if (name == "fig1")
        return CausalGraph({"X1", "X2", "Y1", "Y2"}, {{"X1", "Y1"}, {"X2", "Y2"}}, {{"X1", "X2"}, {"Y1", "Y2"}});
    if (name == "thicket")
        return CausalGraph({"R", "T1", "T2", "T3"}, {{"T3", "T2"}, {"T2", "T1"}, {"T1", "R"}},
                           {{"R", "T2"}, {"T1", "T3"}, {"R", "T3"}});
    if (name == "bow") return CausalGraph({"X", "Y"}, {{"X", "Y"}}, {{"X", "Y"}});
    if (name == "frontdoor") return CausalGraph({"M", "X", "Y"}, {{"X", "M"}, {"M", "Y"}}, {{"X", "Y"}});
    throw Error(ErrorKind::InvalidArgument, "unknown builtin graph '" + name + "'");
}

std::vector<std::string> builtin_graph_names() { return {"bow", "fig1", "frontdoor", "thicket"}; }

namespace {

ModelPair example2() {
    const CausalGraph g = builtin_graph("fig1");
    const std::string u1 = latent_label("X1", "X2"), u2 = latent_label("Y1", "Y2");
    std::map<VarId, int> dom{{"X1", 2}, {"X2", 2}, {"Y1", 2}, {"Y2", 2}, {u1, 2}, {u2, 2}};
    std::map<VarId, std::vector<Rational>> priors{{u1, {Rational(1, 2), Rational(1, 2)}},
                                                  {u2, {Rational(1, 2), Rational(1, 2)}}};
    const Rational third(1, 3), two_thirds(2, 3);
    auto copy_u1 = [&](const Realization& pa) { return pa.at(u1); };

    std::map<VarId, DistTable> common{{"X1", make_function_cpt("X1", {u1}, dom, copy_u1)},
                                      {"X2", make_function_cpt("X2", {u1}, dom, copy_u1)}};
    auto m1 = common, m2 = common;
    m1["Y1"] = make_cpt("Y1", {"X1", u2}, dom, [&](int y, const Realization& pa) {
        return y == pa.at(u2) ? third : two_thirds;
    });
    m1["Y2"] = make_cpt("Y2", {"X2", u2}, dom, [&](int y, const Realization& pa) {
        return y == (pa.at(u2) ^ pa.at("X2")) ? third : two_thirds;
    });
    m2["Y1"] = make_cpt("Y1", {"X1", u2}, dom, [&](int y, const Realization& pa) {
        return y == (pa.at(u2) ^ pa.at("X1")) ? two_thirds : third;
    });
    m2["Y2"] = make_cpt("Y2", {"X2", u2}, dom, [&](int y, const Realization& pa) {
        return y == pa.at(u2) ? two_thirds : third;
    });
    return {DiscreteSEM(g, dom, priors, m1), DiscreteSEM(g, dom, priors, m2)};
}

ModelPair thicket() {
    const CausalGraph g = builtin_graph("thicket");
    const std::string u1 = latent_label("R", "T2"), u2 = latent_label("T1", "T3"), u3 = latent_label("R", "T3");
    const auto& pair = kThicketPair;
    std::map<VarId, int> dom{{"R", 2}, {"T1", pair.size()}, {"T2", pair.size()}, {"T3", 2}, {u1, 2}, {u2, 2}, {u3, 2}};
    const std::vector<Rational> uniform{Rational(1, 2), Rational(1, 2)};
    std::map<VarId, std::vector<Rational>> priors{{u1, uniform}, {u2, uniform}, {u3, uniform}};

    std::map<VarId, DistTable> common;
    common["T3"] = make_function_cpt("T3", {u2, u3}, dom, [&](const Realization& pa) { return pa.at(u2) ^ pa.at(u3); });
    common["T2"] = make_function_cpt("T2", {"T3", u1}, dom,
                                     [&](const Realization& pa) { return pair.encode({pa.at("T3"), pa.at(u1)}); });
    common["T1"] = make_function_cpt("T1", {"T2", u2}, dom, [&](const Realization& pa) {
        const int t2 = pa.at("T2");
        return pair.encode({pair.component(t2, 0) ^ pa.at(u2), pair.component(t2, 1)});
    });
    auto m1 = common, m2 = common;
    m1["R"] = make_function_cpt("R", {"T1", u1, u3}, dom, [&](const Realization& pa) {
        const int t1 = pa.at("T1");
        return pair.component(t1, 0) == 0 && pair.component(t1, 1) == 0 && pa.at(u3) == 1 && pa.at(u1) == 1 ? 1 : 0;
    });
    m2["R"] = make_function_cpt("R", {"T1", u1, u3}, dom, [](const Realization&) { return 0; });
    return {DiscreteSEM(g, dom, priors, m1), DiscreteSEM(g, dom, priors, m2)};
}

}  // namespace

std::map<std::string, ModelPair> builtin_models() {
    std::map<std::string, ModelPair> out;
    out.emplace("example2", example2());
    out.emplace("thicket", thicket());
    return out;
}

}  // namespace gidkit
