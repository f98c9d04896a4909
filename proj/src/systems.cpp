#include "pfdyn/systems.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace pfdyn {

namespace {

using nlohmann::json;

double resolve_coef(const json& c, const std::map<std::string, double>& params) {
    if (c.is_number()) return c.get<double>();
    if (c.is_string()) {
        std::string name = c.get<std::string>();
        double sign = 1.0;
        if (!name.empty() && name[0] == '-') {
            sign = -1.0;
            name = name.substr(1);
        }
        auto it = params.find(name);
        if (it == params.end()) throw InputError("unknown parameter '" + name + "' in coef");
        return sign * it->second;
    }
    throw InputError("coef must be a number or a parameter name");
}

}  // namespace

SystemDefinition load_system_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("system JSON parse error: ") + e.what());
    }
    if (!doc.contains("dim") || !doc.contains("components"))
        throw InputError("system JSON needs 'dim' and 'components'");

    SystemDefinition sys;
    const int dim = doc["dim"].get<int>();
    if (dim < 1) throw InputError("dim must be >= 1");

    if (doc.contains("params"))
        for (auto& [key, value] : doc["params"].items()) sys.params[key] = value.get<double>();
    if (doc.contains("name")) sys.name = doc["name"].get<std::string>();

    if (doc.contains("vars")) {
        for (const auto& v : doc["vars"]) sys.vars.push_back(v.get<std::string>());
        if (static_cast<int>(sys.vars.size()) != dim)
            throw InputError("vars length must equal dim");
    } else {
        for (int i = 0; i < dim; ++i) sys.vars.push_back("a_" + std::to_string(i + 1));
    }

    std::vector<Polynomial> comps;
    for (const auto& comp : doc["components"]) {
        std::vector<Monomial> terms;
        for (const auto& term : comp) {
            Monomial m;
            m.coef = resolve_coef(term.at("coef"), sys.params);
            for (const auto& e : term.at("powers")) m.powers.push_back(e.get<int>());
            if (static_cast<int>(m.powers.size()) != dim)
                throw InputError("powers length must equal dim");
            terms.push_back(std::move(m));
        }
        comps.push_back(Polynomial::from_terms(dim, std::move(terms)));
    }
    sys.map = PolyMap(dim, std::move(comps));
    return sys;
}

SystemDefinition load_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open system file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return load_system_json(buf.str());
}

std::string system_to_json(const SystemDefinition& sys) {
    json doc;
    doc["dim"] = sys.map.dim_in();
    doc["vars"] = sys.vars;
    if (!sys.name.empty()) doc["name"] = sys.name;
    if (!sys.params.empty()) doc["params"] = sys.params;
    json comps = json::array();
    for (const auto& comp : sys.map.components()) {
        json terms = json::array();
        for (const auto& t : comp.terms()) terms.push_back({{"coef", t.coef}, {"powers", t.powers}});
        comps.push_back(std::move(terms));
    }
    doc["components"] = std::move(comps);
    return doc.dump(2);
}

PolyMap make_logistic(double alpha) {
    std::vector<Monomial> terms{{alpha, {1}}, {-alpha, {2}}};
    return PolyMap(1, {Polynomial::from_terms(1, std::move(terms))});
}

PolyMap make_harmonic() {
    // dp/dt = -q, dq/dt = p
    std::vector<Polynomial> comps;
    comps.push_back(Polynomial::variable(2, 1).scaled(-1.0));
    comps.push_back(Polynomial::variable(2, 0));
    return PolyMap(2, std::move(comps));
}

PolyMap make_logistic_map_field(double r) {
    std::vector<Monomial> terms{{r - 1.0, {1}}, {-r, {2}}};
    return PolyMap(1, {Polynomial::from_terms(1, std::move(terms))});
}

SystemDefinition resolve_system(const std::string& name_or_path, const LorenzParams& lorenz,
                                double logistic_alpha) {
    SystemDefinition sys;
    if (name_or_path == "lorenz") {
        sys.map = lorenz_field(lorenz);
        sys.vars = {"a", "b", "c"};
        sys.name = "lorenz";
        sys.params = {{"sigma", lorenz.sigma}, {"rho", lorenz.rho}, {"beta", lorenz.beta}};
    } else if (name_or_path == "logistic") {
        sys.map = make_logistic(logistic_alpha);
        sys.vars = {"a"};
        sys.name = "logistic";
        sys.params = {{"alpha", logistic_alpha}};
    } else if (name_or_path == "harmonic") {
        sys.map = make_harmonic();
        sys.vars = {"p", "q"};
        sys.name = "harmonic";
    } else {
        sys = load_system_file(name_or_path);
        if (sys.name.empty()) sys.name = "custom";
    }
    return sys;
}

}  // namespace pfdyn
