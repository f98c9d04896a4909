#pragma once

#include <map>
#include <string>
#include <vector>

#include "pfdyn/lorenz.hpp"
#include "pfdyn/polymap.hpp"

namespace pfdyn {

/// A polynomial system plus its metadata as loaded from a definition file.
struct SystemDefinition {
    PolyMap map;
    std::vector<std::string> vars;
    std::map<std::string, double> params;
    std::string name;
};

/// Parse the JSON system format:
///   {"dim": d, "vars": [...], "components": [[{"coef": c, "powers": [...]}, ...], ...],
///    "params": {"name": value, ...}}
/// A coef may be a number or a parameter name (optionally prefixed "-");
/// substitution happens at load time.
SystemDefinition load_system_json(const std::string& text);
SystemDefinition load_system_file(const std::string& path);
std::string system_to_json(const SystemDefinition& sys);

PolyMap make_logistic(double alpha);
PolyMap make_harmonic();

/// The map x -> r x (1 - x) expressed as a unit-step iteration (delta = 1,
/// field r x (1-x) - x).
PolyMap make_logistic_map_field(double r);

/// Builtin lookup used by the CLI: "lorenz", "logistic", "harmonic", or a
/// path to a JSON definition.
SystemDefinition resolve_system(const std::string& name_or_path, const LorenzParams& lorenz,
                                double logistic_alpha);

}  // namespace pfdyn
