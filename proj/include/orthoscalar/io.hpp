#pragma once

#include <filesystem>

#include "json.hpp"

#include "orthoscalar/coxeter.hpp"
#include "orthoscalar/moduli.hpp"
#include "orthoscalar/representation.hpp"
#include "orthoscalar/roots.hpp"
#include "orthoscalar/solver.hpp"

namespace orthoscalar::io {

using nlohmann::json;

/// Reads and parses a JSON file. Throws Error("ParseError") / Error("FileError").
json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

Quiver quiver_from_json(const json& j);
json to_json(const Quiver& q);

/// Flat object keyed by vertex id; every vertex must be present.
Character character_from_json(const Quiver& q, const json& j);
DimVector dims_from_json(const Quiver& q, const json& j);
json character_to_json(const Quiver& q, const Eigen::VectorXd& values);
json dims_to_json(const Quiver& q, const DimVector& d);

/// {"quiver":..., "dims":..., "matrices":{"id": [[[re,im],...],...]}}, row-major.
Representation representation_from_json(const json& j);
json to_json(const Representation& rep);

json to_json(const GraphClass& c);
json to_json(const Quiver& q, const OrthoscalarReport& r);
json to_json(const Quiver& q, const CharacterEstimate& e);
json to_json(const Quiver& q, const TraceSystem& t);
json to_json(const ModuliReport& r);
json to_json(const SolveResult& r);

}  // namespace orthoscalar::io
