#include "orthoscalar/io.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "orthoscalar/error.hpp"

namespace orthoscalar::io {

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw Error("ParseError", where + ": missing field '" + key + "'");
  return j.at(key);
}

template <typename Value, typename Check>
Eigen::Matrix<Value, Eigen::Dynamic, 1> per_vertex(const Quiver& q, const json& j, const std::string& what,
                                                    Check is_valid) {
  if (!j.is_object()) throw Error("ParseError", what + " must be a JSON object keyed by vertex id");
  Eigen::Matrix<Value, Eigen::Dynamic, 1> out(q.num_vertices());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!q.find_vertex(it.key())) throw Error("ParseError", what + " names unknown vertex '" + it.key() + "'");
  for (Index v = 0; v < q.num_vertices(); ++v) {
    const std::string& id = q.vertex(v);
    if (!j.contains(id)) throw Error("ParseError", what + " is missing vertex '" + id + "'");
    const json& x = j.at(id);
    if (!is_valid(x)) throw Error("ParseError", what + " has an invalid value at '" + id + "'");
    out(v) = x.get<Value>();
  }
  return out;
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("FileError", "cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("ParseError", path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("FileError", "cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

Quiver quiver_from_json(const json& j) {
  QuiverSpec spec;
  const json& vertices = require(j, "vertices", "quiver");
  const json& arrows = require(j, "arrows", "quiver");
  if (!vertices.is_array() || !arrows.is_array())
    throw Error("ParseError", "quiver: 'vertices' and 'arrows' must be arrays");
  for (const json& v : vertices) {
    if (!v.is_string()) throw Error("ParseError", "quiver: vertex ids must be strings");
    spec.vertices.push_back(v.get<std::string>());
  }
  for (const json& a : arrows) {
    const json& id = require(a, "id", "arrow");
    const json& tail = require(a, "tail", "arrow");
    const json& head = require(a, "head", "arrow");
    if (!id.is_string() || !tail.is_string() || !head.is_string())
      throw Error("ParseError", "arrow: id, tail and head must be strings");
    spec.arrows.push_back({id.get<std::string>(), tail.get<std::string>(), head.get<std::string>()});
  }
  return validate_quiver(spec);
}

json to_json(const Quiver& q) {
  json arrows = json::array();
  for (const Arrow& a : q.arrows()) arrows.push_back({{"id", a.id}, {"tail", q.vertex(a.tail)}, {"head", q.vertex(a.head)}});
  return {{"vertices", q.vertices()}, {"arrows", arrows}};
}

Character character_from_json(const Quiver& q, const json& j) {
  Character chi = per_vertex<double>(q, j, "character", [](const json& x) { return x.is_number(); });
  validate_character(q, chi);
  return chi;
}

DimVector dims_from_json(const Quiver& q, const json& j) {
  DimVector d = per_vertex<std::int64_t>(q, j, "dimension vector", [](const json& x) {
    return x.is_number_integer() || (x.is_number_float() && x.get<double>() == std::floor(x.get<double>()));
  });
  validate_dims(q, d);
  return d;
}

json character_to_json(const Quiver& q, const Eigen::VectorXd& values) {
  json j = json::object();
  for (Index v = 0; v < q.num_vertices(); ++v) j[q.vertex(v)] = values(v);
  return j;
}

json dims_to_json(const Quiver& q, const DimVector& d) {
  json j = json::object();
  for (Index v = 0; v < q.num_vertices(); ++v) j[q.vertex(v)] = d(v);
  return j;
}

Representation representation_from_json(const json& j) {
  Quiver q = quiver_from_json(require(j, "quiver", "representation"));
  DimVector d = dims_from_json(q, require(j, "dims", "representation"));
  const json& mats = require(j, "matrices", "representation");
  if (!mats.is_object()) throw Error("ParseError", "representation: 'matrices' must be an object");
  for (auto it = mats.begin(); it != mats.end(); ++it) q.arrow_index(it.key());
  std::vector<ComplexMatrix> maps;
  for (const Arrow& a : q.arrows()) {
    if (!mats.contains(a.id)) throw Error("ParseError", "representation: missing matrix for arrow '" + a.id + "'");
    const json& rows = mats.at(a.id);
    const Index r = d(a.head), c = d(a.tail);
    const std::string where = "matrix '" + a.id + "'";
    if (!rows.is_array() || (static_cast<Index>(rows.size()) != r && !(r == 0 && rows.empty())))
      throw Error("ShapeMismatch", where + " must have " + std::to_string(r) + " rows");
    ComplexMatrix m(r, c);
    for (Index i = 0; i < r; ++i) {
      const json& row = rows.at(static_cast<std::size_t>(i));
      if (!row.is_array() || static_cast<Index>(row.size()) != c)
        throw Error("ShapeMismatch", where + " row " + std::to_string(i) + " must have " + std::to_string(c) + " entries");
      for (Index k = 0; k < c; ++k) {
        const json& z = row.at(static_cast<std::size_t>(k));
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
          throw Error("ParseError", where + ": entries must be [re, im] pairs");
        m(i, k) = Complex(z[0].get<double>(), z[1].get<double>());
      }
    }
    maps.push_back(std::move(m));
  }
  return Representation(std::move(q), std::move(d), std::move(maps));
}

json to_json(const Representation& rep) {
  const Quiver& q = rep.quiver();
  json mats = json::object();
  for (Index e = 0; e < q.num_arrows(); ++e) {
    const ComplexMatrix& m = rep.map(e);
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
      rows.push_back(std::move(row));
    }
    mats[q.arrow(e).id] = std::move(rows);
  }
  return {{"quiver", to_json(q)}, {"dims", dims_to_json(q, rep.dims())}, {"matrices", std::move(mats)}};
}

json to_json(const GraphClass& c) {
  json j = {{"tag", std::string(to_string(c.tag))}, {"minors", c.minors}};
  j["name"] = c.name ? json(*c.name) : json(nullptr);
  return j;
}

json to_json(const Quiver& q, const CharacterEstimate& e) {
  json values = json::object();
  for (Index v = 0; v < q.num_vertices(); ++v) {
    const auto& x = e.values[static_cast<std::size_t>(v)];
    values[q.vertex(v)] = x ? json(*x) : json(nullptr);
  }
  return {{"inferred_chi", values}, {"residuals", character_to_json(q, e.residuals)}};
}

json to_json(const Quiver& q, const OrthoscalarReport& r) {
  json est = to_json(q, r.inferred);
  return {{"defects", character_to_json(q, r.defects)},
          {"max_defect", r.max_defect},
          {"inferred_chi", est["inferred_chi"]},
          {"scalarity_residuals", est["residuals"]},
          {"tolerance", r.tolerance},
          {"verdict", r.pass ? "pass" : "fail"}};
}

json to_json(const Quiver& q, const TraceSystem& t) {
  json j = {{"feasible", t.feasible}, {"even_total", t.even_total}, {"odd_total", t.odd_total}};
  if (t.feasible) {
    json traces = json::object();
    for (Index e = 0; e < q.num_arrows(); ++e) traces[q.arrow(e).id] = t.traces(e);
    j["traces"] = traces;
  } else {
    j["obstruction"] = t.obstruction == TraceObstruction::Balance ? "balance" : "negative_trace";
    j["detail"] = t.detail;
    if (t.arrow) j["arrow"] = q.arrow(*t.arrow).id;
  }
  return j;
}

json to_json(const ModuliReport& r) {
  return {{"ambient_dimension", r.ambient_dimension},
          {"constraint_rank", r.constraint_rank},
          {"kernel_dimension", r.kernel_dimension},
          {"orbit_dimension", r.orbit_dimension},
          {"stabilizer_dimension", r.stabilizer_dimension},
          {"moduli_fixed_chi", r.moduli_fixed_chi},
          {"character_dim", r.character_dimension},
          {"total_parameters", r.total_parameters},
          {"constraint_gap", r.constraint_gap},
          {"orbit_gap", r.orbit_gap},
          {"reliable", r.reliable}};
}

json to_json(const SolveResult& r) {
  json j = {{"status", std::string(to_string(r.status))}};
  if (r.status == SolveStatus::Infeasible) {
    j["diagnosis"] = r.traces.detail;
    return j;
  }
  const Quiver& q = r.representation->quiver();
  j["objective"] = r.objective;
  j["max_defect"] = r.max_defect;
  j["iterations"] = r.iterations;
  j["restart"] = r.restart;
  j["traces"] = to_json(q, r.traces)["traces"];
  return j;
}

}  // namespace orthoscalar::io
