#pragma once

// JSON adapters for the file formats shared with the command-line tool:
// quivers as {"vertices": [...], "arrows": [[name, src, tgt], ...]},
// dimension vectors as {"vertex": entry, ...}, plus serializers for the
// report types.  Parsing is strict: unknown vertices, malformed entries and
// shape mismatches raise input errors with the offending token.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "homext.hpp"
#include "kronecker.hpp"
#include "normalform.hpp"
#include "quiver.hpp"
#include "rep.hpp"

namespace quivermod {

using Json = nlohmann::ordered_json;

inline Json quiver_to_json(const Quiver& q) {
  Json j;
  j["vertices"] = q.vertex_names();
  Json arrows = Json::array();
  for (const Arrow& a : q.arrows())
    arrows.push_back({a.name, q.vertex_name(a.src), q.vertex_name(a.tgt)});
  j["arrows"] = std::move(arrows);
  return j;
}

inline Quiver quiver_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("arrows"))
    throw input_error("quiver JSON needs 'vertices' and 'arrows' fields");
  std::vector<std::string> vertices;
  for (const auto& v : j.at("vertices")) {
    if (!v.is_string()) throw input_error("vertex names must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<std::array<std::string, 3>> arrows;
  for (const auto& a : j.at("arrows")) {
    if (!a.is_array() || a.size() != 3)
      throw input_error("each arrow must be a [name, source, target] triple");
    arrows.push_back({a.at(0).get<std::string>(), a.at(1).get<std::string>(),
                      a.at(2).get<std::string>()});
  }
  return Quiver::make(std::move(vertices), arrows);
}

inline Json dimvec_to_json(const Quiver& q, const DimVec& d) {
  check_sized(q, d);
  Json j = Json::object();
  for (int v = 0; v < q.num_vertices(); ++v) j[q.vertex_name(v)] = d[v];
  return j;
}

inline DimVec dimvec_from_json(const Quiver& q, const Json& j) {
  if (!j.is_object()) throw input_error("dimension vector JSON must be an object");
  DimVec d(q.num_vertices());
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number_integer())
      throw input_error("dimension entry for '" + key + "' must be an integer");
    d[q.vertex_index(key)] = value.get<Int>();
  }
  return d;
}

// "v=2,w=1" — unmentioned vertices are zero.
inline DimVec parse_dim_string(const Quiver& q, const std::string& s) {
  DimVec d(q.num_vertices());
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    std::string item = s.substr(pos, comma - pos);
    size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw input_error("dimension entry '" + item + "' is not of the form name=value");
    std::string name = item.substr(0, eq);
    try {
      d[q.vertex_index(name)] = std::stoll(item.substr(eq + 1));
    } catch (const input_error&) {
      throw;
    } catch (const std::exception&) {
      throw input_error("bad integer in dimension entry '" + item + "'");
    }
    pos = comma + 1;
  }
  return d;
}

// "a,b" — a plain integer pair, as used for Kronecker dimension vectors.
inline std::pair<Int, Int> parse_pair_string(const std::string& s) {
  size_t comma = s.find(',');
  if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
    throw input_error("expected exactly two comma-separated integers, got '" + s + "'");
  try {
    return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw input_error("bad integer in pair '" + s + "'");
  }
}

inline Json word_to_json(const ReflectionWord& w) {
  Json steps = Json::array();
  for (const ReflectionStep& s : w.steps) steps.push_back({s.vertex, s.sign});
  Json j;
  j["steps"] = std::move(steps);
  j["dualize"] = w.dualize;
  return j;
}

inline Json block_to_json(const Quiver& q, const Block& b) {
  Json j;
  j["root"] = dimvec_to_json(q, b.root);
  j["mult"] = b.mult;
  j["class"] = to_string(b.cls);
  return j;
}

inline Json candecomp_to_json(const Quiver& q, const CanDecomp& d) {
  Json blocks = Json::array();
  for (const Block& b : d.blocks) blocks.push_back(block_to_json(q, b));
  return blocks;
}

inline Json kclass_to_json(const kronecker::KroneckerClass& c) {
  Json j;
  j["class"] = kronecker::to_string(c.tag);
  j["l"] = c.l;
  j["c"] = c.c;
  j["d"] = c.d;
  j["h"] = c.h;
  j["reflection_word"] = word_to_json(c.word);
  return j;
}

inline Json moduli_to_json(const ModuliReport& r) {
  Json j;
  j["h"] = r.h;
  j["p"] = r.p;
  j["model"] = r.model;
  j["flags"] = r.flags;
  return j;
}

inline Json tower_to_json(const TowerNode& n) {
  Json j;
  j["kind"] = n.kind;
  j["quiver"] = n.quiver;
  Json dim = Json::array();
  for (int v = 0; v < n.dim.size(); ++v) dim.push_back(n.dim[v]);
  j["dim"] = std::move(dim);
  j["h"] = n.h;
  j["p"] = n.p;
  if (n.t >= 0) j["t"] = n.t;
  if (!n.flags.empty()) j["flags"] = n.flags;
  if (!n.children.empty()) {
    Json kids = Json::array();
    for (const TowerNode& c : n.children) kids.push_back(tower_to_json(c));
    j["children"] = std::move(kids);
  }
  return j;
}

template <class F>
Json matrix_to_json(const F& field, const Matrix<F>& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(field.str(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json rep_to_json(const Rep<FpField>& r) {
  Json j;
  j["field"] = Json{{"prime", r.field.p}};
  j["dims"] = dimvec_to_json(r.quiver, r.dims);
  Json mats = Json::object();
  for (int ai = 0; ai < r.quiver.num_arrows(); ++ai) {
    const Matrix<FpField>& m = r.mats[static_cast<size_t>(ai)];
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(i, c));
      rows.push_back(std::move(row));
    }
    mats[r.quiver.arrows()[static_cast<size_t>(ai)].name] = std::move(rows);
  }
  j["matrices"] = std::move(mats);
  return j;
}

}  // namespace quivermod
