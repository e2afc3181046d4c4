#pragma once

/**
 * @file serialize.hpp
 * @brief JSON documents for triples and Z2 quadratic forms.
 *
 * Triple: {"group": "Z + Z2", "mu": [[0,1],[1,0]], "phi": ["1/4","1/2"], "omega": [1]}
 * with "phi" and "omega" optional. Keys are written in that order, so a document
 * produced by to_json survives parse/dump unchanged.
 */

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "secform/error.hpp"
#include "secform/forms.hpp"
#include "secform/group.hpp"
#include "secform/qz.hpp"

namespace secform {

using Json = nlohmann::ordered_json;

inline Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

inline Json triple_to_json(const Triple& t) {
  Json j;
  j["group"] = render(t.group);
  j["mu"] = matrix_to_json(t.mu);
  if (t.phi) {
    Json phi = Json::array();
    for (const auto& v : *t.phi) phi.push_back(v.to_string());
    j["phi"] = std::move(phi);
  }
  if (t.omega) j["omega"] = *t.omega;
  return j;
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InvalidInput("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InvalidInput(std::string("missing field '") + key + "'");
  return *it;
}

inline std::vector<int> bit_vector(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InvalidInput(std::string(what) + " entries must be integers");
    out.push_back(v.get<int>());
  }
  return out;
}

inline Matrix int_matrix(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array of rows");
  Matrix m;
  for (const auto& row : j) m.push_back(bit_vector(row, what));
  return m;
}

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

}  // namespace detail

inline Triple triple_from_json(const Json& j) {
  Triple t;
  const Json& group = detail::field(j, "group");
  if (!group.is_string()) throw InvalidInput("group must be a string");
  t.group = parse_group(group.get<std::string>());
  t.mu = detail::int_matrix(detail::field(j, "mu"), "mu");
  if (auto it = j.find("phi"); it != j.end()) {
    if (!it->is_array()) throw InvalidInput("phi must be an array of fraction strings");
    std::vector<QZValue> phi;
    for (const auto& v : *it) {
      if (!v.is_string()) throw InvalidInput("phi entries must be strings such as \"1/4\"");
      phi.push_back(QZValue::parse(v.get<std::string>()));
    }
    t.phi = std::move(phi);
  }
  if (auto it = j.find("omega"); it != j.end()) t.omega = detail::bit_vector(*it, "omega");
  validate(t);
  return t;
}

inline Triple parse_triple(std::string_view text) { return triple_from_json(detail::parse_json(text)); }

inline std::string dump_triple(const Triple& t, int indent = 2) { return triple_to_json(t).dump(indent); }

inline Json z2_form_to_json(const Z2QuadraticForm& f) {
  Json j;
  j["q"] = f.q;
  j["b"] = matrix_to_json(f.b);
  return j;
}

inline Z2QuadraticForm z2_form_from_json(const Json& j) {
  Z2QuadraticForm f{detail::bit_vector(detail::field(j, "q"), "q"), detail::int_matrix(detail::field(j, "b"), "b")};
  detail::validate_z2_form(f);
  return f;
}

inline Z2QuadraticForm parse_z2_form(std::string_view text) { return z2_form_from_json(detail::parse_json(text)); }

}  // namespace secform
