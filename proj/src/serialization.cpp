// Copyright 2026 The nestedvi Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nestedvi/serialization.hpp"

#include <fmt/format.h>

#include <json.hpp>
#include <set>
#include <sstream>

namespace nvi {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw InputError("unknown key '" + key + "' in " + where);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw InputError(std::string("missing key '") + key + "' in " + where);
  return obj.at(key);
}

double real(const json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + " must be a number");
  return j.get<double>();
}

Vector vector_of(const json& j, Eigen::Index n, const std::string& where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n)
    throw InputError(where + " must be an array of length " + std::to_string(n));
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = real(j[static_cast<std::size_t>(i)], where);
  return v;
}

AffineMap map_of(const json& j, Eigen::Index n, const std::string& where) {
  if (!j.is_object()) throw InputError(where + " must be an object");
  reject_unknown(j, {"matrix", "offset"}, where);
  const json& rows = require(j, "matrix", where);
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n)
    throw InputError(where + ".matrix must have n rows");
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    m.row(r) = vector_of(rows[static_cast<std::size_t>(r)], n, where + ".matrix row").transpose();
  Vector offset = Vector::Zero(n);
  if (j.contains("offset")) offset = vector_of(j.at("offset"), n, where + ".offset");
  return AffineMap(std::move(m), std::move(offset));
}

FeasibleSet set_of(const json& j, Eigen::Index n) {
  if (!j.is_object()) throw InputError("set must be an object");
  const json& type = require(j, "type", "set");
  if (!type.is_string()) throw InputError("set.type must be a string");
  const std::string t = type.get<std::string>();
  if (t == "ball") {
    reject_unknown(j, {"type", "center", "radius"}, "set");
    Vector center = Vector::Zero(n);
    if (j.contains("center")) center = vector_of(j.at("center"), n, "set.center");
    const double radius = j.contains("radius") ? real(j.at("radius"), "set.radius") : 1.0;
    return FeasibleSet(Ball{std::move(center), radius});
  }
  if (t == "box") {
    reject_unknown(j, {"type", "lower", "upper"}, "set");
    return FeasibleSet(Box{vector_of(require(j, "lower", "set"), n, "set.lower"),
                           vector_of(require(j, "upper", "set"), n, "set.upper")});
  }
  if (t == "simplex") {
    reject_unknown(j, {"type", "scale"}, "set");
    const double scale = j.contains("scale") ? real(j.at("scale"), "set.scale") : 1.0;
    return FeasibleSet(Simplex{n, scale});
  }
  throw InputError("set.type must be one of ball, box, simplex");
}

void write_vector(std::ostringstream& out, const Vector& v) {
  out << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? ", " : "") << format_real(v[i]);
  out << ']';
}

void write_map(std::ostringstream& out, const AffineMap& map) {
  out << "{\"matrix\": [";
  for (Eigen::Index r = 0; r < map.dim(); ++r) {
    out << (r ? ", " : "");
    write_vector(out, map.matrix().row(r).transpose());
  }
  out << "], \"offset\": ";
  write_vector(out, map.offset());
  out << '}';
}

}  // namespace

std::string format_real(double x) { return fmt::format("{:.17g}", x); }

std::string problem_to_json(const NestedVIProblem& problem) {
  std::ostringstream out;
  out << "{\"n\": " << problem.dim() << ", \"G\": ";
  write_map(out, problem.upper());
  out << ", \"F\": ";
  write_map(out, problem.lower());
  out << ", \"set\": ";
  const auto& set = problem.set().variant();
  if (const auto* b = std::get_if<Ball>(&set)) {
    out << "{\"type\": \"ball\", \"center\": ";
    write_vector(out, b->center);
    out << ", \"radius\": " << format_real(b->radius) << '}';
  } else if (const auto* b = std::get_if<Box>(&set)) {
    out << "{\"type\": \"box\", \"lower\": ";
    write_vector(out, b->lower);
    out << ", \"upper\": ";
    write_vector(out, b->upper);
    out << '}';
  } else {
    out << "{\"type\": \"simplex\", \"scale\": " << format_real(std::get<Simplex>(set).scale) << '}';
  }
  out << "}\n";
  return out.str();
}

NestedVIProblem problem_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("problem JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw InputError("problem must be a JSON object");
  reject_unknown(j, {"n", "G", "F", "set"}, "problem");
  const json& n_json = require(j, "n", "problem");
  if (!n_json.is_number_integer() || n_json.get<std::int64_t>() < 1)
    throw InputError("problem.n must be a positive integer");
  const auto n = static_cast<Eigen::Index>(n_json.get<std::int64_t>());
  return NestedVIProblem(map_of(require(j, "G", "problem"), n, "G"),
                         map_of(require(j, "F", "problem"), n, "F"),
                         set_of(require(j, "set", "problem"), n));
}

}  // namespace nvi
