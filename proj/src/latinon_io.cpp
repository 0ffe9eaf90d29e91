#include "latinpat/latinon_io.hpp"

#include "latinpat/error.hpp"

#include <fstream>

namespace latinpat {

using nlohmann::json;

namespace {

Rational to_rational(const json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  throw Error(Errc::Parse, "expected a rational string \"p/q\", got " + v.dump());
}

std::vector<Rational> rationals(const json& v, const char* what) {
  if (!v.is_array()) throw Error(Errc::Parse, std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const auto& x : v) out.push_back(to_rational(x));
  return out;
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw Error(Errc::Parse, std::string("missing field '") + key + "'");
  return obj.at(key);
}

AxisModel axis_from_json(const json& v) {
  AxisModel axis;
  axis.breakpoints = rationals(field(v, "breakpoints"), "breakpoints");
  const json& classes = field(v, "classes");
  if (!classes.is_array()) throw Error(Errc::Parse, "classes must be an array");
  for (const auto& dist : classes) {
    if (!dist.is_object()) throw Error(Errc::Parse, "class distribution must be an object");
    ClassWeights w;
    for (const auto& [label, weight] : dist.items()) w[label] = to_rational(weight);
    axis.classes.push_back(std::move(w));
  }
  return axis;
}

json axis_to_json(const AxisModel& axis) {
  json bp = json::array();
  for (const auto& b : axis.breakpoints) bp.push_back(b.str());
  json classes = json::array();
  for (const auto& dist : axis.classes) {
    json d = json::object();
    for (const auto& [label, w] : dist) d[label] = w.str();
    classes.push_back(std::move(d));
  }
  return {{"breakpoints", std::move(bp)}, {"classes", std::move(classes)}};
}

int part_index(const std::string& key) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(key, &used);
    if (used == key.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::Parse, "part index '" + key + "' is not an integer");
}

}  // namespace

json latinon_to_json(const StepLatinon& latinon) {
  json vb = json::array();
  for (const auto& b : latinon.values().breakpoints) vb.push_back(b.str());
  json table = json::object();
  for (const auto& [rc, inner] : latinon.table()) {
    for (const auto& [cc, mix] : inner) {
      json m = json::object();
      for (const auto& [part, w] : mix) m[std::to_string(part)] = w.str();
      table[rc][cc] = std::move(m);
    }
  }
  json doc = {{"schema", 1},
              {"row_axis", axis_to_json(latinon.row_axis())},
              {"col_axis", axis_to_json(latinon.col_axis())},
              {"value_breakpoints", std::move(vb)},
              {"table", std::move(table)}};
  if (!latinon.name().empty()) doc["name"] = latinon.name();
  return doc;
}

StepLatinon latinon_from_json(const json& doc) {
  AxisModel rows = axis_from_json(field(doc, "row_axis"));
  AxisModel cols = axis_from_json(field(doc, "col_axis"));
  ValuePartition values{rationals(field(doc, "value_breakpoints"), "value_breakpoints")};
  const json& t = field(doc, "table");
  if (!t.is_object()) throw Error(Errc::Parse, "table must be an object");
  MixtureTable table;
  for (const auto& [rc, inner] : t.items()) {
    if (!inner.is_object()) throw Error(Errc::Parse, "table row must be an object");
    for (const auto& [cc, mix] : inner.items()) {
      if (!mix.is_object()) throw Error(Errc::Parse, "mixture must be an object");
      auto& slot = table[rc][cc];
      for (const auto& [part, w] : mix.items()) slot[part_index(part)] = to_rational(w);
    }
  }
  std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "";
  return StepLatinon(std::move(rows), std::move(cols), std::move(values), std::move(table), std::move(name));
}

StepLatinon load_latinon(const std::string& name_or_path) {
  if (name_or_path == "uniform" || name_or_path == "prop41" || name_or_path == "prop42") {
    return StepLatinon::builtin(name_or_path);
  }
  std::ifstream in(name_or_path);
  if (!in) throw Error(Errc::Parse, "cannot open Latinon file '" + name_or_path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, std::string("malformed Latinon JSON: ") + e.what());
  }
  return latinon_from_json(doc);
}

}  // namespace latinpat
