#include "poissoncoh/structures.hpp"

#include <cstdint>
#include <cstdio>

namespace poissoncoh {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::pair<int, int> parse_key(const std::string& key) {
  auto comma = key.find(',');
  if (comma == std::string::npos) throw DescriptionError("bivector key '" + key + "' is not of the form \"i,j\"");
  try {
    std::size_t used = 0;
    int i = std::stoi(key.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument(key);
    std::string rest = key.substr(comma + 1);
    int j = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(key);
    return {i, j};
  } catch (const std::logic_error&) {
    throw DescriptionError("bivector key '" + key + "' is not of the form \"i,j\"");
  }
}

}  // namespace

StructureDescription parse_description(const json& j) {
  StructureDescription d;
  try {
    if (!j.is_object()) throw DescriptionError("structure description must be a JSON object");
    d.name = j.value("name", std::string("unnamed"));
    d.variables = j.at("variables").get<std::vector<std::string>>();
    d.weights = j.at("weights").get<std::vector<int>>();
    d.l = j.at("l").get<int>();
    if (d.weights.size() != d.variables.size())
      throw DescriptionError("structure description: one weight per variable is required");
    for (int w : d.weights)
      if (w <= 0) throw DescriptionError("structure description: weights must be positive");
    for (const auto& [key, value] : j.at("bivector").items()) {
      auto [a, b] = parse_key(key);
      if (!(0 <= a && a < b && b < static_cast<int>(d.variables.size())))
        throw DescriptionError("bivector key '" + key + "' needs 0 <= i < j < number of variables");
      d.bivector[{a, b}] = value.get<std::string>();
    }
    if (j.contains("relation") && !j.at("relation").is_null()) d.relation = j.at("relation").get<std::string>();
    d.notes = j.value("notes", std::string());
  } catch (const json::exception& e) {
    throw DescriptionError(std::string("structure description: ") + e.what());
  }
  return d;
}

ordered_json to_json(const StructureDescription& d) {
  ordered_json j;
  j["name"] = d.name;
  j["variables"] = d.variables;
  j["weights"] = d.weights;
  j["l"] = d.l;
  ordered_json bv = ordered_json::object();
  for (const auto& [k, v] : d.bivector) bv[std::to_string(k.first) + "," + std::to_string(k.second)] = v;
  j["bivector"] = bv;
  if (d.relation) j["relation"] = *d.relation;
  if (!d.notes.empty()) j["notes"] = d.notes;
  return j;
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"symplectic2", "symplectic4", "sl2star", "a1cone"};
  return names;
}

StructureDescription builtin_description(const std::string& name) {
  StructureDescription d;
  d.name = name;
  if (name == "symplectic2") {
    d.variables = {"x", "y"};
    d.weights = {1, 1};
    d.l = 2;
    d.bivector[{0, 1}] = "1";
  } else if (name == "symplectic4") {
    d.variables = {"x1", "x2", "x3", "x4"};
    d.weights = {1, 1, 1, 1};
    d.l = 2;
    d.bivector[{0, 1}] = "1";
    d.bivector[{2, 3}] = "1";
  } else if (name == "sl2star" || name == "a1cone") {
    d.variables = {"e", "f", "h"};
    d.weights = {2, 2, 2};
    d.l = 2;
    d.bivector[{0, 1}] = "h";
    d.bivector[{0, 2}] = "-2*e";
    d.bivector[{1, 2}] = "2*f";
    if (name == "a1cone") d.relation = "h^2 + 4*e*f";
  } else {
    throw DescriptionError("unknown built-in example '" + name + "'");
  }
  return d;
}

PoissonStructure build_structure(const StructureDescription& d, JacobiPolicy policy) {
  WeightedContext ctx(d.variables, d.weights, d.l);
  Polyvector theta(ctx.size(), 2);
  for (const auto& [k, text] : d.bivector) theta.add({k.first, k.second}, parse_polynomial(text, ctx));
  std::optional<QuotientPresentation> q;
  if (d.relation) q = QuotientPresentation::with_default_leading(ctx, parse_polynomial(*d.relation, ctx));
  return PoissonStructure(std::move(ctx), std::move(theta), std::move(q), policy);
}

PoissonStructure builtin_structure(const std::string& name) { return build_structure(builtin_description(name)); }

std::string structure_hash(const StructureDescription& d) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json(d).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace poissoncoh
