#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "poissoncoh/poisson_core.hpp"

namespace poissoncoh {

/// Input description of a weighted Poisson structure (JSON schema:
/// name, variables, weights, l, bivector {"i,j": text}, relation?, notes?).
struct StructureDescription {
  std::string name;
  std::vector<std::string> variables;
  std::vector<int> weights;
  int l = 0;
  std::map<std::pair<int, int>, std::string> bivector;
  std::optional<std::string> relation;
  std::string notes;
};

struct DescriptionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

StructureDescription parse_description(const nlohmann::json& j);
nlohmann::ordered_json to_json(const StructureDescription& d);

/// symplectic2, symplectic4, sl2star, a1cone.
const std::vector<std::string>& builtin_names();
StructureDescription builtin_description(const std::string& name);

PoissonStructure build_structure(const StructureDescription& d, JacobiPolicy policy = JacobiPolicy::enforce);
PoissonStructure builtin_structure(const std::string& name);

/// FNV-1a (64 bit) of the canonical JSON dump, as 16 hex digits.
std::string structure_hash(const StructureDescription& d);

}  // namespace poissoncoh
