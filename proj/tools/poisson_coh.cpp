#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "poissoncoh/deform.hpp"
#include "poissoncoh/harrison.hpp"
#include "poissoncoh/lp_cohomology.hpp"
#include "poissoncoh/structures.hpp"

using namespace poissoncoh;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit { ok = 0, counterexample = 1, input_error = 2, unstable = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string example, structure_file, method = "lp", degrees, weights, format = "json", deformation_file;
  std::optional<int> hp;
  int trunc = 6;
  bool require_stable = false, defer_jacobi = false;
};

std::pair<int, int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      int v = std::stoi(text);
      return {v, v};
    }
    int a = std::stoi(text.substr(0, dots)), b = std::stoi(text.substr(dots + 2));
    if (a > b) throw InputError("empty range '" + text + "'");
    return {a, b};
  } catch (const std::logic_error&) {
    throw InputError("malformed range '" + text + "', expected A..B");
  }
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

StructureDescription load_description(const Options& o) {
  if (o.example.empty() == o.structure_file.empty()) throw InputError("exactly one of --example or --structure is required");
  if (!o.example.empty()) {
    const auto& names = builtin_names();
    if (std::find(names.begin(), names.end(), o.example) == names.end())
      throw InputError("unknown example '" + o.example + "'");
    return builtin_description(o.example);
  }
  return parse_description(read_json(o.structure_file));
}

ojson header(const std::string& command, const StructureDescription& d, std::optional<int> truncation) {
  ojson h;
  h["tool"] = "poisson_coh";
  h["version"] = kVersion;
  h["command"] = command;
  h["structure"] = {{"name", d.name}, {"hash", structure_hash(d)}};
  h["truncation"] = truncation ? ojson(*truncation) : ojson(nullptr);
  return h;
}

std::string name_of(HarrisonContext& ctx, MonomialId id) {
  return monomial_to_string(ctx.exponent(id), ctx.weights());
}

MonomialId monomial_id(HarrisonContext& ctx, const std::string& text) {
  Polynomial p = parse_polynomial(text, ctx.weights());
  if (p.num_terms() != 1 || p.terms().begin()->second != 1) throw InputError("'" + text + "' is not a monomial");
  return ctx.intern(p.terms().begin()->first);
}

// ---------------------------------------------------------------------------
// Deformation documents:
//   {"bivector": {"i,j": text}}  or
//   {"phi": [{"inputs": [m, m], "value": text}], "psi": [{"inputs": [m, m], "value": text}]}

FirstOrderDeformation read_deformation(HarrisonContext& ctx, const nlohmann::json& j, int truncation) {
  const auto& wctx = ctx.weights();
  const std::size_t n = wctx.size();
  try {
    if (j.contains("bivector")) {
      Polyvector p(n, 2);
      for (const auto& [key, text] : j.at("bivector").items()) {
        auto comma = key.find(',');
        if (comma == std::string::npos) throw InputError("bivector key '" + key + "' is not \"i,j\"");
        int a = std::stoi(key.substr(0, comma)), b = std::stoi(key.substr(comma + 1));
        if (a < 0 || b <= a || b >= static_cast<int>(n)) throw InputError("bivector key '" + key + "' out of range");
        p.add({a, b}, parse_polynomial(text.get<std::string>(), wctx));
      }
      if (!ctx.structure().is_smooth_ambient()) throw InputError("bivector deformations need a polynomial algebra");
      return deformation_from_bivector(ctx, p, truncation);
    }
    FirstOrderDeformation d = zero_deformation(truncation);
    auto fill = [&](const char* field, HarrisonCochain& c, bool product) {
      if (!j.contains(field)) return;
      for (const auto& entry : j.at(field)) {
        const auto& inputs = entry.at("inputs");
        if (inputs.size() != 2) throw InputError(std::string(field) + " entries take two inputs");
        MonomialId a = monomial_id(ctx, inputs[0].get<std::string>()), b = monomial_id(ctx, inputs[1].get<std::string>());
        if (a == 0 || b == 0) continue;
        Polynomial v = ctx.structure().reduce(parse_polynomial(entry.at("value").get<std::string>(), wctx));
        ChainProduct raw = product ? ChainProduct{{a, b}} : ChainProduct{{a}, {b}};
        for (const auto& [key, q] : ctx.canonical(raw)) {
          auto [it, inserted] = c.values.try_emplace(key, q * v);
          if (!inserted) it->second += q * v;
        }
      }
      std::erase_if(c.values, [](const auto& kv) { return kv.second.is_zero(); });
    };
    fill("phi", d.phi, true);
    fill("psi", d.psi, false);
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("deformation: ") + e.what());
  }
}

ojson write_deformation(HarrisonContext& ctx, const FirstOrderDeformation& d) {
  const auto& wctx = ctx.weights();
  ojson out;
  if (d.bivector) {
    ojson b = ojson::object();
    for (const auto& [s, c] : d.bivector->components())
      b[std::to_string(s[0]) + "," + std::to_string(s[1])] = to_string(c, wctx);
    out["bivector"] = b;
    return out;
  }
  auto dump = [&](const HarrisonCochain& c) {
    ojson arr = ojson::array();
    for (const auto& [key, v] : c.values) {
      ojson inputs = ojson::array();
      for (const auto& factor : key)
        for (auto id : factor) inputs.push_back(name_of(ctx, id));
      arr.push_back({{"inputs", inputs}, {"value", to_string(v, wctx)}});
    }
    return arr;
  };
  out["phi"] = dump(d.phi);
  out["psi"] = dump(d.psi);
  return out;
}

// ---------------------------------------------------------------------------

void emit(const ojson& doc, const std::string& format) {
  if (format == "json" || !doc.contains("rows")) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  const auto& rows = doc.at("rows");
  if (rows.empty()) return;
  std::vector<std::string> cols;
  for (const auto& [k, v] : rows[0].items()) cols.push_back(k);
  for (std::size_t i = 0; i < cols.size(); ++i) std::cout << (i ? "," : "") << cols[i];
  std::cout << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const auto& v = row.at(cols[i]);
      std::string cell;
      if (v.is_array()) {
        for (std::size_t k = 0; k < v.size(); ++k) cell += (k ? ";" : "") + v[k].dump();
      } else if (v.is_string()) {
        cell = v.get<std::string>();
      } else {
        cell = v.dump();
      }
      std::cout << (i ? "," : "") << cell;
    }
    std::cout << "\n";
  }
}

PoissonStructure build(const StructureDescription& d, const Options& o) {
  return build_structure(d, o.defer_jacobi ? JacobiPolicy::defer : JacobiPolicy::enforce);
}

int cmd_hp(const Options& o) {
  auto desc = load_description(o);
  auto ps = build(desc, o);
  const bool harrison = o.method == "harrison";
  const int l = ps.bracket_weight();
  std::pair<int, int> degrees = o.hp ? std::pair{*o.hp, *o.hp}
                                : !o.degrees.empty() ? parse_range(o.degrees)
                                : harrison ? std::pair{1, 2}
                                           : std::pair{0, 3};
  std::pair<int, int> weights = !o.weights.empty() ? parse_range(o.weights)
                                : harrison ? std::pair{-(o.trunc + l), 4}
                                           : std::pair{-2, 6};
  if (degrees.first < 0) throw InputError("degrees must be non-negative");
  if (harrison && (degrees.first < 1 || degrees.second > 2)) throw InputError("the harrison method computes HP^1 and HP^2 only");
  if (!harrison && !ps.is_smooth_ambient()) throw InputError("the lp method needs a polynomial algebra; use --method harrison");
  if (harrison && o.trunc < 2) throw InputError("--trunc must be at least 2");

  ojson doc = header("hp", desc, harrison ? std::optional<int>(o.trunc) : std::nullopt);
  doc["method"] = o.method;
  ojson rows = ojson::array();
  bool all_stable = true;
  std::optional<HarrisonContext> ctx;
  if (harrison) ctx.emplace(ps, o.trunc);
  for (int i = degrees.first; i <= degrees.second; ++i)
    for (int w = weights.first; w <= weights.second; ++w) {
      ojson row;
      row["method"] = o.method;
      row["degree"] = i;
      row["weight"] = w;
      row["invariant"] = w + i * l;
      if (harrison) {
        auto r = total_hp(*ctx, i, w, o.trunc);
        row["cochain_dims"] = r.cochain_dimensions;
        row["hp"] = r.dimension;
        row["previous"] = r.previous;
        row["stable"] = r.stable;
        all_stable = all_stable && r.stable;
      } else {
        SliceComplex sc = build_slice(ps, w + i * l, std::max(0, i - 1), i + 1);
        ojson dims = ojson::array();
        for (int k = i - 1; k <= i + 1; ++k) dims.push_back(k < 0 ? 0 : sc.dimension(k));
        row["cochain_dims"] = dims;
        row["hp"] = i == 0 ? ojson(nullptr) : ojson(hp_dimension(ps, i, w, LpVariant::positive));
        row["hp_extended"] = hp_dimension(ps, i, w, LpVariant::extended);
        row["stable"] = true;
      }
      rows.push_back(row);
    }
  doc["rows"] = rows;
  emit(doc, o.format);
  return o.require_stable && !all_stable ? unstable : ok;
}

int cmd_verify(const Options& o) {
  auto desc = load_description(o);
  ojson doc = header("verify", desc, o.deformation_file.empty() ? std::nullopt : std::optional<int>(o.trunc));
  auto ps = build_structure(desc, JacobiPolicy::defer);
  auto jac = jacobi_check(ps);
  ojson checks = ojson::array();
  checks.push_back({{"identity", "jacobi"}, {"triples", jac.triples_checked}});
  if (!jac.passed()) {
    const auto& c = *jac.counterexample;
    doc["status"] = "fail";
    doc["checked"] = checks;
    doc["counterexample"] = {{"identity", "jacobi"},
                             {"triple", {desc.variables[c.variables[0]], desc.variables[c.variables[1]],
                                         desc.variables[c.variables[2]]}},
                             {"discrepancy", to_string(c.jacobiator, ps.context())}};
    emit(doc, "json");
    return counterexample;
  }
  auto audit = weight_audit(ps);
  doc["homogeneous"] = audit.homogeneous;
  if (!o.deformation_file.empty()) {
    HarrisonContext ctx(ps, o.trunc);
    auto d = read_deformation(ctx, read_json(o.deformation_file), o.trunc);
    auto report = verify_first_order(ctx, d, o.trunc);
    for (const auto& c : report.checked) checks.push_back({{"identity", to_string(c.identity)}, {"triples", c.triples}});
    if (!report.passed()) {
      const auto& v = *report.violation;
      doc["status"] = "fail";
      doc["checked"] = checks;
      doc["counterexample"] = {{"identity", to_string(v.identity)},
                               {"triple", {name_of(ctx, v.triple[0]), name_of(ctx, v.triple[1]), name_of(ctx, v.triple[2])}},
                               {"discrepancy", to_string(v.discrepancy, ps.context())}};
      emit(doc, "json");
      return counterexample;
    }
    auto alg = DualNumberAlgebra(ctx, d, o.trunc).reverify();
    for (const auto& [name, count] : alg.checked) checks.push_back({{"identity", "dual_" + name}, {"triples", count}});
    if (!alg.passed()) {
      doc["status"] = "fail";
      doc["checked"] = checks;
      doc["counterexample"] = {{"identity", "dual_numbers"}, {"detail", *alg.failure}};
      emit(doc, "json");
      return counterexample;
    }
  }
  doc["status"] = "pass";
  doc["checked"] = checks;
  emit(doc, "json");
  return ok;
}

int cmd_deform(const Options& o) {
  auto desc = load_description(o);
  auto ps = build(desc, o);
  const int l = ps.bracket_weight();
  Route route = o.method == "harrison" ? Route::harrison : ps.is_smooth_ambient() ? Route::lp : Route::harrison;
  if (route == Route::lp && !ps.is_smooth_ambient()) throw InputError("the lp route needs a polynomial algebra");
  auto weights = !o.weights.empty() ? parse_range(o.weights) : std::pair{-(o.trunc + l), 4};
  HarrisonContext ctx(ps, o.trunc);
  ojson doc = header("deform", desc, o.trunc);
  doc["method"] = route == Route::lp ? "lp" : "harrison";
  ojson rows = ojson::array();
  bool all_stable = true, all_verified = true;
  for (int w = weights.first; w <= weights.second; ++w) {
    auto r = enumerate_first_order(ctx, w, o.trunc, route);
    ojson classes = ojson::array();
    bool verified = true;
    for (const auto& d : r.classes) {
      verified = verified && verify_first_order(ctx, d, o.trunc).passed() &&
                 DualNumberAlgebra(ctx, d, o.trunc).reverify().passed();
      classes.push_back(write_deformation(ctx, d));
    }
    all_stable = all_stable && r.stable;
    all_verified = all_verified && verified;
    rows.push_back({{"weight", w}, {"count", r.classes.size()}, {"stable", r.stable}, {"verified", verified},
                    {"classes", classes}});
  }
  doc["rows"] = rows;
  emit(doc, o.format);
  if (!all_verified) return counterexample;
  return o.require_stable && !all_stable ? unstable : ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Poisson cohomology and first-order deformations"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto add_structure = [&](CLI::App* sub) {
    sub->add_option("--example", o.example, "built-in structure: symplectic2, symplectic4, sl2star, a1cone");
    sub->add_option("--structure", o.structure_file, "structure description (JSON)");
    sub->add_flag("--defer-jacobi", o.defer_jacobi, "skip the Jacobi check when building the structure");
  };
  auto* hp = app.add_subcommand("hp", "cohomology dimension table");
  add_structure(hp);
  hp->add_option("--method", o.method)->check(CLI::IsMember({"lp", "harrison"}));
  hp->add_option("--degrees", o.degrees, "A..B");
  hp->add_option("--weights", o.weights, "A..B (weight of the degree-i cochains)");
  hp->add_option("--hp", o.hp, "single degree");
  hp->add_option("--trunc", o.trunc, "Harrison input-weight truncation");
  hp->add_flag("--require-stable", o.require_stable);
  hp->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));

  auto* verify = app.add_subcommand("verify", "Jacobi and first-order deformation certificate");
  add_structure(verify);
  verify->add_option("--deformation", o.deformation_file, "deformation document (JSON)");
  verify->add_option("--trunc", o.trunc);

  auto* deform = app.add_subcommand("deform", "enumerate first-order deformation classes");
  add_structure(deform);
  deform->add_option("--method", o.method)->check(CLI::IsMember({"lp", "harrison"}));
  deform->add_option("--weights", o.weights, "A..B (weight of psi)");
  deform->add_option("--trunc", o.trunc);
  deform->add_flag("--require-stable", o.require_stable);
  deform->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : input_error;
  }
  try {
    if (*hp) return cmd_hp(o);
    if (*verify) return cmd_verify(o);
    return cmd_deform(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const DescriptionError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const JacobiViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const IdealViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const NotHomogeneous& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return input_error;
}
