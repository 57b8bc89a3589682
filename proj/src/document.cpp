#include "planarstack/document.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "planarstack/coeff_table.hpp"
#include "planarstack/errors.hpp"
#include "planarstack/toml_lite.hpp"

namespace planarstack {

namespace {

namespace fs = std::filesystem;

Complex complex_value(const toml::Value& v, const std::string& key) {
  if (v.is_number()) return {v.as_number(key), 0.0};
  const auto& arr = v.as_array(key);
  if (arr.size() != 2) {
    throw ParseError("key '" + key + "' must be a number or [re, im] pair",
                     v.line());
  }
  return {arr[0].as_number(key), arr[1].as_number(key)};
}

std::string resolve(const std::string& base_dir, const std::string& file) {
  fs::path p(file);
  if (p.is_absolute() || base_dir.empty()) return file;
  return (fs::path(base_dir) / p).string();
}

MaterialModel parse_material(const std::string& name, const toml::Table& t,
                             const std::string& base_dir) {
  const std::string& model = t.at("model").as_string("model");
  auto number = [&](const char* key) {
    return t.at(key).as_number(key);
  };
  if (model == "vacuum") return Vacuum{};
  if (model == "mirror") return IdealMirror{};
  if (model == "constant") {
    ConstantIndex c;
    c.eps = complex_value(t.at("eps"), "eps");
    if (const auto* mu = t.find("mu")) c.mu = complex_value(*mu, "mu");
    if (c.eps.imag() < 0.0 || c.mu.imag() < 0.0) {
      throw ParseError("material '" + name +
                       "': passive media need Im eps >= 0 and Im mu >= 0",
                       t.line);
    }
    return c;
  }
  if (model == "drude") {
    DrudeMetal d{number("omega_p"), number("gamma")};
    if (!(d.omega_p > 0.0) || d.gamma < 0.0) {
      throw ParseError("material '" + name + "': bad Drude parameters",
                       t.line);
    }
    return d;
  }
  if (model == "lorentz") {
    LorentzOscillator l{number("omega_0"), number("omega_p"),
                        number("gamma")};
    if (!(l.omega_0 > 0.0) || !(l.omega_p > 0.0) || l.gamma < 0.0) {
      throw ParseError("material '" + name + "': bad Lorentz parameters",
                       t.line);
    }
    return l;
  }
  if (model == "tabulated") {
    const std::string& file = t.at("file").as_string("file");
    return load_eps_table_csv(resolve(base_dir, file));
  }
  throw ParseError("material '" + name + "': unknown model '" + model + "'",
                   t.line);
}

std::map<std::string, MaterialModel> parse_materials(
    const toml::Table& root, const std::string& base_dir) {
  std::map<std::string, MaterialModel> out;
  out.emplace("vacuum", Vacuum{});
  if (const toml::Table* mats = root.find_table("materials")) {
    for (const auto& [name, t] : mats->subtables) {
      out.insert_or_assign(name, parse_material(name, t, base_dir));
    }
  }
  return out;
}

const MaterialModel& lookup(const std::map<std::string, MaterialModel>& mats,
                            const std::string& name, int line) {
  auto it = mats.find(name);
  if (it == mats.end()) {
    throw ParseError("undeclared material '" + name + "'", line);
  }
  return it->second;
}

// Turns a [[...layers]] list into a stack expression running from
// `left` to `right`. Local entries contribute an entry interface plus
// a slab; opaque entries splice in a whole tabulated stack.
StackExpr build_layers(const std::vector<toml::Table>& layers,
                       const std::map<std::string, MaterialModel>& mats,
                       const MaterialModel& left, const MaterialModel& right,
                       const std::string& base_dir) {
  std::vector<StackExpr> parts;
  MaterialModel current = left;
  bool open_boundary = true;  // need a final interface to `right`
  for (const auto& layer : layers) {
    if (layer.has("material") == layer.has("coefficients")) {
      throw ParseError(
          "each layer needs exactly one of 'material' or 'coefficients'",
          layer.line);
    }
    if (layer.has("material")) {
      const std::string& name = layer.at("material").as_string("material");
      const MaterialModel& mat = lookup(mats, name, layer.line);
      const double d = layer.at("thickness").as_number("thickness");
      if (!(d > 0.0)) {
        throw ParseError("layer thickness must be positive", layer.line);
      }
      parts.push_back(StackExpr::interface(current, mat));
      parts.push_back(StackExpr::slab(mat, d));
      current = mat;
      open_boundary = true;
    } else {
      const std::string& file =
          layer.at("coefficients").as_string("coefficients");
      const std::string& rname = layer.at("right").as_string("right");
      const MaterialModel& rmat = lookup(mats, rname, layer.line);
      parts.push_back(StackExpr::opaque(
          load_coeff_table_csv(resolve(base_dir, file)), current, rmat));
      current = rmat;
      open_boundary = false;
    }
  }
  if (open_boundary || !(current == right)) {
    parts.push_back(StackExpr::interface(current, right));
  }
  return StackExpr::sequence(std::move(parts));
}

}  // namespace

StackDocument parse_stack_document(const std::string& text,
                                   const std::string& name,
                                   const std::string& base_dir) {
  const toml::Table root = toml::parse(text, name);
  const toml::Table* stack = root.find_table("stack");
  if (!stack) throw ParseError(name + ": missing [stack] section", 1);

  auto materials = parse_materials(root, base_dir);
  std::string left = "vacuum";
  std::string right = "vacuum";
  if (const auto* v = stack->find("left")) left = v->as_string("left");
  if (const auto* v = stack->find("right")) right = v->as_string("right");
  const MaterialModel& lmat = lookup(materials, left, stack->line);
  const MaterialModel& rmat = lookup(materials, right, stack->line);

  static const std::vector<toml::Table> kNoLayers;
  const std::vector<toml::Table>* layers = root.find_array("layers");
  StackExpr expr = build_layers(layers ? *layers : kNoLayers, materials, lmat,
                                rmat, base_dir);
  return {std::move(materials), std::move(left), std::move(right),
          std::move(expr)};
}

StackDocument load_stack_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_stack_document(buf.str(), path,
                              fs::path(path).parent_path().string());
}

namespace {

// Mirror and slab sections share the layer grammar; a mirror ends in a
// backing medium, the slab returns to the cavity medium.
StackExpr build_cavity_stack(const toml::Table& section,
                             const std::map<std::string, MaterialModel>& mats,
                             const MaterialModel& cavity,
                             const MaterialModel& far_side,
                             const std::string& base_dir) {
  if (section.has("coefficients")) {
    const std::string& file =
        section.at("coefficients").as_string("coefficients");
    return StackExpr::opaque(load_coeff_table_csv(resolve(base_dir, file)),
                             cavity, far_side);
  }
  static const std::vector<toml::Table> kNoLayers;
  const std::vector<toml::Table>* layers = section.find_array("layers");
  return build_layers(layers ? *layers : kNoLayers, mats, cavity, far_side,
                      base_dir);
}

}  // namespace

CavityDocument parse_cavity_document(const std::string& text,
                                     const std::string& name,
                                     const std::string& base_dir) {
  const toml::Table root = toml::parse(text, name);
  const toml::Table* cavity = root.find_table("cavity");
  if (!cavity) throw ParseError(name + ": missing [cavity] section", 1);

  auto materials = parse_materials(root, base_dir);
  std::string medium_name = "vacuum";
  if (const auto* v = cavity->find("medium")) {
    medium_name = v->as_string("medium");
  }
  const MaterialModel medium = lookup(materials, medium_name, cavity->line);

  const double d1 = cavity->at("d1").as_number("d1");
  double d2 = std::numeric_limits<double>::infinity();
  if (const auto* v = cavity->find("d2")) d2 = v->as_number("d2");

  auto stack_section = [&](const char* key,
                           bool required) -> const toml::Table* {
    const toml::Table* t = root.find_table(key);
    if (!t && required) {
      throw ParseError(name + ": missing [" + std::string(key) + "] section",
                       1);
    }
    return t;
  };

  auto backing_of = [&](const toml::Table& t) -> const MaterialModel& {
    const std::string& bname = t.at("backing").as_string("backing");
    return lookup(materials, bname, t.line);
  };

  const toml::Table* m1 = stack_section("mirror1", true);
  const toml::Table* slab = stack_section("slab", true);
  const toml::Table* m2 = stack_section("mirror2", !std::isinf(d2));

  StackExpr mirror1 =
      build_cavity_stack(*m1, materials, medium, backing_of(*m1), base_dir);
  // A placeholder mirror keeps the config well-formed in the two-body
  // limit; it is never evaluated there.
  StackExpr mirror2 =
      m2 ? build_cavity_stack(*m2, materials, medium, backing_of(*m2),
                              base_dir)
         : StackExpr::interface(medium, medium);
  // A half-infinite body (explicit backing) is allowed when mirror 2 is
  // removed; a slab inside a finite cavity returns to the cavity medium.
  const MaterialModel& slab_far =
      slab->has("backing") ? backing_of(*slab) : medium;
  StackExpr slab_expr =
      build_cavity_stack(*slab, materials, medium, slab_far, base_dir);

  QuadratureSettings quad;
  if (const toml::Table* q = root.find_table("quadrature")) {
    if (const auto* v = q->find("tolerance")) {
      quad.rel_tolerance = v->as_number("tolerance");
    }
    if (const auto* v = q->find("abs_floor")) {
      quad.abs_floor = v->as_number("abs_floor");
    }
    if (const auto* v = q->find("max_refinements")) {
      quad.max_refinements = static_cast<int>(v->as_number("max_refinements"));
    }
    if (const auto* v = q->find("xi_cutoff_multiplier")) {
      quad.xi_cutoff_multiplier = v->as_number("xi_cutoff_multiplier");
    }
  }

  CavityConfig config{std::move(mirror1), std::move(mirror2),
                      std::move(slab_expr), d1, d2, medium, quad};
  validate_cavity(config);
  return {std::move(materials), std::move(config)};
}

CavityDocument load_cavity_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cavity_document(buf.str(), path,
                               fs::path(path).parent_path().string());
}

}  // namespace planarstack
