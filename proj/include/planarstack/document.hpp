#pragma once

#include <map>
#include <optional>
#include <string>

#include "planarstack/casimir.hpp"
#include "planarstack/stack.hpp"

namespace planarstack {

// A stack definition file: named materials, ambient media, and an
// ordered layer list (local slabs and/or opaque coefficient tables).
// See the README for the grammar.
struct StackDocument {
  std::map<std::string, MaterialModel> materials;
  std::string ambient_left;
  std::string ambient_right;
  StackExpr stack;
};

StackDocument load_stack_document(const std::string& path);
StackDocument parse_stack_document(const std::string& text,
                                   const std::string& name,
                                   const std::string& base_dir);

// A cavity definition file: two mirrors, a slab, gap widths, the cavity
// medium, and optional quadrature settings. d2 = inf selects the
// two-body limit.
struct CavityDocument {
  std::map<std::string, MaterialModel> materials;
  CavityConfig config;
};

CavityDocument load_cavity_document(const std::string& path);
CavityDocument parse_cavity_document(const std::string& text,
                                     const std::string& name,
                                     const std::string& base_dir);

}  // namespace planarstack
