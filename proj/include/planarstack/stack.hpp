#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "planarstack/fresnel.hpp"

namespace planarstack {

class StackExpr;

// Supplies externally known coefficients for an opaque stack (tabulated
// data, a measured device, a nonlocal solver, ...).
class CoeffSource {
 public:
  struct RawCoeffs {
    Complex r_fwd, r_bwd, t_fwd, t_bwd;
    bool has_backward = true;
  };

  virtual ~CoeffSource() = default;
  virtual RawCoeffs eval(const TransverseMode& mode) const = 0;
  virtual std::string describe() const = 0;
};

struct InterfacePart {
  MaterialModel left;
  MaterialModel right;
};

struct SlabPart {
  MaterialModel medium;
  double thickness;  // m, > 0
};

struct SequencePart {
  std::vector<StackExpr> parts;
};

struct OpaquePart {
  std::shared_ptr<const CoeffSource> source;
  MaterialModel left;   // declared boundary media
  MaterialModel right;
};

// A multilayer as a composable expression. A Sequence chains parts
// whose adjacent boundary media match; how parts are grouped into
// sub-sequences does not affect the evaluated coefficients.
class StackExpr {
 public:
  static StackExpr interface(MaterialModel left, MaterialModel right);
  static StackExpr slab(MaterialModel medium, double thickness);
  static StackExpr sequence(std::vector<StackExpr> parts);
  static StackExpr opaque(std::shared_ptr<const CoeffSource> source,
                          MaterialModel left, MaterialModel right);

  const MaterialModel& left_medium() const;
  const MaterialModel& right_medium() const;
  bool contains_opaque() const;

  using Node = std::variant<InterfacePart, SlabPart, SequencePart, OpaquePart>;
  const Node& node() const { return node_; }

 private:
  explicit StackExpr(Node node) : node_(std::move(node)) {}
  Node node_;
};

struct EvalOptions {
  // Composite denominators with magnitude below this raise
  // ResonantSingularityError instead of being regularized.
  double denominator_floor = 1e-300;
};

// Combines the stacks j/k and k/m across the local spacer layer k of
// thickness d_k:
//   r_{j/m} = r_{j/k} + t_{j/k} t_{k/j} r_{k/m} p^2 / (1 - r_{k/j} r_{k/m} p^2)
//   t_{j/m} = t_{j/k} t_{k/m} p / (1 - r_{k/j} r_{k/m} p^2)
// with p = e^{i beta_k d_k} (real axis) or e^{-kappa_k d_k} (imaginary
// axis); backward coefficients by exchanging the roles of j and m.
FresnelSet join(const FresnelSet& left, const MaterialModel& spacer, double d,
                const FresnelSet& right, const TransverseMode& mode,
                const EvalOptions& opts = {});

// Generalized Fresnel coefficients of the whole stack. Sequences are
// folded with the stack recursion; the result is independent of the
// grouping of parts.
FresnelSet evaluate(const StackExpr& stack, const TransverseMode& mode,
                    const EvalOptions& opts = {});

// Layer-by-layer fold using only single-interface coefficients (the
// textbook recursion). Supports purely local stacks; kept as an
// independent cross-check of evaluate().
FresnelSet evaluate_layerwise(const StackExpr& stack,
                              const TransverseMode& mode,
                              const EvalOptions& opts = {});

}  // namespace planarstack
