#include "planarstack/stack.hpp"

#include <cmath>

#include "planarstack/errors.hpp"

namespace planarstack {

namespace {

const MaterialModel& node_left(const StackExpr::Node& node) {
  return std::visit(
      [](const auto& part) -> const MaterialModel& {
        using T = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<T, InterfacePart>) return part.left;
        else if constexpr (std::is_same_v<T, SlabPart>) return part.medium;
        else if constexpr (std::is_same_v<T, SequencePart>)
          return part.parts.front().left_medium();
        else return part.left;
      },
      node);
}

const MaterialModel& node_right(const StackExpr::Node& node) {
  return std::visit(
      [](const auto& part) -> const MaterialModel& {
        using T = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<T, InterfacePart>) return part.right;
        else if constexpr (std::is_same_v<T, SlabPart>) return part.medium;
        else if constexpr (std::is_same_v<T, SequencePart>)
          return part.parts.back().right_medium();
        else return part.right;
      },
      node);
}

}  // namespace

StackExpr StackExpr::interface(MaterialModel left, MaterialModel right) {
  return StackExpr(InterfacePart{std::move(left), std::move(right)});
}

StackExpr StackExpr::slab(MaterialModel medium, double thickness) {
  if (!(thickness > 0.0)) {
    throw DomainError("slab thickness must be positive");
  }
  if (is_ideal_mirror(medium)) {
    throw DomainError("a slab of ideal mirror material is not representable");
  }
  return StackExpr(SlabPart{std::move(medium), thickness});
}

StackExpr StackExpr::sequence(std::vector<StackExpr> parts) {
  if (parts.empty()) {
    throw DomainError("sequence needs at least one part");
  }
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!(parts[i].right_medium() == parts[i + 1].left_medium())) {
      throw ChainMismatchError(
          "sequence parts " + std::to_string(i) + " and " +
          std::to_string(i + 1) + " do not share a boundary medium");
    }
  }
  return StackExpr(SequencePart{std::move(parts)});
}

StackExpr StackExpr::opaque(std::shared_ptr<const CoeffSource> source,
                            MaterialModel left, MaterialModel right) {
  if (!source) throw DomainError("opaque stack needs a coefficient source");
  return StackExpr(OpaquePart{std::move(source), std::move(left),
                              std::move(right)});
}

const MaterialModel& StackExpr::left_medium() const {
  return node_left(node_);
}

const MaterialModel& StackExpr::right_medium() const {
  return node_right(node_);
}

bool StackExpr::contains_opaque() const {
  return std::visit(
      [](const auto& part) -> bool {
        using T = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<T, OpaquePart>) {
          return true;
        } else if constexpr (std::is_same_v<T, SequencePart>) {
          for (const auto& p : part.parts) {
            if (p.contains_opaque()) return true;
          }
          return false;
        } else {
          return false;
        }
      },
      node_);
}

namespace {

// Core composition of two adjacent stacks through a spacer whose
// one-pass propagation factor is `phase` (1 for a zero-width junction).
FresnelSet combine(const FresnelSet& left, const FresnelSet& right,
                   Complex phase, const EvalOptions& opts) {
  const Complex phase2 = phase * phase;
  const Complex den = 1.0 - left.r_bwd * right.r_fwd * phase2;
  if (std::abs(den) < opts.denominator_floor) {
    throw ResonantSingularityError(
        "stack recursion denominator |1 - r r e^{2 i beta d}| below floor");
  }
  FresnelSet out;
  out.r_fwd = left.r_fwd + left.t_fwd * left.t_bwd * right.r_fwd * phase2 / den;
  out.t_fwd = left.t_fwd * right.t_fwd * phase / den;
  out.r_bwd = right.r_bwd + right.t_fwd * right.t_bwd * left.r_bwd * phase2 / den;
  out.t_bwd = right.t_bwd * left.t_bwd * phase / den;
  out.left = left.left;
  out.right = right.right;
  return out;
}

FresnelSet evaluate_opaque(const OpaquePart& part, const TransverseMode& mode) {
  CoeffSource::RawCoeffs raw = part.source->eval(mode);
  FresnelSet fs;
  fs.left = part.left;
  fs.right = part.right;
  fs.r_fwd = raw.r_fwd;
  fs.t_fwd = raw.t_fwd;
  if (raw.has_backward) {
    fs.r_bwd = raw.r_bwd;
    fs.t_bwd = raw.t_bwd;
  } else {
    // Forward-only source: t_bwd from the transmission symmetry of
    // reciprocal media, r_bwd from the declared symmetric-stack reading
    // of the data.
    const LayerWave wl = layer_wave(part.left, mode);
    const LayerWave wr = layer_wave(part.right, mode);
    fs.t_bwd = raw.t_fwd * (wl.mu * wr.perp) / (wr.mu * wl.perp);
    fs.r_bwd = raw.r_fwd;
  }
  return fs;
}

}  // namespace

FresnelSet join(const FresnelSet& left, const MaterialModel& spacer, double d,
                const FresnelSet& right, const TransverseMode& mode,
                const EvalOptions& opts) {
  if (!(left.right == spacer) || !(right.left == spacer)) {
    throw ChainMismatchError("join: spacer medium does not bound both stacks");
  }
  if (is_ideal_mirror(spacer)) {
    throw EvaluationError("join: spacer layer cannot be an ideal mirror");
  }
  Complex phase(1.0, 0.0);
  if (d != 0.0) {
    phase = propagation_phase(layer_wave(spacer, mode), mode, d);
  }
  return combine(left, right, phase, opts);
}

FresnelSet evaluate(const StackExpr& stack, const TransverseMode& mode,
                    const EvalOptions& opts) {
  return std::visit(
      [&](const auto& part) -> FresnelSet {
        using T = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<T, InterfacePart>) {
          return interface_coeffs(part.left, part.right, mode);
        } else if constexpr (std::is_same_v<T, SlabPart>) {
          const Complex phase =
              propagation_phase(layer_wave(part.medium, mode), mode,
                                part.thickness);
          return {Complex(0.0), Complex(0.0), phase, phase, part.medium,
                  part.medium};
        } else if constexpr (std::is_same_v<T, SequencePart>) {
          FresnelSet acc = evaluate(part.parts.front(), mode, opts);
          for (std::size_t i = 1; i < part.parts.size(); ++i) {
            acc = combine(acc, evaluate(part.parts[i], mode, opts),
                          Complex(1.0), opts);
          }
          return acc;
        } else {
          return evaluate_opaque(part, mode);
        }
      },
      stack.node());
}

namespace {

using Token = std::variant<InterfacePart, SlabPart>;

void flatten(const StackExpr& stack, std::vector<Token>& out) {
  std::visit(
      [&](const auto& part) {
        using T = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<T, InterfacePart>) {
          out.push_back(part);
        } else if constexpr (std::is_same_v<T, SlabPart>) {
          out.push_back(part);
        } else if constexpr (std::is_same_v<T, SequencePart>) {
          for (const auto& p : part.parts) flatten(p, out);
        } else {
          throw EvaluationError(
              "layerwise evaluation supports only local stacks; source: " +
              part.source->describe());
        }
      },
      stack.node());
}

struct ForwardPair {
  Complex r, t;
};

// Right-to-left textbook fold over interface/slab tokens; uses only the
// forward coefficients of the partial stack, so it shares no code path
// with the four-coefficient recursion in combine().
ForwardPair fold_forward(const std::vector<Token>& tokens,
                         const TransverseMode& mode, const EvalOptions& opts) {
  ForwardPair acc{Complex(0.0), Complex(1.0)};
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    if (const auto* slab = std::get_if<SlabPart>(&*it)) {
      const Complex phase =
          propagation_phase(layer_wave(slab->medium, mode), mode,
                            slab->thickness);
      acc.r *= phase * phase;
      acc.t *= phase;
    } else {
      const auto& ifc = std::get<InterfacePart>(*it);
      const FresnelSet s = interface_coeffs(ifc.left, ifc.right, mode);
      const Complex den = 1.0 + s.r_fwd * acc.r;  // 1 - r_kj r_{k/m}
      if (std::abs(den) < opts.denominator_floor) {
        throw ResonantSingularityError(
            "layerwise recursion denominator below floor");
      }
      acc.r = (s.r_fwd + acc.r) / den;
      acc.t = s.t_fwd * acc.t / den;
    }
  }
  return acc;
}

}  // namespace

FresnelSet evaluate_layerwise(const StackExpr& stack,
                              const TransverseMode& mode,
                              const EvalOptions& opts) {
  std::vector<Token> tokens;
  flatten(stack, tokens);

  std::vector<Token> reversed;
  reversed.reserve(tokens.size());
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    if (const auto* ifc = std::get_if<InterfacePart>(&*it)) {
      reversed.push_back(InterfacePart{ifc->right, ifc->left});
    } else {
      reversed.push_back(*it);
    }
  }

  const ForwardPair fwd = fold_forward(tokens, mode, opts);
  const ForwardPair bwd = fold_forward(reversed, mode, opts);
  return {fwd.r, bwd.r, fwd.t, bwd.t, stack.left_medium(),
          stack.right_medium()};
}

}  // namespace planarstack
