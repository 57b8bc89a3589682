#include "planarstack/bragg.hpp"

#include <cmath>

#include "planarstack/constants.hpp"
#include "planarstack/errors.hpp"

namespace planarstack {

double r121_normal(double r12) {
  if (!(std::abs(r12) < 1.0)) {
    throw DomainError("r121_normal requires |r12| < 1");
  }
  return 2.0 * r12 / (1.0 + r12 * r12);
}

double bragg_step(double r1, double r_prev) {
  if (!(std::abs(r1) < 1.0) || !(std::abs(r_prev) <= 1.0)) {
    throw DomainError("bragg_step requires |R1| < 1 and |R_prev| <= 1");
  }
  return (r1 + r_prev) / (1.0 + r1 * r_prev);
}

double bragg_double(double r_half) {
  if (!(std::abs(r_half) <= 1.0)) {
    throw DomainError("bragg_double requires |R| <= 1");
  }
  return 2.0 * r_half / (1.0 + r_half * r_half);
}

double bragg_closed(int n, double r1) {
  if (n < 0) throw DomainError("bragg_closed requires N >= 0");
  if (!(std::abs(r1) < 1.0)) {
    throw DomainError("bragg_closed requires |R1| < 1");
  }
  return std::tanh(n * std::atanh(r1));
}

StackExpr bragg_stack(const BraggSpec& spec) {
  if (!(spec.n1 > 0.0) || !(spec.n2 > 0.0)) {
    throw DomainError("Bragg indices must be positive");
  }
  if (spec.n_type2 < 0) throw DomainError("Bragg N must be >= 0");
  if (!(spec.wavelength > 0.0)) {
    throw DomainError("design wavelength must be positive");
  }
  const MaterialModel m1 = ConstantIndex{spec.n1 * spec.n1, 1.0};
  const MaterialModel m2 = ConstantIndex{spec.n2 * spec.n2, 1.0};
  if (spec.n_type2 == 0) {
    return StackExpr::interface(m1, m1);  // uniform medium 1
  }
  std::vector<StackExpr> parts;
  parts.reserve(static_cast<std::size_t>(4 * spec.n_type2));
  for (int i = 0; i < spec.n_type2; ++i) {
    if (i > 0) parts.push_back(StackExpr::slab(m1, spec.d1()));
    parts.push_back(StackExpr::interface(m1, m2));
    parts.push_back(StackExpr::slab(m2, spec.d2()));
    parts.push_back(StackExpr::interface(m2, m1));
  }
  return StackExpr::sequence(std::move(parts));
}

double bragg_direct(const BraggSpec& spec, const EvalOptions& opts) {
  const double omega = 2.0 * kPi * kSpeedOfLight / spec.wavelength;
  const TransverseMode mode{Polarization::s, 0.0, Frequency::real(omega)};
  const FresnelSet fs = evaluate(bragg_stack(spec), mode, opts);
  return fs.r_fwd.real();
}

}  // namespace planarstack
