#pragma once

#include <functional>
#include <vector>

#include "planarstack/stack.hpp"

namespace planarstack {

// Controls for the imaginary-frequency mode sum.
struct QuadratureSettings {
  double rel_tolerance = 1e-8;    // requested relative accuracy
  double abs_floor = 1e-18;       // Pa; contributions below are noise
  int max_refinements = 12;       // tanh-sinh levels per axis
  double xi_cutoff_multiplier = 60.0;  // xi_cut = mult * c / (2 d_scale)
};

// A slab between two mirrors: mirror1 | gap d1 | slab | gap d2 |
// mirror2, everything immersed in the cavity medium. Each of the three
// stacks is declared as seen from the cavity (left medium = cavity
// medium); the slab must also end in the cavity medium and is read as
// symmetric (r_fwd = r_bwd, t_fwd = t_bwd), as required by the
// closed-form route.
struct CavityConfig {
  StackExpr mirror1;
  StackExpr mirror2;
  StackExpr slab;
  double d1 = 0.0;  // m
  double d2 = 0.0;  // m; may be +inf to drop mirror 2 (two-body limit)
  MaterialModel cavity_medium = Vacuum{};
  QuadratureSettings quadrature = {};
};

void validate_cavity(const CavityConfig& config);

// Reflection coefficient of a slab dressed by multiple reflections
// against a mirror R at distance d behind it:
//   r + t^2 R e^{-2 kappa d} / (1 - r R e^{-2 kappa d}).
Complex dressed_reflection(Complex r, Complex t, Complex R, double d,
                           double kappa);

struct ModeSumResult {
  double value = 0.0;           // Pa
  double error_estimate = 0.0;  // Pa
  long outer_evaluations = 0;   // xi nodes
  long inner_evaluations = 0;   // kappa nodes (total)
};

// Zero-temperature mode sum
//   (hbar / 2 pi^2) Int_0^inf dxi Sum_q Int_{kappa0}^{kappa_max} dkappa
//     kappa^2 f(xi, kappa, q),
// the k integral having been folded into kappa in [n_c xi / c, inf)
// via k dk = kappa dkappa. The kappa axis is truncated where
// exp(-2 kappa d) is negligible for the given decay scale d (smallest
// gap of the configuration); the xi axis is cut per the settings and
// extended if the integrand is still above the absolute floor there.
// Both axes use tanh-sinh quadrature and never evaluate the xi = 0
// endpoint.
ModeSumResult integrate_mode_sum(
    const std::function<double(double xi, double kappa, Polarization q)>&
        integrand,
    const MaterialModel& cavity_medium, double decay_scale,
    const QuadratureSettings& settings);

// Truncation bounds shared by the quadrature and by grid exporters.
double casimir_xi_cutoff(double decay_scale, const QuadratureSettings&);
double casimir_kappa_extent(double decay_scale);

// zz component of the vacuum-field stress tensor in cavity region 1 or
// 2. Positive for passive media.
ModeSumResult stress_zz(int region, const CavityConfig& config);

// F = stress_zz(2) - stress_zz(1); F > 0 pushes the slab toward mirror
// 2 (the z axis increases from mirror 1 to mirror 2).
ModeSumResult force_direct(const CavityConfig& config);

// Same force from the single closed-form integrand
//   r (R2 e^{-2 kappa d2} - R1 e^{-2 kappa d1}) / N,
//   N = (1 - r R1 e1)(1 - r R2 e2) - t^2 R1 R2 e1 e2.
ModeSumResult force_closed(const CavityConfig& config);

// d2 -> inf limit: the force per unit area between a mirror and a
// body across a gap d. Negative values mean attraction.
ModeSumResult two_body_force(const StackExpr& mirror, const StackExpr& body,
                             double d, const MaterialModel& cavity_medium,
                             const QuadratureSettings& settings = {});

// Sampling grid covering every (xi, k) the mode sum can touch for the
// given decay scale, for exporting stack coefficients to tables: n_xi
// log-spaced frequencies (plus a near-zero guard row) by n_k
// power-clustered wavenumbers.
struct ImaginaryAxisGrid {
  std::vector<double> xi;
  std::vector<double> k;
};
ImaginaryAxisGrid casimir_sampling_grid(const MaterialModel& cavity_medium,
                                        double decay_scale,
                                        const QuadratureSettings& settings,
                                        std::size_t n_xi, std::size_t n_k);

}  // namespace planarstack
