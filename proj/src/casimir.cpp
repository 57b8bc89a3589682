#include "planarstack/casimir.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "planarstack/constants.hpp"
#include "planarstack/errors.hpp"

namespace planarstack {

namespace {

// exp(-2 kappa d) tail kept down to e^{-50} of the integrand scale.
constexpr double kKappaTailExponent = 50.0;

double guarded_exp_neg(double x) {
  return x > 745.0 ? 0.0 : std::exp(-x);
}

double cavity_index(const MaterialModel& medium, double xi) {
  return std::sqrt(eps_imag(medium, xi) * mu_imag(medium, xi));
}

}  // namespace

double casimir_xi_cutoff(double decay_scale, const QuadratureSettings& s) {
  return s.xi_cutoff_multiplier * kSpeedOfLight / (2.0 * decay_scale);
}

double casimir_kappa_extent(double decay_scale) {
  return kKappaTailExponent / (2.0 * decay_scale);
}

Complex dressed_reflection(Complex r, Complex t, Complex R, double d,
                           double kappa) {
  if (!(kappa > 0.0)) throw DomainError("dressed_reflection: kappa must be > 0");
  if (!(d > 0.0)) throw DomainError("dressed_reflection: d must be > 0");
  const double e = guarded_exp_neg(2.0 * kappa * d);
  const Complex den = 1.0 - r * R * e;
  if (std::abs(den) == 0.0) {
    throw EvaluationError(
        "dressed reflection denominator vanished (non-passive input data)");
  }
  return r + t * t * R * e / den;
}

ModeSumResult integrate_mode_sum(
    const std::function<double(double, double, Polarization)>& integrand,
    const MaterialModel& cavity_medium, double decay_scale,
    const QuadratureSettings& settings) {
  if (!(decay_scale > 0.0)) {
    throw DomainError("mode sum needs a positive decay scale");
  }
  if (!(settings.rel_tolerance > 0.0) || !(settings.rel_tolerance < 1.0)) {
    throw DomainError("quadrature tolerance must lie in (0, 1)");
  }

  using boost::math::quadrature::tanh_sinh;
  const double prefactor = kHbar / (2.0 * kPi * kPi);
  const double kappa_extent = casimir_kappa_extent(decay_scale);
  const double inner_tol = 0.1 * settings.rel_tolerance;

  ModeSumResult result;
  tanh_sinh<double> inner(static_cast<std::size_t>(settings.max_refinements));
  tanh_sinh<double> outer(static_cast<std::size_t>(settings.max_refinements));

  auto xi_slice = [&](double xi) {
    ++result.outer_evaluations;
    const double kappa0 = cavity_index(cavity_medium, xi) * xi / kSpeedOfLight;
    const double kappa_max = kappa0 + kappa_extent;
    double slice = 0.0;
    for (Polarization q : {Polarization::p, Polarization::s}) {
      auto g = [&](double kappa) {
        ++result.inner_evaluations;
        return kappa * kappa * integrand(xi, kappa, q);
      };
      double err = 0.0;
      slice += inner.integrate(g, kappa0, kappa_max, inner_tol, &err);
    }
    return slice;
  };

  double xi_cut = casimir_xi_cutoff(decay_scale, settings);
  double outer_err = 0.0;
  double level_one_norm = 0.0;
  std::size_t levels = 0;
  double integral;
  try {
    // Extend the cutoff while the integrand is still above the floor
    // there (it never is at the default multiplier).
    for (int i = 0; i < 4; ++i) {
      if (prefactor * std::abs(xi_slice(xi_cut)) * xi_cut <=
          settings.abs_floor) {
        break;
      }
      xi_cut *= 2.0;
    }
    integral = outer.integrate(xi_slice, 0.0, xi_cut, settings.rel_tolerance,
                               &outer_err, &level_one_norm, &levels);
  } catch (const Error&) {
    throw;  // passivity/domain problems from the integrand
  } catch (const std::exception& e) {
    throw ConvergenceError(std::string("mode-sum quadrature failed: ") +
                               e.what(),
                           0.0, std::numeric_limits<double>::infinity(),
                           result.outer_evaluations, result.inner_evaluations);
  }

  result.value = prefactor * integral;
  result.error_estimate = prefactor * outer_err;
  // The error is absolute; convergence is judged against the L1 norm of
  // the integrand (the value itself may be a small difference of large
  // contributions, e.g. in a nearly symmetric cavity).
  const double bound =
      10.0 * settings.rel_tolerance * prefactor * level_one_norm +
      settings.abs_floor;
  if (!std::isfinite(result.value) || result.error_estimate > bound) {
    throw ConvergenceError(
        "mode-sum quadrature did not reach the requested tolerance (" +
            std::to_string(result.outer_evaluations) + " xi nodes, " +
            std::to_string(result.inner_evaluations) + " kappa nodes)",
        result.value, result.error_estimate, result.outer_evaluations,
        result.inner_evaluations);
  }
  return result;
}

namespace {

// Slab and mirror coefficients at one imaginary-axis mode. Everything
// is real there for passive inputs; real parts are taken so that
// tabulated data with rounding noise in the imaginary parts stays
// usable.
struct CavityCoefficients {
  double r1, r2;  // mirrors seen from the cavity
  double r, t;    // slab
};

class CavitySampler {
 public:
  explicit CavitySampler(const CavityConfig& config) : config_(config) {}

  CavityCoefficients at(double xi, double kappa, Polarization q) const {
    const double nc = cavity_index(config_.cavity_medium, xi);
    const double kappa0 = nc * xi / kSpeedOfLight;
    const double k =
        std::sqrt(std::max(0.0, (kappa - kappa0) * (kappa + kappa0)));
    const TransverseMode mode{q, k, Frequency::imaginary(xi)};
    CavityCoefficients c;
    const FresnelSet slab = evaluate(config_.slab, mode);
    c.r = slab.r_fwd.real();
    c.t = slab.t_fwd.real();
    c.r1 = evaluate(config_.mirror1, mode).r_fwd.real();
    c.r2 = std::isinf(config_.d2)
               ? 0.0
               : evaluate(config_.mirror2, mode).r_fwd.real();
    return c;
  }

 private:
  const CavityConfig& config_;
};

// 1 - rho e^{-y}, kept accurate when rho -> 1 and y -> 0 at the same
// time (the xi -> 0, kappa -> kappa0 corner of the mode sum, where
// e^{-y} rounds to 1).
double one_minus_product(double rho, double y) {
  return -std::expm1(-y) + (1.0 - rho) * guarded_exp_neg(y);
}

// x / (1 - x) for the round-trip factor x = rho e^{-y}. Passive inputs
// keep the denominator positive; the kappa^2 weight tames the
// divergence of the ratio at the corner.
double loop_fraction(double rho, double y) {
  const double den = one_minus_product(rho, y);
  if (!(den > 0.0)) {
    throw EvaluationError(
        "round-trip reflection product reached 1; input data are not "
        "passive");
  }
  return rho * guarded_exp_neg(y) / den;
}

}  // namespace

void validate_cavity(const CavityConfig& config) {
  if (!(config.d1 > 0.0)) throw DomainError("cavity gap d1 must be positive");
  if (!(config.d2 > 0.0)) throw DomainError("cavity gap d2 must be positive");
  if (!(config.mirror1.left_medium() == config.cavity_medium) ||
      !(config.slab.left_medium() == config.cavity_medium)) {
    throw ChainMismatchError(
        "cavity stacks must face the cavity medium on their left side");
  }
  // With mirror 2 removed the body may be half-infinite; otherwise the
  // slab must return to the cavity medium on its right.
  if (!std::isinf(config.d2) &&
      (!(config.mirror2.left_medium() == config.cavity_medium) ||
       !(config.slab.right_medium() == config.cavity_medium))) {
    throw ChainMismatchError(
        "finite cavities need mirror 2 and the slab's right side to face "
        "the cavity medium");
  }
  if (is_ideal_mirror(config.cavity_medium)) {
    throw DomainError("cavity medium cannot be an ideal mirror");
  }
}

ModeSumResult stress_zz(int region, const CavityConfig& config) {
  if (region != 1 && region != 2) {
    throw DomainError("cavity region must be 1 or 2");
  }
  validate_cavity(config);
  if (region == 2 && std::isinf(config.d2)) {
    return {};  // no modes survive an infinite gap
  }
  const CavitySampler sampler(config);
  const double d_here = (region == 1) ? config.d1 : config.d2;
  const double d_other = (region == 1) ? config.d2 : config.d1;

  auto integrand = [&](double xi, double kappa, Polarization q) {
    const double y_here = 2.0 * kappa * d_here;
    if (y_here > 745.0) return 0.0;
    // Deep corner guard: see force_closed. Rounding can push the
    // dressed reflection just past 1 when every exponential is 1.
    if (y_here + 2.0 * kappa * d_other < 1e-10) return 0.0;
    const CavityCoefficients c = sampler.at(xi, kappa, q);
    const double r_far = (region == 1) ? c.r2 : c.r1;
    const double r_near = (region == 1) ? c.r1 : c.r2;
    const double dressed =
        dressed_reflection(c.r, c.t, r_far, d_other, kappa).real();
    return loop_fraction(r_near * dressed, y_here);
  };
  return integrate_mode_sum(integrand, config.cavity_medium, d_here,
                            config.quadrature);
}

ModeSumResult force_direct(const CavityConfig& config) {
  const ModeSumResult t2 = stress_zz(2, config);
  const ModeSumResult t1 = stress_zz(1, config);
  return {t2.value - t1.value, t2.error_estimate + t1.error_estimate,
          t2.outer_evaluations + t1.outer_evaluations,
          t2.inner_evaluations + t1.inner_evaluations};
}

ModeSumResult force_closed(const CavityConfig& config) {
  validate_cavity(config);
  if (std::isinf(config.d2)) {
    // The R2 terms drop out and the integrand reduces to the two-body
    // one with mirror 1 across the gap d1.
    return two_body_force(config.mirror1, config.slab, config.d1,
                          config.cavity_medium, config.quadrature);
  }
  const CavitySampler sampler(config);

  auto integrand = [&](double xi, double kappa, Polarization q) {
    const double y1 = 2.0 * kappa * config.d1;
    const double y2 = 2.0 * kappa * config.d2;
    // Deep xi -> 0 corner: every round-trip exponential rounds to 1 and
    // N cancels below double precision, while the kappa^2 weight makes
    // the contribution negligible (< 1e-20 of the integral).
    if (y1 + y2 < 1e-10) return 0.0;
    const double e1 = guarded_exp_neg(y1);
    const double e2 = guarded_exp_neg(y2);
    if (e1 == 0.0 && e2 == 0.0) return 0.0;
    const CavityCoefficients c = sampler.at(xi, kappa, q);
    const double num = c.r * (c.r2 * e2 - c.r1 * e1);
    if (num == 0.0) return 0.0;
    const double den =
        one_minus_product(c.r * c.r1, y1) * one_minus_product(c.r * c.r2, y2) -
        c.t * c.t * c.r1 * c.r2 * e1 * e2;
    if (!(den > 0.0)) {
      throw EvaluationError(
          "closed-form denominator N <= 0; input data are not passive");
    }
    return num / den;
  };
  return integrate_mode_sum(integrand, config.cavity_medium,
                            std::min(config.d1, config.d2),
                            config.quadrature);
}

ModeSumResult two_body_force(const StackExpr& mirror, const StackExpr& body,
                             double d, const MaterialModel& cavity_medium,
                             const QuadratureSettings& settings) {
  if (!(d > 0.0)) throw DomainError("two-body gap must be positive");
  auto integrand = [&](double xi, double kappa, Polarization q) {
    const double y = 2.0 * kappa * d;
    if (y > 745.0) return 0.0;
    const double nc = cavity_index(cavity_medium, xi);
    const double kappa0 = nc * xi / kSpeedOfLight;
    const double k =
        std::sqrt(std::max(0.0, (kappa - kappa0) * (kappa + kappa0)));
    const TransverseMode mode{q, k, Frequency::imaginary(xi)};
    const double rm = evaluate(mirror, mode).r_fwd.real();
    const double rb = evaluate(body, mode).r_fwd.real();
    return -loop_fraction(rm * rb, y);
  };
  return integrate_mode_sum(integrand, cavity_medium, d, settings);
}

ImaginaryAxisGrid casimir_sampling_grid(const MaterialModel& cavity_medium,
                                        double decay_scale,
                                        const QuadratureSettings& settings,
                                        std::size_t n_xi, std::size_t n_k) {
  if (n_xi < 3 || n_k < 2) {
    throw DomainError("sampling grid needs at least 3 x 2 points");
  }
  const double xi_cut = casimir_xi_cutoff(decay_scale, settings);
  ImaginaryAxisGrid grid;

  // Guard row near zero so the deep endpoint nodes of the tanh-sinh
  // rule stay inside the table, then log spacing over the decades that
  // carry the integrand's mass.
  constexpr double kLowDecades = 5.0;
  grid.xi.reserve(n_xi);
  grid.xi.push_back(1e-300);
  const double lo = std::log10(xi_cut) - kLowDecades;
  const double hi = std::log10(xi_cut);
  for (std::size_t i = 0; i + 1 < n_xi; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n_xi - 2);
    grid.xi.push_back(std::pow(10.0, lo + t * (hi - lo)));
  }
  grid.xi.back() = xi_cut;

  // k up to the largest value reachable at the cutoff, clustered toward
  // k = 0 where the coefficients vary fastest.
  const double kappa0_max =
      cavity_index(cavity_medium, xi_cut) * xi_cut / kSpeedOfLight;
  const double kappa_max = kappa0_max + casimir_kappa_extent(decay_scale);
  const double k_max =
      std::sqrt((kappa_max - kappa0_max) * (kappa_max + kappa0_max));
  grid.k.reserve(n_k);
  for (std::size_t j = 0; j < n_k; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(n_k - 1);
    grid.k.push_back(k_max * std::pow(t, 1.5));
  }
  grid.k.front() = 0.0;
  grid.k.back() = k_max;
  return grid;
}

}  // namespace planarstack
