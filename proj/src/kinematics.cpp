#include "planarstack/kinematics.hpp"

#include <cmath>

#include "planarstack/constants.hpp"
#include "planarstack/errors.hpp"

namespace planarstack {

Frequency Frequency::real(double omega) {
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  return Frequency(false, omega);
}

Frequency Frequency::imaginary(double xi) {
  if (!(xi > 0.0)) throw DomainError("xi must be positive");
  return Frequency(true, xi);
}

Complex beta(Complex n, double omega, double k) {
  if (k < 0.0) throw DomainError("k must be >= 0");
  const Complex kl = n * (omega / kSpeedOfLight);
  return sqrt_upper_half(kl * kl - k * k);
}

double kappa(double n, double xi, double k) {
  if (!(n >= 1.0)) throw DomainError("kappa requires n_c(i xi) >= 1");
  if (!(xi > 0.0)) throw DomainError("xi must be positive");
  if (k < 0.0) throw DomainError("k must be >= 0");
  return std::hypot(n * xi / kSpeedOfLight, k);
}

LayerWave layer_wave(const MaterialModel& m, const TransverseMode& mode) {
  LayerWave w;
  if (mode.freq.is_imaginary()) {
    const double xi = mode.freq.value();
    const double e = eps_imag(m, xi);
    const double u = mu_imag(m, xi);
    const double n = std::sqrt(e * u);
    w.eps = e;
    w.mu = u;
    w.n = n;
    w.k_layer = n * xi / kSpeedOfLight;
    // kappa directly; n may dip below 1 for exotic constants, so avoid
    // the >= 1 precondition of the public kappa().
    w.perp = std::hypot(n * xi / kSpeedOfLight, mode.k);
  } else {
    const double omega = mode.freq.value();
    w.eps = eps_real(m, omega);
    w.mu = mu_real(m, omega);
    w.n = refractive_index(w.eps, w.mu);
    w.k_layer = w.n * (omega / kSpeedOfLight);
    w.perp = beta(w.n, omega, mode.k);
  }
  return w;
}

Complex propagation_phase(const LayerWave& wave, const TransverseMode& mode,
                          double d) {
  if (d < 0.0) throw DomainError("layer thickness must be >= 0");
  if (mode.freq.is_imaginary()) {
    const double x = wave.perp.real() * d;
    return Complex(x > 745.0 ? 0.0 : std::exp(-x), 0.0);
  }
  return std::exp(Complex(0.0, 1.0) * wave.perp * d);
}

std::array<Complex, 3> polarization_vector(const TransverseMode& mode,
                                           Complex beta_l, Complex k_l,
                                           Direction dir) {
  if (mode.freq.is_imaginary()) {
    throw EvaluationError("polarization vectors are defined at real frequency");
  }
  if (k_l == Complex(0.0, 0.0)) {
    throw EvaluationError("degenerate mode: layer wavenumber k_l = 0");
  }
  if (mode.q == Polarization::s) {
    // k_hat x z_hat = -y_hat, independent of layer and direction
    return {Complex(0.0), Complex(-1.0), Complex(0.0)};
  }
  const double sign = (dir == Direction::up) ? -1.0 : 1.0;
  return {sign * beta_l / k_l, Complex(0.0), mode.k / k_l};
}

double poynting_z(const TransverseMode& mode, Complex eps, Complex mu,
                  Complex amplitude, double z, Direction dir) {
  if (mode.freq.is_imaginary()) {
    throw EvaluationError("energy flux is defined at real frequency");
  }
  const double omega = mode.freq.value();
  const Complex n = refractive_index(eps, mu);
  const Complex k_l = n * (omega / kSpeedOfLight);
  if (k_l == Complex(0.0, 0.0)) {
    throw EvaluationError("degenerate mode: layer wavenumber k_l = 0");
  }
  const Complex b = beta(n, omega, mode.k);
  const Complex eta = (mode.q == Polarization::p) ? std::conj(eps / mu)
                                                  : eps / mu;
  const double sign = (dir == Direction::up) ? 1.0 : -1.0;
  const Complex field =
      amplitude * std::exp(Complex(0.0, 1.0) * (sign * b) * z);
  const double pref =
      0.5 * std::sqrt(kVacuumPermittivity / kVacuumPermeability);
  return pref * (sign * (std::sqrt(eta) * b / k_l).real()) * std::norm(field);
}

TransmittancePair transmittance(Complex t_fwd, Complex t_bwd, Complex mu_j,
                                Complex beta_j, Complex mu_m, Complex beta_m) {
  auto transparent = [](Complex v) {
    return std::abs(v.imag()) <= 1e-12 * std::abs(v) && v.real() > 0.0;
  };
  if (!transparent(mu_j) || !transparent(mu_m) || !transparent(beta_j) ||
      !transparent(beta_m)) {
    throw UndefinedTransmittanceError(
        "transmittance requires transparent outer media and propagating "
        "outer waves");
  }
  const double ratio = (mu_j.real() * beta_m.real()) /
                       (mu_m.real() * beta_j.real());
  return {ratio * std::norm(t_fwd), std::norm(t_bwd) / ratio};
}

}  // namespace planarstack
