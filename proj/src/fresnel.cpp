#include "planarstack/fresnel.hpp"

#include <cmath>

#include "planarstack/errors.hpp"

namespace planarstack {

Complex a_value(const FresnelSet& fs) {
  return fs.t_fwd * fs.t_bwd - fs.r_fwd * fs.r_bwd;
}

FresnelSet identity_set(const MaterialModel& m) {
  return {Complex(0.0), Complex(0.0), Complex(1.0), Complex(1.0), m, m};
}

FresnelSet interface_coeffs(const MaterialModel& j, const MaterialModel& k,
                            const TransverseMode& mode) {
  const bool mirror_j = is_ideal_mirror(j);
  const bool mirror_k = is_ideal_mirror(k);
  if (mirror_j && mirror_k) {
    throw EvaluationError("interface between two ideal mirrors is undefined");
  }
  if (mirror_j || mirror_k) {
    // eps -> inf limit of the standard formulas: the wall reflects with
    // r_p = +1, r_s = -1 seen from the material side and transmits
    // nothing. The coefficient seen from inside the wall follows from
    // r_kj = -r_jk.
    const double r_seen = (mode.q == Polarization::p) ? 1.0 : -1.0;
    FresnelSet fs;
    fs.left = j;
    fs.right = k;
    fs.t_fwd = fs.t_bwd = Complex(0.0);
    fs.r_fwd = mirror_k ? r_seen : -r_seen;
    fs.r_bwd = -fs.r_fwd;
    return fs;
  }

  const LayerWave wj = layer_wave(j, mode);
  const LayerWave wk = layer_wave(k, mode);
  const Complex gamma = (mode.q == Polarization::p) ? wj.eps / wk.eps
                                                    : wj.mu / wk.mu;
  const Complex gamma_s = wj.mu / wk.mu;
  const Complex den = wj.perp + gamma * wk.perp;
  if (den == Complex(0.0, 0.0)) {
    throw DegenerateInterfaceError(
        "interface denominator beta_j + gamma beta_k vanished");
  }
  FresnelSet fs;
  fs.left = j;
  fs.right = k;
  fs.r_fwd = (wj.perp - gamma * wk.perp) / den;
  fs.r_bwd = -fs.r_fwd;
  // Principal branch of sqrt(gamma/gamma_s); for p this is
  // sqrt(eps_j mu_k / (eps_k mu_j)), for s it is 1.
  fs.t_fwd = std::sqrt(gamma / gamma_s) * (1.0 + fs.r_fwd);
  fs.t_bwd = fs.t_fwd * (wj.mu * wk.perp) / (wk.mu * wj.perp);
  if (!std::isfinite(fs.t_bwd.real()) || !std::isfinite(fs.t_bwd.imag())) {
    throw DegenerateInterfaceError(
        "backward transmission undefined: perpendicular wavenumber vanished");
  }
  return fs;
}

TransmittancePair stack_transmittance(const FresnelSet& fs,
                                      const TransverseMode& mode) {
  if (is_ideal_mirror(fs.left) || is_ideal_mirror(fs.right)) {
    throw UndefinedTransmittanceError(
        "transmittance undefined with an ideal-mirror boundary");
  }
  const LayerWave wl = layer_wave(fs.left, mode);
  const LayerWave wr = layer_wave(fs.right, mode);
  return transmittance(fs.t_fwd, fs.t_bwd, wl.mu, wl.perp, wr.mu, wr.perp);
}

}  // namespace planarstack
