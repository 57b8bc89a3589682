#pragma once

#include <array>
#include <complex>

#include "planarstack/materials.hpp"

namespace planarstack {

enum class Polarization { p, s };

// A frequency point: either a real frequency omega or a point i*xi on
// the positive imaginary axis.
class Frequency {
 public:
  static Frequency real(double omega);
  static Frequency imaginary(double xi);

  bool is_imaginary() const { return imaginary_; }
  double value() const { return value_; }  // omega or xi, rad/s

  friend bool operator==(const Frequency& a, const Frequency& b) {
    return a.imaginary_ == b.imaginary_ && a.value_ == b.value_;
  }

 private:
  Frequency(bool imaginary, double value)
      : imaginary_(imaginary), value_(value) {}
  bool imaginary_;
  double value_;
};

// One transverse mode: polarization, parallel wavenumber k >= 0, and a
// frequency point.
struct TransverseMode {
  Polarization q = Polarization::s;
  double k = 0.0;  // 1/m
  Frequency freq = Frequency::real(1.0);
};

// Perpendicular wavenumber at real frequency:
// beta = sqrt(n^2 w^2/c^2 - k^2), branch Im beta >= 0 (Re >= 0 on ties),
// so e^{i beta d} never grows in a passive layer.
Complex beta(Complex n, double omega, double k);

// Perpendicular wavenumber on the imaginary axis:
// kappa = sqrt(n^2 xi^2/c^2 + k^2), real and positive. Imaginary-axis
// kinematics are exposed only through this real quantity; no complex
// beta is constructed there.
double kappa(double n, double xi, double k);

// Per-layer response at a mode: material constants plus the
// perpendicular wavenumber that enters the Fresnel formulas (beta on
// the real axis, kappa on the imaginary axis, stored with zero
// imaginary part so that imaginary-axis results stay exactly real).
struct LayerWave {
  Complex eps;
  Complex mu;
  Complex n;        // refractive index (real-valued on the imaginary axis)
  Complex k_layer;  // k_l = n w/c (real axis); n xi/c (imaginary axis)
  Complex perp;     // beta (real axis) or kappa (imaginary axis)
};

LayerWave layer_wave(const MaterialModel& m, const TransverseMode& mode);

// One-pass propagation factor across thickness d of the layer:
// e^{i beta d} on the real axis, e^{-kappa d} on the imaginary axis.
Complex propagation_phase(const LayerWave& wave, const TransverseMode& mode,
                          double d);

enum class Direction { up, down };  // up = +z

// Unit polarization vectors in the (k_hat, y_hat, z_hat) basis:
//   p: (-+ beta k_hat + k z_hat)/k_l,  s: k_hat x z_hat = -y_hat.
// Real-frequency modes only. Not renormalized when k_l is complex.
std::array<Complex, 3> polarization_vector(const TransverseMode& mode,
                                           Complex beta_l, Complex k_l,
                                           Direction dir);

// z-component of the Poynting vector of the upward/downward wave at
// height z inside a layer, for field amplitude E at the layer origin.
// SI prefactor sqrt(eps0/mu0)/2; W/m^2.
double poynting_z(const TransverseMode& mode, Complex eps, Complex mu,
                  Complex amplitude, double z, Direction dir);

struct TransmittancePair {
  double fwd;  // flux ratio for incidence from the left medium
  double bwd;  // flux ratio for incidence from the right medium
};

// Energy transmittances of a stack between transparent outer media j
// (left) and m (right): T_fwd = (mu_j beta_m)/(mu_m beta_j) |t_fwd|^2
// and the index-swapped T_bwd. Throws UndefinedTransmittanceError when
// either outer medium is lossy or the mode is evanescent there.
TransmittancePair transmittance(Complex t_fwd, Complex t_bwd, Complex mu_j,
                                Complex beta_j, Complex mu_m, Complex beta_m);

}  // namespace planarstack
