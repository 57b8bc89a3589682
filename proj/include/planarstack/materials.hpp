#pragma once

#include <complex>
#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace planarstack {

using Complex = std::complex<double>;

// Dispersion models. Frequencies are rad/s; epsilon and mu are relative
// (dimensionless). Every model can be evaluated on the real axis
// (eps_real / mu_real) and, except for complex constants, on the
// imaginary axis (eps_imag / mu_imag), where passive response functions
// are real.

struct Vacuum {
  friend bool operator==(const Vacuum&, const Vacuum&) { return true; }
};

// Nondispersive medium. Passivity requires Im eps >= 0 and Im mu >= 0.
struct ConstantIndex {
  Complex eps{1.0, 0.0};
  Complex mu{1.0, 0.0};
  friend bool operator==(const ConstantIndex& a, const ConstantIndex& b) {
    return a.eps == b.eps && a.mu == b.mu;
  }
};

// eps(w) = 1 - wp^2/(w^2 + i g w),  eps(i xi) = 1 + wp^2/(xi^2 + g xi)
struct DrudeMetal {
  double omega_p = 0.0;
  double gamma = 0.0;
  friend bool operator==(const DrudeMetal& a, const DrudeMetal& b) {
    return a.omega_p == b.omega_p && a.gamma == b.gamma;
  }
};

// eps(w) = 1 + wp^2/(w0^2 - w^2 - i g w),
// eps(i xi) = 1 + wp^2/(w0^2 + xi^2 + g xi)
struct LorentzOscillator {
  double omega_0 = 0.0;
  double omega_p = 0.0;
  double gamma = 0.0;
  friend bool operator==(const LorentzOscillator& a,
                         const LorentzOscillator& b) {
    return a.omega_0 == b.omega_0 && a.omega_p == b.omega_p &&
           a.gamma == b.gamma;
  }
};

// Perfectly reflecting wall. A limit marker: it is never evaluated as a
// finite epsilon; the interface coefficients handle it directly.
struct IdealMirror {
  friend bool operator==(const IdealMirror&, const IdealMirror&) {
    return true;
  }
};

// eps(i xi) sampled on an ascending xi grid. Interpolates log(eps - 1)
// linearly in log xi, which keeps eps >= 1 and decays smoothly; outside
// the table the end values are held constant. Real-axis evaluation is
// unsupported.
class TabulatedImaginary {
 public:
  TabulatedImaginary(std::vector<double> xi, std::vector<double> eps);

  double eps_at(double xi) const;
  double xi_min() const;
  double xi_max() const;

  friend bool operator==(const TabulatedImaginary& a,
                         const TabulatedImaginary& b) {
    return a.data_ == b.data_;
  }

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

using MaterialModel = std::variant<Vacuum, ConstantIndex, DrudeMetal,
                                   LorentzOscillator, IdealMirror,
                                   TabulatedImaginary>;

bool is_ideal_mirror(const MaterialModel& m);

// Permittivity/permeability at real frequency w > 0.
Complex eps_real(const MaterialModel& m, double omega);
Complex mu_real(const MaterialModel& m, double omega);

// Permittivity/permeability on the imaginary axis, w = i xi, xi > 0.
// Real-valued for every passive model.
double eps_imag(const MaterialModel& m, double xi);
double mu_imag(const MaterialModel& m, double xi);

// n = sqrt(eps mu) on the branch Im n >= 0 (Re n >= 0 when Im n = 0).
Complex refractive_index(Complex eps, Complex mu);

// Complex square root on the same branch as refractive_index.
Complex sqrt_upper_half(Complex z);

// Loads a two-column CSV (xi_rad_s, eps) into a TabulatedImaginary.
// An optional non-numeric header line is skipped; rows must be sorted
// ascending in xi.
TabulatedImaginary load_eps_table_csv(const std::string& path);
TabulatedImaginary parse_eps_table_csv(std::istream& in,
                                       const std::string& name);

}  // namespace planarstack
