#include "planarstack/materials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "planarstack/errors.hpp"

namespace planarstack {

namespace {

// Largest value eps_imag will report. Drude/Lorentz responses diverge
// like 1/xi as xi -> 0; clamping keeps downstream kappa arithmetic
// finite when a quadrature probes xi near the underflow threshold.
constexpr double kEpsCeiling = 1e300;

void require_positive(double value, const char* name) {
  if (!(value > 0.0)) {
    throw DomainError(std::string(name) + " must be positive");
  }
}

}  // namespace

struct TabulatedImaginary::Data {
  std::vector<double> log_xi;
  std::vector<double> log_eps_m1;  // log(eps - 1), clamped away from -inf
  friend bool operator==(const Data& a, const Data& b) {
    return a.log_xi == b.log_xi && a.log_eps_m1 == b.log_eps_m1;
  }
};

TabulatedImaginary::TabulatedImaginary(std::vector<double> xi,
                                       std::vector<double> eps) {
  if (xi.size() != eps.size() || xi.size() < 2) {
    throw DomainError("tabulated dispersion needs >= 2 matched samples");
  }
  auto data = std::make_shared<Data>();
  data->log_xi.reserve(xi.size());
  data->log_eps_m1.reserve(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (!(xi[i] > 0.0)) {
      throw DomainError("tabulated xi values must be positive");
    }
    if (i > 0 && !(xi[i] > xi[i - 1])) {
      throw DomainError("tabulated xi values must be strictly increasing");
    }
    if (!(eps[i] >= 1.0)) {
      throw DomainError("tabulated eps(i xi) must be >= 1");
    }
    data->log_xi.push_back(std::log(xi[i]));
    data->log_eps_m1.push_back(std::log(std::max(eps[i] - 1.0, 1e-300)));
  }
  data_ = std::move(data);
}

double TabulatedImaginary::eps_at(double xi) const {
  const auto& lx = data_->log_xi;
  const auto& ly = data_->log_eps_m1;
  const double t = std::log(xi);
  if (t <= lx.front()) return 1.0 + std::exp(ly.front());
  if (t >= lx.back()) return 1.0 + std::exp(ly.back());
  const auto it = std::upper_bound(lx.begin(), lx.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - lx.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - lx[lo]) / (lx[hi] - lx[lo]);
  return 1.0 + std::exp(ly[lo] + w * (ly[hi] - ly[lo]));
}

double TabulatedImaginary::xi_min() const {
  return std::exp(data_->log_xi.front());
}

double TabulatedImaginary::xi_max() const {
  return std::exp(data_->log_xi.back());
}

bool is_ideal_mirror(const MaterialModel& m) {
  return std::holds_alternative<IdealMirror>(m);
}

Complex eps_real(const MaterialModel& m, double omega) {
  require_positive(omega, "omega");
  return std::visit(
      [omega](const auto& model) -> Complex {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, Vacuum>) {
          return {1.0, 0.0};
        } else if constexpr (std::is_same_v<T, ConstantIndex>) {
          return model.eps;
        } else if constexpr (std::is_same_v<T, DrudeMetal>) {
          const double wp2 = model.omega_p * model.omega_p;
          return 1.0 - wp2 / (omega * omega + Complex(0.0, model.gamma * omega));
        } else if constexpr (std::is_same_v<T, LorentzOscillator>) {
          const double wp2 = model.omega_p * model.omega_p;
          const Complex den(model.omega_0 * model.omega_0 - omega * omega,
                            -model.gamma * omega);
          return 1.0 + wp2 / den;
        } else if constexpr (std::is_same_v<T, IdealMirror>) {
          throw EvaluationError("ideal mirror has no finite permittivity");
        } else {
          static_assert(std::is_same_v<T, TabulatedImaginary>);
          throw EvaluationError(
              "tabulated imaginary-axis dispersion cannot be evaluated at "
              "real frequency");
        }
      },
      m);
}

Complex mu_real(const MaterialModel& m, double omega) {
  require_positive(omega, "omega");
  if (is_ideal_mirror(m)) {
    throw EvaluationError("ideal mirror has no finite permeability");
  }
  if (const auto* c = std::get_if<ConstantIndex>(&m)) return c->mu;
  return {1.0, 0.0};
}

double eps_imag(const MaterialModel& m, double xi) {
  require_positive(xi, "xi");
  return std::visit(
      [xi](const auto& model) -> double {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, Vacuum>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, ConstantIndex>) {
          if (model.eps.imag() != 0.0) {
            throw EvaluationError(
                "complex constant permittivity has no imaginary-axis value");
          }
          return model.eps.real();
        } else if constexpr (std::is_same_v<T, DrudeMetal>) {
          const double wp2 = model.omega_p * model.omega_p;
          return std::min(1.0 + wp2 / (xi * xi + model.gamma * xi),
                          kEpsCeiling);
        } else if constexpr (std::is_same_v<T, LorentzOscillator>) {
          const double wp2 = model.omega_p * model.omega_p;
          return 1.0 + wp2 / (model.omega_0 * model.omega_0 + xi * xi +
                              model.gamma * xi);
        } else if constexpr (std::is_same_v<T, IdealMirror>) {
          throw EvaluationError("ideal mirror has no finite permittivity");
        } else {
          static_assert(std::is_same_v<T, TabulatedImaginary>);
          return model.eps_at(xi);
        }
      },
      m);
}

double mu_imag(const MaterialModel& m, double xi) {
  require_positive(xi, "xi");
  if (is_ideal_mirror(m)) {
    throw EvaluationError("ideal mirror has no finite permeability");
  }
  if (const auto* c = std::get_if<ConstantIndex>(&m)) {
    if (c->mu.imag() != 0.0) {
      throw EvaluationError(
          "complex constant permeability has no imaginary-axis value");
    }
    return c->mu.real();
  }
  return 1.0;
}

Complex sqrt_upper_half(Complex z) {
  Complex s = std::sqrt(z);  // principal branch, Re s >= 0
  if (s.imag() < 0.0) {
    s = -s;
  } else if (s.imag() == 0.0 && s.real() < 0.0) {
    s = -s;
  }
  return s;
}

Complex refractive_index(Complex eps, Complex mu) {
  if (eps == Complex(0.0, 0.0) && mu == Complex(0.0, 0.0)) {
    throw DomainError("refractive index of eps = mu = 0 is undefined");
  }
  return sqrt_upper_half(eps * mu);
}

TabulatedImaginary parse_eps_table_csv(std::istream& in,
                                       const std::string& name) {
  std::vector<double> xi;
  std::vector<double> eps;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line;
    if (auto pos = trimmed.find('#'); pos != std::string::npos) {
      trimmed.erase(pos);
    }
    if (trimmed.find_first_not_of(" \t\r,") == std::string::npos) continue;
    std::replace(trimmed.begin(), trimmed.end(), ',', ' ');
    std::istringstream row(trimmed);
    double x, e;
    if (!(row >> x >> e)) {
      if (lineno == 1) continue;  // optional header
      throw ParseError(name + ": expected two numeric columns", lineno);
    }
    xi.push_back(x);
    eps.push_back(e);
  }
  try {
    return TabulatedImaginary(std::move(xi), std::move(eps));
  } catch (const DomainError& err) {
    throw ParseError(name + ": " + err.what(), lineno);
  }
}

TabulatedImaginary load_eps_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open dispersion table '" + path + "'", 0);
  }
  return parse_eps_table_csv(in, path);
}

}  // namespace planarstack
