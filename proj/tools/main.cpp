// planarstack: generalized Fresnel coefficients of planar multilayers,
// Bragg mirror reflectivities, and zero-temperature Casimir forces.

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "cli_support.hpp"
#include "planarstack/bragg.hpp"
#include "planarstack/casimir.hpp"
#include "planarstack/constants.hpp"
#include "planarstack/document.hpp"
#include "planarstack/errors.hpp"

namespace ps = planarstack;
using namespace planarstack::cli;

namespace {

struct CommonOptions {
  std::string format = "csv";
  std::string output;  // empty = stdout
  int threads = 1;
  unsigned long long seed = 1;
  double tolerance = -1.0;  // command-specific default when < 0
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format: csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_option("-o,--output", opts.output, "Write the table here "
                  "instead of stdout");
  cmd->add_option("--threads", opts.threads, "Worker threads for sweeps")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts.seed, "Seed for random mode sampling");
  cmd->add_option("--tolerance", opts.tolerance,
                  "Identity threshold (validate) or quadrature relative "
                  "tolerance (casimir)");
}

class OutputStream {
 public:
  explicit OutputStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ps::Error("cannot write output file '" + path + "'");
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

double ambient_index(const ps::MaterialModel& m, double omega) {
  return ps::refractive_index(ps::eps_real(m, omega), ps::mu_real(m, omega))
      .real();
}

// ---------------------------------------------------------------- reflect

struct ReflectOptions {
  CommonOptions common;
  std::string stack_file;
  std::string sweep;
  double at_wavelength = 0.0;
  double at_frequency = 0.0;
  double angle_deg = 0.0;
  std::string pol = "avg";
};

int run_reflect(const ReflectOptions& opt) {
  const ps::StackDocument doc = ps::load_stack_document(opt.stack_file);
  const SweepSpec sweep = parse_sweep(
      opt.sweep, {"wavelength", "frequency", "angle", "k"});

  const bool needs_base = sweep.axis == "angle" || sweep.axis == "k";
  double base_omega = 0.0;
  if (needs_base) {
    if (opt.at_wavelength > 0.0) {
      base_omega = 2.0 * ps::kPi * ps::kSpeedOfLight / opt.at_wavelength;
    } else if (opt.at_frequency > 0.0) {
      base_omega = opt.at_frequency;
    } else {
      throw ps::ParseError(
          "angle and k sweeps need --at-wavelength or --at-frequency", 0);
    }
  }
  const ps::MaterialModel& ambient = doc.materials.at(doc.ambient_left);

  const std::vector<double> values = sweep.values();
  auto make_mode = [&](double v, ps::Polarization q) -> ps::TransverseMode {
    double omega = base_omega;
    double k = 0.0;
    if (sweep.axis == "wavelength") {
      omega = 2.0 * ps::kPi * ps::kSpeedOfLight / v;
    } else if (sweep.axis == "frequency") {
      omega = v;
    } else if (sweep.axis == "k") {
      k = v;
    }
    if (sweep.axis == "angle") {
      k = ambient_index(ambient, omega) * omega / ps::kSpeedOfLight *
          std::sin(v * ps::kPi / 180.0);
    } else if (opt.angle_deg != 0.0 && sweep.axis != "k") {
      k = ambient_index(ambient, omega) * omega / ps::kSpeedOfLight *
          std::sin(opt.angle_deg * ps::kPi / 180.0);
    }
    return {q, k, ps::Frequency::real(omega)};
  };

  auto row_of = [&](int i) -> std::vector<Cell> {
    const double v = values[static_cast<std::size_t>(i)];
    ps::FresnelSet sets[2];
    double power_r[2], power_t[2];
    const ps::Polarization order[2] = {ps::Polarization::p,
                                       ps::Polarization::s};
    for (int qi = 0; qi < 2; ++qi) {
      const ps::TransverseMode mode = make_mode(v, order[qi]);
      sets[qi] = ps::evaluate(doc.stack, mode);
      power_r[qi] = std::norm(sets[qi].r_fwd);
      try {
        power_t[qi] = ps::stack_transmittance(sets[qi], mode).fwd;
      } catch (const ps::UndefinedTransmittanceError&) {
        power_t[qi] = std::numeric_limits<double>::quiet_NaN();
      }
    }
    double R, T;
    if (opt.pol == "p") {
      R = power_r[0];
      T = power_t[0];
    } else if (opt.pol == "s") {
      R = power_r[1];
      T = power_t[1];
    } else {
      R = 0.5 * (power_r[0] + power_r[1]);
      T = 0.5 * (power_t[0] + power_t[1]);
    }
    return {v,
            sets[0].r_fwd.real(), sets[0].r_fwd.imag(),
            sets[0].t_fwd.real(), sets[0].t_fwd.imag(),
            sets[1].r_fwd.real(), sets[1].r_fwd.imag(),
            sets[1].t_fwd.real(), sets[1].t_fwd.imag(),
            R, T};
  };

  const auto rows = parallel_rows(static_cast<int>(values.size()),
                                  opt.common.threads, row_of);

  static const std::map<std::string, std::string> axis_column = {
      {"wavelength", "wavelength_m"},
      {"frequency", "omega_rad_s"},
      {"angle", "angle_deg"},
      {"k", "k_per_m"},
  };
  OutputStream out(opt.common.output);
  TableWriter writer(out.get(), parse_format(opt.common.format),
                     {axis_column.at(sweep.axis),
                      "re_r_p", "im_r_p", "re_t_p", "im_t_p",
                      "re_r_s", "im_r_s", "re_t_s", "im_t_s",
                      "R", "T"});
  writer.note("stack", opt.stack_file);
  writer.note("power_pol", opt.pol);
  for (const auto& row : rows) writer.row(row);
  return kOk;
}

// ------------------------------------------------------------------ bragg

struct BraggOptions {
  CommonOptions common;
  double n1 = 1.5;
  double n2 = 2.5;
  double wavelength = 1e-6;
  std::string n_range = "0:16";
  std::string method = "step";
};

bool doubling_reachable(int n) {
  if (n == 0) return true;
  while (n % 2 == 0 && n > 2) n /= 2;
  return n == 2;
}

int nearest_reachable(int n) {
  int best = 2;
  for (int m = 2; m <= (1 << 20); m *= 2) {
    if (std::abs(m - n) < std::abs(best - n)) best = m;
  }
  return best;
}

int run_bragg(const BraggOptions& opt) {
  int n_min = 0, n_max = 0;
  {
    const auto colon = opt.n_range.find(':');
    try {
      if (colon == std::string::npos) {
        n_min = n_max = std::stoi(opt.n_range);
      } else {
        n_min = std::stoi(opt.n_range.substr(0, colon));
        n_max = std::stoi(opt.n_range.substr(colon + 1));
      }
    } catch (const std::exception&) {
      throw ps::ParseError("bad --N range '" + opt.n_range + "'", 0);
    }
  }
  if (n_min < 0 || n_max < n_min) {
    throw ps::ParseError("--N range must satisfy 0 <= min <= max", 0);
  }
  if (!(opt.n1 > 0.0) || !(opt.n2 > 0.0) || !(opt.wavelength > 0.0)) {
    throw ps::ParseError("indices and wavelength must be positive", 0);
  }

  const double r12 = (opt.n1 - opt.n2) / (opt.n1 + opt.n2);
  const double r1 = ps::r121_normal(r12);

  if (opt.method == "double") {
    for (int n = n_min; n <= n_max; ++n) {
      if (!doubling_reachable(n)) {
        std::cerr << "error: N = " << n
                  << " is not reachable by period doubling; nearest "
                     "reachable is N = " << nearest_reachable(n) << "\n";
        return kUnreachableParameter;
      }
    }
  }

  auto by_step = [&](int n) {
    double r = 0.0;
    for (int i = 0; i < n; ++i) r = ps::bragg_step(r1, r);
    return r;
  };
  auto by_double = [&](int n) {
    if (n == 0) return 0.0;
    double r = ps::bragg_step(r1, r1);  // R_2 seed
    for (int m = 2; m < n; m *= 2) r = ps::bragg_double(r);
    return r;
  };
  auto by_direct = [&](int n) {
    return ps::bragg_direct({opt.n1, opt.n2, n, opt.wavelength});
  };

  OutputStream out(opt.common.output);
  const Format format = parse_format(opt.common.format);

  if (opt.method == "compare") {
    TableWriter writer(out.get(), format,
                       {"N", "R_step", "R_double", "R_closed", "R_direct",
                        "max_dev"});
    writer.note("convention", "normal-incidence s-polarization sign");
    double worst = 0.0;
    for (int n = n_min; n <= n_max; ++n) {
      const double rs = by_step(n);
      const double rc = ps::bragg_closed(n, r1);
      const double rd = by_direct(n);
      const bool reach = doubling_reachable(n);
      const double rdb = reach ? by_double(n)
                               : std::numeric_limits<double>::quiet_NaN();
      double dev = std::max(std::abs(rs - rc), std::abs(rs - rd));
      dev = std::max(dev, std::abs(rc - rd));
      if (reach) {
        dev = std::max({dev, std::abs(rdb - rs), std::abs(rdb - rc),
                        std::abs(rdb - rd)});
      }
      worst = std::max(worst, dev);
      writer.row({static_cast<long long>(n), rs, rdb, rc, rd, dev});
    }
    std::cerr << "max pairwise deviation: " << fmt_double(worst) << "\n";
    return kOk;
  }

  TableWriter writer(out.get(), format, {"N", "R_N", "reflectivity"});
  writer.note("convention", "normal-incidence s-polarization sign");
  for (int n = n_min; n <= n_max; ++n) {
    double r;
    if (opt.method == "step") r = by_step(n);
    else if (opt.method == "double") r = by_double(n);
    else if (opt.method == "closed") r = ps::bragg_closed(n, r1);
    else r = by_direct(n);
    writer.row({static_cast<long long>(n), r, r * r});
  }
  return kOk;
}

// ---------------------------------------------------------------- casimir

struct CasimirOptions {
  CommonOptions common;
  std::string cavity_file;
  std::string sweep;  // optional
  std::string route = "closed";
};

int run_casimir(const CasimirOptions& opt) {
  ps::CavityDocument doc = ps::load_cavity_document(opt.cavity_file);
  if (opt.common.tolerance > 0.0) {
    doc.config.quadrature.rel_tolerance = opt.common.tolerance;
  }

  std::vector<std::pair<double, double>> gaps;  // (d1, d2)
  if (opt.sweep.empty()) {
    gaps.emplace_back(doc.config.d1, doc.config.d2);
  } else {
    const SweepSpec sweep = parse_sweep(opt.sweep, {"separation", "d2"});
    for (double v : sweep.values()) {
      if (sweep.axis == "separation") gaps.emplace_back(v, doc.config.d2);
      else gaps.emplace_back(doc.config.d1, v);
    }
  }

  const bool both = opt.route == "both";
  std::vector<std::string> columns = {"d1_m", "d2_m"};
  if (both) {
    columns.insert(columns.end(),
                   {"force_direct_Pa", "err_direct_Pa", "force_closed_Pa",
                    "err_closed_Pa", "rel_difference"});
  } else {
    columns.insert(columns.end(), {"force_Pa", "error_est_Pa"});
  }

  auto row_of = [&](int i) -> std::vector<Cell> {
    ps::CavityConfig config = doc.config;
    config.d1 = gaps[static_cast<std::size_t>(i)].first;
    config.d2 = gaps[static_cast<std::size_t>(i)].second;
    if (both) {
      const ps::ModeSumResult fd = ps::force_direct(config);
      const ps::ModeSumResult fc = ps::force_closed(config);
      const double scale = std::max(std::abs(fd.value), std::abs(fc.value));
      const double rel = scale > 0.0 ? std::abs(fd.value - fc.value) / scale
                                     : 0.0;
      return {config.d1, config.d2, fd.value, fd.error_estimate, fc.value,
              fc.error_estimate, rel};
    }
    const ps::ModeSumResult f = (opt.route == "direct")
                                    ? ps::force_direct(config)
                                    : ps::force_closed(config);
    return {config.d1, config.d2, f.value, f.error_estimate};
  };

  OutputStream out(opt.common.output);
  TableWriter writer(out.get(), parse_format(opt.common.format), columns);
  writer.note("cavity", opt.cavity_file);
  writer.note("route", opt.route);

  // Convergence failures still print the rows computed so far.
  try {
    const auto rows = parallel_rows(static_cast<int>(gaps.size()),
                                    opt.common.threads, row_of);
    for (const auto& row : rows) writer.row(row);
  } catch (const ps::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n  partial value: "
              << fmt_double(e.partial_value) << " Pa, error estimate "
              << fmt_double(e.error_estimate) << " Pa\n";
    return kConvergenceError;
  }
  return kOk;
}

// --------------------------------------------------------------- validate

struct ValidateOptions {
  CommonOptions common;
  std::string stack_file;
  int samples = 64;
};

struct IdentityReport {
  std::string name;
  double worst = 0.0;
  long long samples = 0;
  bool applicable = false;
};

int run_validate(const ValidateOptions& opt) {
  const ps::StackDocument doc = ps::load_stack_document(opt.stack_file);
  const double tol = opt.common.tolerance > 0.0 ? opt.common.tolerance
                                                : 1e-12;
  std::mt19937_64 rng(opt.common.seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };

  // Flatten the document stack into parts for regrouping checks.
  std::vector<ps::StackExpr> parts;
  std::function<void(const ps::StackExpr&)> flatten =
      [&](const ps::StackExpr& e) {
        if (const auto* seq = std::get_if<ps::SequencePart>(&e.node())) {
          for (const auto& p : seq->parts) flatten(p);
        } else {
          parts.push_back(e);
        }
      };
  flatten(doc.stack);
  const bool local_only = !doc.stack.contains_opaque();

  IdentityReport stokes{"stokes_interfaces", 0, 0, false};
  IdentityReport grouping{"grouping_independence", 0, 0, false};
  IdentityReport layerwise{"layerwise_fold_agreement", 0, 0, false};
  IdentityReport a_inv{"a_invariance", 0, 0, false};
  IdentityReport denom{"denominator_identity", 0, 0, false};
  IdentityReport symmetry{"transmission_symmetry", 0, 0, false};
  IdentityReport trans_eq{"transmittance_equality", 0, 0, false};

  auto sample_mode = [&](bool* imaginary_ok) -> ps::TransverseMode {
    const bool imag = (*imaginary_ok) && uniform(0.0, 1.0) < 0.5;
    const double f = std::exp(uniform(std::log(1e13), std::log(1e16)));
    const double k = uniform(0.0, 2.0) * f / ps::kSpeedOfLight;
    const ps::Polarization q = uniform(0.0, 1.0) < 0.5 ? ps::Polarization::p
                                                       : ps::Polarization::s;
    return {q, k, imag ? ps::Frequency::imaginary(f)
                       : ps::Frequency::real(f)};
  };

  bool imaginary_ok = true;
  int accepted = 0, attempts = 0;
  while (accepted < opt.samples && attempts < 50 * opt.samples) {
    ++attempts;
    const ps::TransverseMode mode = sample_mode(&imaginary_ok);
    ps::FresnelSet whole;
    try {
      whole = ps::evaluate(doc.stack, mode);
    } catch (const ps::CoverageError&) {
      continue;  // outside tabulated data
    } catch (const ps::EvaluationError&) {
      if (mode.freq.is_imaginary()) imaginary_ok = false;
      continue;
    }
    ++accepted;

    // Stokes on each bare interface of the document stack
    for (const auto& p : parts) {
      if (const auto* ifc = std::get_if<ps::InterfacePart>(&p.node())) {
        if (ps::is_ideal_mirror(ifc->left) || ps::is_ideal_mirror(ifc->right))
          continue;
        const ps::FresnelSet fs =
            ps::interface_coeffs(ifc->left, ifc->right, mode);
        stokes.applicable = true;
        ++stokes.samples;
        stokes.worst =
            std::max(stokes.worst, std::abs(ps::a_value(fs) - 1.0));
      }
    }

    // Regrouping: every split point must reproduce the flat result; the
    // composite a must match the regrouped form.
    for (std::size_t cut = 1; cut < parts.size(); ++cut) {
      std::vector<ps::StackExpr> lo(parts.begin(),
                                    parts.begin() + static_cast<long>(cut));
      std::vector<ps::StackExpr> hi(parts.begin() + static_cast<long>(cut),
                                    parts.end());
      const ps::FresnelSet left = ps::evaluate(ps::StackExpr::sequence(lo),
                                               mode);
      const ps::FresnelSet right = ps::evaluate(ps::StackExpr::sequence(hi),
                                                mode);
      const ps::FresnelSet joined = ps::join(left, left.right, 0.0, right,
                                             mode);
      grouping.applicable = true;
      ++grouping.samples;
      grouping.worst = std::max(
          {grouping.worst, std::abs(joined.r_fwd - whole.r_fwd),
           std::abs(joined.r_bwd - whole.r_bwd),
           std::abs(joined.t_fwd - whole.t_fwd),
           std::abs(joined.t_bwd - whole.t_bwd)});

      const ps::Complex at = (ps::a_value(left) * ps::a_value(right) -
                              left.r_fwd * right.r_bwd) /
                             (1.0 - left.r_bwd * right.r_fwd);
      a_inv.applicable = true;
      ++a_inv.samples;
      a_inv.worst = std::max(a_inv.worst,
                             std::abs(ps::a_value(joined) - at) /
                                 std::max(1.0, std::abs(at)));
    }

    if (local_only) {
      const ps::FresnelSet lw = ps::evaluate_layerwise(doc.stack, mode);
      layerwise.applicable = true;
      ++layerwise.samples;
      layerwise.worst = std::max(
          {layerwise.worst, std::abs(lw.r_fwd - whole.r_fwd),
           std::abs(lw.r_bwd - whole.r_bwd),
           std::abs(lw.t_fwd - whole.t_fwd),
           std::abs(lw.t_bwd - whole.t_bwd)});
    }

    // Four-region denominator identity around every pair of interior
    // slab parts.
    std::vector<std::size_t> slab_at;
    for (std::size_t i = 1; i + 1 < parts.size(); ++i) {
      if (std::holds_alternative<ps::SlabPart>(parts[i].node())) {
        slab_at.push_back(i);
      }
    }
    for (std::size_t a = 0; a + 1 < slab_at.size(); ++a) {
      const std::size_t s1 = slab_at[a], s2 = slab_at[a + 1];
      const auto& slab1 = std::get<ps::SlabPart>(parts[s1].node());
      const auto& slab2 = std::get<ps::SlabPart>(parts[s2].node());
      auto eval_range = [&](std::size_t lo, std::size_t hi) {
        std::vector<ps::StackExpr> sub(parts.begin() + static_cast<long>(lo),
                                       parts.begin() + static_cast<long>(hi));
        return ps::evaluate(ps::StackExpr::sequence(sub), mode);
      };
      const ps::FresnelSet A = eval_range(0, s1);
      const ps::FresnelSet B = eval_range(s1 + 1, s2);
      const ps::FresnelSet C = eval_range(s2 + 1, parts.size());
      const ps::Complex pk2 = [&] {
        const ps::Complex p = ps::propagation_phase(
            ps::layer_wave(slab1.medium, mode), mode, slab1.thickness);
        return p * p;
      }();
      const ps::Complex pl2 = [&] {
        const ps::Complex p = ps::propagation_phase(
            ps::layer_wave(slab2.medium, mode), mode, slab2.thickness);
        return p * p;
      }();
      const ps::Complex r_km =
          ps::join(B, slab2.medium, slab2.thickness, C, mode).r_fwd;
      const ps::Complex r_lj =
          ps::join(A, slab1.medium, slab1.thickness, B, mode).r_bwd;
      const ps::Complex lhs =
          (1.0 - B.r_bwd * C.r_fwd * pl2) * (1.0 - A.r_bwd * r_km * pk2);
      const ps::Complex rhs =
          (1.0 - A.r_bwd * B.r_fwd * pk2) * (1.0 - r_lj * C.r_fwd * pl2);
      denom.applicable = true;
      ++denom.samples;
      denom.worst = std::max(denom.worst,
                             std::abs(lhs - rhs) /
                                 std::max({1.0, std::abs(lhs),
                                           std::abs(rhs)}));
    }

    // Transmission symmetry with the declared boundary media.
    if (!ps::is_ideal_mirror(whole.left) && !ps::is_ideal_mirror(whole.right)) {
      const ps::LayerWave wj = ps::layer_wave(whole.left, mode);
      const ps::LayerWave wm = ps::layer_wave(whole.right, mode);
      const ps::Complex lhs = whole.t_fwd * wj.mu * wm.perp;
      const ps::Complex rhs = whole.t_bwd * wm.mu * wj.perp;
      symmetry.applicable = true;
      ++symmetry.samples;
      symmetry.worst = std::max(symmetry.worst,
                                std::abs(lhs - rhs) /
                                    std::max(1.0, std::abs(lhs)));
      if (!mode.freq.is_imaginary()) {
        try {
          const auto tt = ps::stack_transmittance(whole, mode);
          trans_eq.applicable = true;
          ++trans_eq.samples;
          trans_eq.worst = std::max(trans_eq.worst,
                                    std::abs(tt.fwd - tt.bwd) /
                                        std::max(1.0, std::abs(tt.fwd)));
        } catch (const ps::UndefinedTransmittanceError&) {
          // lossy or evanescent outer medium at this mode
        }
      }
    }
  }

  if (accepted == 0) {
    throw ps::EvaluationError(
        "no sampled mode could be evaluated on this stack");
  }

  OutputStream out(opt.common.output);
  TableWriter writer(out.get(), parse_format(opt.common.format),
                     {"identity", "worst_residual", "samples", "status"});
  writer.note("stack", opt.stack_file);
  writer.note("tolerance", fmt_double(tol));
  bool all_pass = true;
  for (const IdentityReport* r :
       {&stokes, &grouping, &layerwise, &a_inv, &denom, &symmetry,
        &trans_eq}) {
    std::string status = "n/a";
    if (r->applicable) {
      status = r->worst < tol ? "pass" : "fail";
      if (status == "fail") all_pass = false;
    }
    writer.row({r->name, r->worst, r->samples, status});
  }
  return all_pass ? kOk : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "planar multilayer optics: stack-recursion Fresnel coefficients, "
      "Bragg mirrors, and Casimir forces"};
  app.require_subcommand(1);

  ReflectOptions reflect;
  CLI::App* c_reflect = app.add_subcommand(
      "reflect", "Sweep reflection/transmission of a stack file");
  c_reflect->add_option("--stack", reflect.stack_file,
                        "Stack definition file (TOML)")->required();
  c_reflect->add_option("--sweep", reflect.sweep,
                        "axis:min:max:points[:log]; axis = wavelength | "
                        "frequency | angle | k")->required();
  c_reflect->add_option("--at-wavelength", reflect.at_wavelength,
                        "Fixed vacuum wavelength (m) for angle/k sweeps");
  c_reflect->add_option("--at-frequency", reflect.at_frequency,
                        "Fixed angular frequency (rad/s) for angle/k sweeps");
  c_reflect->add_option("--angle", reflect.angle_deg,
                        "Fixed incidence angle in degrees (wavelength/"
                        "frequency sweeps); k = n_amb (w/c) sin(angle)");
  c_reflect->add_option("--pol", reflect.pol,
                        "Polarization for the R and T columns")
      ->check(CLI::IsMember({"p", "s", "avg"}));
  add_common(c_reflect, reflect.common);

  BraggOptions bragg;
  CLI::App* c_bragg = app.add_subcommand(
      "bragg", "Quarter-wave Bragg segment reflection coefficients");
  c_bragg->add_option("--n1", bragg.n1, "Ambient/odd-layer index")
      ->required();
  c_bragg->add_option("--n2", bragg.n2, "Even-layer index")->required();
  c_bragg->add_option("--wavelength", bragg.wavelength,
                      "Design vacuum wavelength in m (direct method)");
  c_bragg->add_option("--N", bragg.n_range,
                      "Type-2 layer count, single value or min:max");
  c_bragg->add_option("--method", bragg.method,
                      "step | double | closed | direct | compare")
      ->check(CLI::IsMember({"step", "double", "closed", "direct",
                             "compare"}));
  add_common(c_bragg, bragg.common);

  CasimirOptions casimir;
  CLI::App* c_casimir = app.add_subcommand(
      "casimir", "Casimir force on the slab of a cavity file");
  c_casimir->add_option("--cavity", casimir.cavity_file,
                        "Cavity definition file (TOML)")->required();
  c_casimir->add_option("--sweep", casimir.sweep,
                        "separation:min:max:points[:log] sweeps d1; "
                        "d2:... sweeps d2");
  c_casimir->add_option("--route", casimir.route,
                        "direct (stress difference) | closed | both")
      ->check(CLI::IsMember({"direct", "closed", "both"}));
  add_common(c_casimir, casimir.common);

  ValidateOptions validate;
  CLI::App* c_validate = app.add_subcommand(
      "validate", "Run the consistency identities on a stack file");
  c_validate->add_option("--stack", validate.stack_file,
                         "Stack definition file (TOML)")->required();
  c_validate->add_option("--samples", validate.samples,
                         "Number of random modes")
      ->check(CLI::PositiveNumber);
  add_common(c_validate, validate.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParseError;
  }

  try {
    if (c_reflect->parsed()) return run_reflect(reflect);
    if (c_bragg->parsed()) return run_bragg(bragg);
    if (c_casimir->parsed()) return run_casimir(casimir);
    return run_validate(validate);
  } catch (const ps::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const ps::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConvergenceError;
  } catch (const ps::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const ps::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEvaluationError;
  }
}
