// Acceptance suite: one pass/fail line per criterion, nonzero exit if
// any fails. Each criterion pins its tolerance and runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <vector>

#include "planarstack/bragg.hpp"
#include "planarstack/casimir.hpp"
#include "planarstack/coeff_table.hpp"
#include "planarstack/constants.hpp"
#include "planarstack/errors.hpp"
#include "planarstack/stack.hpp"
#include "support/generators.hpp"

using namespace planarstack;
using testgen::Rng;

namespace {

struct Criterion {
  const char* name;
  double worst = 0.0;      // worst residual observed
  double tolerance = 0.0;  // pass threshold
  double budget_s = 0.0;   // runtime budget (0 = none)
  double elapsed_s = 0.0;
  bool pass = false;
  std::string detail;
};

double set_distance(const FresnelSet& a, const FresnelSet& b) {
  return std::max(std::max(std::abs(a.r_fwd - b.r_fwd),
                           std::abs(a.r_bwd - b.r_bwd)),
                  std::max(std::abs(a.t_fwd - b.t_fwd),
                           std::abs(a.t_bwd - b.t_bwd)));
}

// ---------------------------------------------------------------- 1

Criterion stokes_relation() {
  Criterion c{"stokes-relation"};
  c.tolerance = 1e-12;
  c.budget_s = 5.0;
  Rng rng(101);
  for (int i = 0; i < 10000; ++i) {
    const TransverseMode mode = rng.real_mode(rng.pol());
    const FresnelSet fs = interface_coeffs(rng.passive_medium(),
                                           rng.passive_medium(), mode);
    c.worst = std::max(c.worst, std::abs(a_value(fs) - 1.0));
  }
  c.pass = c.worst < c.tolerance;
  c.detail = "10^4 random lossy interfaces, both polarizations";
  return c;
}

// ---------------------------------------------------------------- 2

Criterion grouping_independence() {
  Criterion c{"grouping-independence"};
  c.tolerance = 1e-12;
  c.budget_s = 30.0;
  Rng rng(202);
  for (int trial = 0; trial < 1000; ++trial) {
    const TransverseMode mode = rng.mode(rng.pol());
    const auto ls = testgen::random_local_stack(rng, rng.integer(3, 8), mode);
    const auto parts = testgen::stack_parts(ls);
    const FresnelSet base = evaluate(StackExpr::sequence(parts), mode);

    if (parts.size() <= 5) {
      for (const auto& tree : testgen::all_bracketings(parts)) {
        c.worst = std::max(c.worst, set_distance(evaluate(tree, mode), base));
      }
    } else {
      // every top-level split, each side fully nested both ways
      for (std::size_t cut = 1; cut < parts.size(); ++cut) {
        std::vector<StackExpr> lo(parts.begin(),
                                  parts.begin() + static_cast<long>(cut));
        std::vector<StackExpr> hi(parts.begin() + static_cast<long>(cut),
                                  parts.end());
        const StackExpr split = StackExpr::sequence(
            {StackExpr::sequence(lo), StackExpr::sequence(hi)});
        c.worst = std::max(c.worst, set_distance(evaluate(split, mode), base));
      }
      // fully right-nested tree
      StackExpr nested = parts.back();
      for (std::size_t i = parts.size() - 1; i-- > 0;) {
        nested = StackExpr::sequence({parts[i], nested});
      }
      c.worst = std::max(c.worst, set_distance(evaluate(nested, mode), base));
    }
    c.worst = std::max(
        c.worst,
        set_distance(evaluate_layerwise(StackExpr::sequence(parts), mode),
                     base));
  }
  c.pass = c.worst < c.tolerance;
  c.detail = "10^3 stacks of 3-8 media, all groupings + layerwise fold";
  return c;
}

// ---------------------------------------------------------------- 3

Criterion denominator_identity() {
  Criterion c{"denominator-identity"};
  c.tolerance = 1e-12;
  Rng rng(303);
  for (int trial = 0; trial < 1000; ++trial) {
    const TransverseMode mode = rng.mode(rng.pol());
    auto stack_between = [&](const MaterialModel& a, const MaterialModel& b) {
      if (rng.flip()) return StackExpr::interface(a, b);
      const MaterialModel x = rng.medium_for(mode);
      return StackExpr::sequence({StackExpr::interface(a, x),
                                  StackExpr::slab(x, rng.thickness()),
                                  StackExpr::interface(x, b)});
    };
    const MaterialModel mj = rng.medium_for(mode);
    const MaterialModel mk = rng.medium_for(mode);
    const MaterialModel ml = rng.medium_for(mode);
    const MaterialModel mm = rng.medium_for(mode);
    const double dk = rng.thickness();
    const double dl = rng.thickness();

    const FresnelSet A = evaluate(stack_between(mj, mk), mode);
    const FresnelSet B = evaluate(stack_between(mk, ml), mode);
    const FresnelSet C = evaluate(stack_between(ml, mm), mode);

    auto phase2 = [&](const MaterialModel& m, double d) {
      const Complex p = propagation_phase(layer_wave(m, mode), mode, d);
      return p * p;
    };
    const Complex pk = phase2(mk, dk);
    const Complex pl = phase2(ml, dl);
    const Complex r_km = join(B, ml, dl, C, mode).r_fwd;
    const Complex r_lj = join(A, mk, dk, B, mode).r_bwd;
    const Complex lhs =
        (1.0 - B.r_bwd * C.r_fwd * pl) * (1.0 - A.r_bwd * r_km * pk);
    const Complex rhs =
        (1.0 - A.r_bwd * B.r_fwd * pk) * (1.0 - r_lj * C.r_fwd * pl);
    c.worst = std::max(c.worst, std::abs(lhs - rhs) /
                                    std::max(std::abs(lhs), std::abs(rhs)));
  }
  c.pass = c.worst < c.tolerance;
  c.detail = "10^3 random four-region configurations, pointwise";
  return c;
}

// ---------------------------------------------------------------- 4

Criterion transmission_symmetry() {
  Criterion c{"transmission-symmetry"};
  c.tolerance = 1e-12;
  Rng rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    auto ls = testgen::random_local_stack(rng, rng.integer(3, 7),
                                          rng.real_mode(Polarization::s));
    ls.media.front() = rng.transparent_medium();
    ls.media.back() = rng.transparent_medium();
    const double omega = rng.log_uniform(1e14, 1e16);
    const auto& j = std::get<ConstantIndex>(ls.media.front());
    const auto& m = std::get<ConstantIndex>(ls.media.back());
    const double n_min = std::sqrt(
        std::min((j.eps * j.mu).real(), (m.eps * m.mu).real()));
    const double k = rng.uniform(0.0, 0.999) * n_min * omega / kSpeedOfLight;
    const TransverseMode mode{rng.pol(), k, Frequency::real(omega)};

    const FresnelSet fs = evaluate(testgen::flat_sequence(ls), mode);
    const LayerWave wj = layer_wave(ls.media.front(), mode);
    const LayerWave wm = layer_wave(ls.media.back(), mode);
    const Complex lhs = fs.t_fwd * wj.mu * wm.perp;
    const Complex rhs = fs.t_bwd * wm.mu * wj.perp;
    c.worst = std::max(c.worst, std::abs(lhs - rhs) /
                                    std::max(std::abs(lhs), std::abs(rhs)));

    const auto tt = stack_transmittance(fs, mode);
    c.worst = std::max(c.worst, std::abs(tt.fwd - tt.bwd) /
                                    std::max(tt.fwd, 1e-300));
  }
  c.pass = c.worst < c.tolerance;
  c.detail = "t and energy-flux symmetry, transparent outer media";
  return c;
}

// ---------------------------------------------------------------- 5

Criterion energy_conservation() {
  Criterion c{"energy-conservation"};
  c.tolerance = 1e-12;
  Rng rng(505);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto ls = testgen::random_local_stack(
        rng, rng.integer(3, 7), rng.real_mode(Polarization::s), true);
    const double omega = rng.log_uniform(1e14, 1e16);
    const auto& j = std::get<ConstantIndex>(ls.media.front());
    const auto& m = std::get<ConstantIndex>(ls.media.back());
    const double n_min = std::sqrt(
        std::min((j.eps * j.mu).real(), (m.eps * m.mu).real()));
    const double k = rng.uniform(0.0, 0.999) * n_min * omega / kSpeedOfLight;
    const TransverseMode mode{rng.pol(), k, Frequency::real(omega)};

    const FresnelSet fs = evaluate(testgen::flat_sequence(ls), mode);
    const auto tt = stack_transmittance(fs, mode);
    c.worst = std::max(c.worst, std::abs(std::norm(fs.r_fwd) + tt.fwd - 1.0));
    c.worst = std::max(c.worst, std::abs(std::norm(fs.r_bwd) + tt.bwd - 1.0));
  }
  c.pass = c.worst < c.tolerance;
  c.detail = "|r|^2 + T = 1 on lossless stacks, propagating modes";
  return c;
}

// ---------------------------------------------------------------- 6

Criterion bragg_equivalence() {
  Criterion c{"bragg-equivalence"};
  c.tolerance = 1e-10;
  c.budget_s = 5.0;
  const double n1 = 1.5, n2 = 2.5, lambda = 633e-9;
  const double r1 = r121_normal((n1 - n2) / (n1 + n2));

  bool monotone = true;
  double r_step = 0.0, prev_mag = 0.0;
  for (int n = 1; n <= 64; ++n) {
    r_step = bragg_step(r1, r_step);
    const double closed = bragg_closed(n, r1);
    const double direct = bragg_direct({n1, n2, n, lambda});
    c.worst = std::max(c.worst, std::abs(r_step - closed));
    c.worst = std::max(c.worst, std::abs(direct - closed));
    // strict growth until |R| saturates at the double-precision 1
    if (prev_mag < 1.0 - 1e-13 ? !(std::abs(closed) > prev_mag)
                               : !(std::abs(closed) >= prev_mag)) {
      monotone = false;
    }
    prev_mag = std::abs(closed);
  }
  double r_dbl = bragg_step(r1, r1);
  for (int n = 2; n <= 64; n *= 2) {
    c.worst = std::max(c.worst, std::abs(r_dbl - bragg_closed(n, r1)));
    r_dbl = bragg_double(r_dbl);
  }
  const bool saturates = 1.0 - std::abs(bragg_closed(64, r1)) < 1e-12;
  c.pass = c.worst < c.tolerance && monotone && saturates;
  c.detail = "step vs doubling vs tanh form vs direct stack, N <= 64";
  return c;
}

// ---------------------------------------------------------------- 7

Criterion quarter_wave_invariant() {
  Criterion c{"quarter-wave-a-invariant"};
  c.tolerance = 1e-12;
  const double n1 = 1.5, n2 = 2.5, lambda = 633e-9;
  const double omega = 2.0 * kPi * kSpeedOfLight / lambda;
  const MaterialModel m1 = ConstantIndex{n1 * n1, 1.0};
  const MaterialModel m2 = ConstantIndex{n2 * n2, 1.0};
  const StackExpr s121 = StackExpr::sequence({
      StackExpr::interface(m1, m2),
      StackExpr::slab(m2, lambda / (4.0 * n2)),
      StackExpr::interface(m2, m1),
  });
  for (Polarization q : {Polarization::p, Polarization::s}) {
    const TransverseMode mode{q, 0.0, Frequency::real(omega)};
    c.worst = std::max(c.worst,
                       std::abs(a_value(evaluate(s121, mode)) + 1.0));
  }
  c.pass = c.worst < c.tolerance;
  c.detail = "a(121 quarter-wave composite) = -1 at normal incidence";
  return c;
}

// ---------------------------------------------------------------- 8

Criterion ideal_metal_benchmark() {
  Criterion c{"ideal-metal-benchmark"};
  c.tolerance = 1e-3;  // 0.1 % on the 1 um value
  c.budget_s = 60.0;
  const StackExpr mirror = StackExpr::interface(Vacuum{}, IdealMirror{});

  const double d0 = 1e-6;
  const double expected =
      -kPi * kPi * kHbar * kSpeedOfLight / (240.0 * d0 * d0 * d0 * d0);
  const double f0 = two_body_force(mirror, mirror, d0, Vacuum{}).value;
  c.worst = std::abs(f0 - expected) / std::abs(expected);

  // log-log slope across d = 0.1 .. 10 um
  std::vector<double> lx, ly;
  for (int i = 0; i < 9; ++i) {
    const double d = 1e-7 * std::pow(10.0, i / 4.0);
    const double f = two_body_force(mirror, mirror, d, Vacuum{}).value;
    lx.push_back(std::log(d));
    ly.push_back(std::log(-f));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(ly.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = num / den;
  const bool slope_ok = std::abs(slope + 4.0) < 0.01;

  c.pass = c.worst < c.tolerance && slope_ok;
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "F(1um) vs -pi^2 hbar c/240 d^4; log-log slope %.6f", slope);
  c.detail = buf;
  return c;
}

// ---------------------------------------------------------------- 9

StackExpr random_drude_mirror(Rng& rng) {
  return StackExpr::interface(
      Vacuum{}, DrudeMetal{rng.log_uniform(5e15, 2e16),
                           rng.log_uniform(1e13, 1e14)});
}

StackExpr random_dielectric_slab(Rng& rng, double* thickness) {
  const double eps = rng.uniform(1.5, 9.0);
  *thickness = rng.log_uniform(5e-8, 4e-7);
  const MaterialModel m = ConstantIndex{eps, 1.0};
  return StackExpr::sequence({
      StackExpr::interface(Vacuum{}, m),
      StackExpr::slab(m, *thickness),
      StackExpr::interface(m, Vacuum{}),
  });
}

Criterion route_equivalence() {
  Criterion c{"route-equivalence"};
  c.tolerance = 1e-6;
  c.budget_s = 600.0;
  Rng rng(909);

  for (int trial = 0; trial < 20; ++trial) {
    double slab_d = 0.0;
    StackExpr slab = random_dielectric_slab(rng, &slab_d);
    const double d1 = rng.log_uniform(3e-7, 1e-6);
    const double d2 = d1 * rng.uniform(1.5, 3.0);

    QuadratureSettings quad;
    quad.rel_tolerance = 1e-8;
    if (trial % 5 == 4) {
      // tabulated opaque variant of the same slab; the piecewise-linear
      // interpolant is kinked at every grid line, which costs about a
      // minute per force at the tolerance needed to integrate through
      // the kinks
      const auto grid = casimir_sampling_grid(Vacuum{}, std::min(d1, d2),
                                              quad, 220, 220);
      slab = StackExpr::opaque(
          sample_stack_coefficients(slab, true, grid.xi, grid.k),
          Vacuum{}, Vacuum{});
      quad.rel_tolerance = 1e-7;
    }
    const CavityConfig config{random_drude_mirror(rng),
                              random_drude_mirror(rng), slab,
                              d1, d2, Vacuum{}, quad};
    const double fd = force_direct(config).value;
    const double fc = force_closed(config).value;
    c.worst = std::max(c.worst, std::abs(fd - fc) / std::abs(fc));
  }
  c.pass = c.worst < c.tolerance;
  c.detail = "20 cavities: Drude mirrors, dielectric + tabulated slabs";
  return c;
}

// ---------------------------------------------------------------- 10

Criterion symmetry_null() {
  Criterion c{"symmetry-null"};
  QuadratureSettings quad;  // default 1e-8
  c.tolerance = 10.0 * quad.rel_tolerance;
  const StackExpr mirror =
      StackExpr::interface(Vacuum{}, DrudeMetal{1.3e16, 5e13});
  const MaterialModel glass = ConstantIndex{2.25, 1.0};
  const StackExpr slab = StackExpr::sequence({
      StackExpr::interface(Vacuum{}, glass),
      StackExpr::slab(glass, 2e-7),
      StackExpr::interface(glass, Vacuum{}),
  });

  const CavityConfig sym{mirror, mirror, slab, 7e-7, 7e-7, Vacuum{}, quad};
  const double scale = stress_zz(1, sym).value;
  const double f_sym = force_direct(sym).value;
  c.worst = std::abs(f_sym) / scale;

  const CavityConfig ab{mirror, mirror, slab, 9e-7, 4.5e-7, Vacuum{}, quad};
  const CavityConfig ba{mirror, mirror, slab, 4.5e-7, 9e-7, Vacuum{}, quad};
  const double fab = force_closed(ab).value;
  const double fba = force_closed(ba).value;
  c.worst = std::max(c.worst, std::abs(fab + fba) / std::abs(fab));

  c.pass = c.worst < c.tolerance;
  c.detail = "|F| at d1 = d2 and F(d1,d2) + F(d2,d1), identical mirrors";
  return c;
}

// ---------------------------------------------------------------- 11

Criterion opaque_passthrough() {
  Criterion c{"opaque-passthrough"};
  c.tolerance = 1e-4;
  const MaterialModel glass = ConstantIndex{2.25, 1.0};
  const StackExpr slab = StackExpr::sequence({
      StackExpr::interface(Vacuum{}, glass),
      StackExpr::slab(glass, 2e-7),
      StackExpr::interface(glass, Vacuum{}),
  });
  const StackExpr m1 =
      StackExpr::interface(Vacuum{}, DrudeMetal{1.37e16, 4e13});
  const StackExpr m2 =
      StackExpr::interface(Vacuum{}, DrudeMetal{9e15, 8e13});
  const double d1 = 0.6e-6, d2 = 1.1e-6;
  QuadratureSettings quad;

  const CavityConfig direct{m1, m2, slab, d1, d2, Vacuum{}, quad};
  const double f_ref = force_closed(direct).value;

  // export on a 200 x 200 grid, write to CSV, re-import
  const auto grid =
      casimir_sampling_grid(Vacuum{}, std::min(d1, d2), quad, 200, 200);
  const auto table = sample_stack_coefficients(slab, true, grid.xi, grid.k,
                                               {}, "slab-export");
  const auto csv_path =
      std::filesystem::temp_directory_path() / "planarstack_acceptance.csv";
  write_coeff_table_csv(csv_path.string(), *table);
  const auto reloaded = load_coeff_table_csv(csv_path.string());
  std::filesystem::remove(csv_path);

  const StackExpr opaque = StackExpr::opaque(reloaded, Vacuum{}, Vacuum{});
  QuadratureSettings coarse;  // interpolation error dominates well above this
  coarse.rel_tolerance = 1e-6;
  const CavityConfig tabbed{m1, m2, opaque, d1, d2, Vacuum{}, coarse};
  const double f_tab = force_closed(tabbed).value;

  c.worst = std::abs(f_tab - f_ref) / std::abs(f_ref);
  c.pass = c.worst < c.tolerance;
  c.detail = "force from a re-imported 200x200 coefficient table";
  return c;
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  std::vector<std::function<Criterion()>> criteria = {
      stokes_relation,      grouping_independence, denominator_identity,
      transmission_symmetry, energy_conservation,  bragg_equivalence,
      quarter_wave_invariant, ideal_metal_benchmark, route_equivalence,
      symmetry_null,        opaque_passthrough,
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Criterion c = criteria[i]();
    c.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.budget_s > 0.0 && c.elapsed_s > c.budget_s) c.pass = false;
    if (!c.pass) ++failures;
    std::printf("[%2zu/11] %s  %-26s worst %.3e (tol %.0e)  %.2fs  %s\n",
                i + 1, c.pass ? "PASS" : "FAIL", c.name, c.worst,
                c.tolerance, c.elapsed_s, c.detail.c_str());
    std::fflush(stdout);
  }
  if (failures == 0) {
    std::printf("ACCEPTANCE: 11/11 passed\n");
  } else {
    std::printf("ACCEPTANCE: %d criterion(s) FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
