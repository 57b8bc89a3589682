#include <cmath>
#include <sstream>

#include "doctest.h"
#include "planarstack/coeff_table.hpp"
#include "planarstack/errors.hpp"
#include "support/generators.hpp"

using namespace planarstack;
using testgen::Rng;

namespace {

StackExpr sample_slab() {
  const MaterialModel m = ConstantIndex{2.25, 1.0};
  return StackExpr::sequence({
      StackExpr::interface(Vacuum{}, m),
      StackExpr::slab(m, 2e-7),
      StackExpr::interface(m, Vacuum{}),
  });
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(lo * std::pow(hi / lo, double(i) / double(n - 1)));
  }
  return v;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(lo + (hi - lo) * double(i) / double(n - 1));
  }
  return v;
}

}  // namespace

TEST_SUITE("coeff_table") {

TEST_CASE("sampled table interpolates close to the direct evaluation") {
  const StackExpr slab = sample_slab();
  const auto table = sample_stack_coefficients(
      slab, true, logspace(1e12, 1e16, 60), linspace(0.0, 3e7, 60));
  const StackExpr opaque = StackExpr::opaque(table, Vacuum{}, Vacuum{});

  Rng rng(5);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const TransverseMode mode{rng.pol(), rng.uniform(0.0, 3e7),
                              Frequency::imaginary(rng.log_uniform(1e12, 1e16))};
    const FresnelSet approx = evaluate(opaque, mode);
    const FresnelSet exact = evaluate(slab, mode);
    worst = std::max(worst, std::abs(approx.r_fwd - exact.r_fwd));
    worst = std::max(worst, std::abs(approx.t_fwd - exact.t_fwd));
  }
  CHECK(worst < 2e-2);  // coarse 60x60 grid; accuracy scales with density

  // nodes reproduce exactly
  const TransverseMode node{Polarization::s, 0.0, Frequency::imaginary(1e12)};
  CHECK(std::abs(evaluate(opaque, node).r_fwd -
                 evaluate(slab, node).r_fwd) == 0.0);
}

TEST_CASE("coverage errors outside the grid") {
  const auto table = sample_stack_coefficients(
      sample_slab(), true, logspace(1e13, 1e15, 8), linspace(0.0, 1e7, 8));
  const StackExpr opaque = StackExpr::opaque(table, Vacuum{}, Vacuum{});

  CHECK_THROWS_AS(
      evaluate(opaque, {Polarization::s, 0.0, Frequency::imaginary(1e12)}),
      CoverageError);
  CHECK_THROWS_AS(
      evaluate(opaque, {Polarization::s, 2e7, Frequency::imaginary(1e14)}),
      CoverageError);
  // real-axis grid absent entirely
  CHECK_THROWS_AS(
      evaluate(opaque, {Polarization::s, 0.0, Frequency::real(1e14)}),
      CoverageError);
}

TEST_CASE("CSV round trip preserves values") {
  const auto table = sample_stack_coefficients(
      sample_slab(), true, logspace(1e13, 1e15, 5), linspace(0.0, 1e7, 4));
  std::ostringstream out;
  write_coeff_table_csv(out, *table);
  std::istringstream in(out.str());
  const auto reloaded = parse_coeff_table_csv(in, "roundtrip");

  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const TransverseMode mode{rng.pol(), rng.uniform(0.0, 1e7),
                              Frequency::imaginary(rng.log_uniform(1e13, 1e15))};
    const auto a = table->eval(mode);
    const auto b = reloaded->eval(mode);
    CHECK(std::abs(a.r_fwd - b.r_fwd) <= 1e-16);
    CHECK(std::abs(a.t_bwd - b.t_bwd) <= 1e-16);
  }
}

TEST_CASE("eight-column files trigger the symmetry fill") {
  std::istringstream in(
      "freq_type,freq_rad_s,k_per_m,pol,re_r_fwd,im_r_fwd,re_t_fwd,im_t_fwd\n"
      "imag,1e13,0,s,0.5,0,0.8,0\n"
      "imag,1e13,1e7,s,0.6,0,0.7,0\n"
      "imag,1e15,0,s,0.4,0,0.9,0\n"
      "imag,1e15,1e7,s,0.5,0,0.8,0\n");
  const auto table = parse_coeff_table_csv(in, "fwd-only");
  CHECK(!table->has_backward());

  const StackExpr opaque = StackExpr::opaque(table, Vacuum{}, Vacuum{});
  const TransverseMode mode{Polarization::s, 5e6, Frequency::imaginary(1e14)};
  const FresnelSet fs = evaluate(opaque, mode);
  CHECK(fs.r_bwd == fs.r_fwd);
  // identical vacuum boundaries: t_bwd = t_fwd exactly
  CHECK(fs.t_bwd == fs.t_fwd);
}

TEST_CASE("malformed CSV is reported with a line number") {
  std::istringstream missing(
      "imag,1e13,0,s,0.5,0,0.8,0\n"
      "imag,1e15,1e7,s,0.4,0,0.9,0\n");  // incomplete grid
  CHECK_THROWS_AS(parse_coeff_table_csv(missing, "holes"), ParseError);

  std::istringstream badpol("imag,1e13,0,x,0.5,0,0.8,0\n");
  try {
    parse_coeff_table_csv(badpol, "badpol");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
  }

  std::istringstream badnum("imag,1e13,zero,s,0.5,0,0.8,0\n");
  CHECK_THROWS_AS(parse_coeff_table_csv(badnum, "badnum"), ParseError);
}

}  // TEST_SUITE
