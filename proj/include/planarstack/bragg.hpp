#pragma once

#include "planarstack/stack.hpp"

namespace planarstack {

// Quarter-wave Bragg segment 121...121: alternating layers of real
// indices n1 and n2 with thicknesses d_i = lambda/(4 n_i), embedded in
// medium 1, counted by the number N of type-2 layers. All normal-
// incidence coefficients in this module follow the s-polarization sign
// convention.
struct BraggSpec {
  double n1 = 1.0;
  double n2 = 1.0;
  int n_type2 = 0;           // N >= 0
  double wavelength = 1e-6;  // design vacuum wavelength, m

  double d1() const { return wavelength / (4.0 * n1); }
  double d2() const { return wavelength / (4.0 * n2); }
};

// R1 = r_121 = 2 r12 / (1 + r12^2), the one-period seed.
double r121_normal(double r12);

// One recursion step: R_N = (R_1 + R_{N-1}) / (1 + R_1 R_{N-1}).
double bragg_step(double r1, double r_prev);

// Period doubling: R_{2N} = 2 R_N / (1 + R_N^2). Starting from R_2 this
// reaches the segment counts N = 2 * 2^m.
double bragg_double(double r_half);

// Closed form of the step recursion (the addition law of hyperbolic
// tangents): R_N = tanh(N artanh R_1). Independent oracle for the
// recursions and the direct evaluation.
double bragg_closed(int n, double r1);

// Evaluates the explicit quarter-wave stack at k = 0, omega = 2 pi c /
// lambda through the general engine and returns the (real) normal
// reflection coefficient.
double bragg_direct(const BraggSpec& spec, const EvalOptions& opts = {});

// The explicit 121...121 stack expression for a spec (ambient medium 1
// on both sides).
StackExpr bragg_stack(const BraggSpec& spec);

}  // namespace planarstack
