#pragma once

#include <complex>

#include "planarstack/kinematics.hpp"
#include "planarstack/materials.hpp"

namespace planarstack {

// Generalized Fresnel coefficients of a stack at one mode, referenced
// to the stack's own boundaries (shifted-z convention: the only
// propagation factors are those applied across spacer layers when
// stacks are combined). Boundary media travel with the set so that
// chaining mistakes are detectable.
struct FresnelSet {
  Complex r_fwd;  // reflection, incidence from the left medium
  Complex r_bwd;  // reflection, incidence from the right medium
  Complex t_fwd;  // transmission left -> right
  Complex t_bwd;  // transmission right -> left
  MaterialModel left = Vacuum{};
  MaterialModel right = Vacuum{};
};

// a = t_fwd t_bwd - r_fwd r_bwd. Equals 1 for a bare interface (Stokes
// relation) and is invariant under exchanging the incidence sides.
Complex a_value(const FresnelSet& fs);

// Identity stack inside medium m: r = 0, t = 1.
FresnelSet identity_set(const MaterialModel& m);

// Single-interface coefficients between local media j (left) and k
// (right):
//   r = (b_j - g b_k)/(b_j + g b_k),  g_p = eps_j/eps_k, g_s = mu_j/mu_k,
//   t = sqrt(g/g_s) (1 + r),
// with b = beta at real frequency and b = kappa on the imaginary axis.
// Backward values follow from r_kj = -r_jk and the transmission
// symmetry. An ideal mirror on either side gives r_p = +1, r_s = -1
// seen from the material side, and t = 0.
FresnelSet interface_coeffs(const MaterialModel& j, const MaterialModel& k,
                            const TransverseMode& mode);

// Energy transmittances of an evaluated stack, computed from its
// boundary media at the given (real-frequency) mode.
TransmittancePair stack_transmittance(const FresnelSet& fs,
                                      const TransverseMode& mode);

}  // namespace planarstack
