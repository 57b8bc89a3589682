#pragma once

namespace planarstack {

// CODATA 2018. SI units throughout the library (rad/s, m, Pa).
inline constexpr double kSpeedOfLight = 299792458.0;          // m/s
inline constexpr double kHbar = 1.054571817e-34;              // J s
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kVacuumPermeability = 1.25663706212e-6;  // H/m

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace planarstack
