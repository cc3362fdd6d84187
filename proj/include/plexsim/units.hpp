#pragma once

#include <numbers>

// Canonical internal unit system: angular frequency in rad/fs, time in fs.
// Public inputs quote ordinary frequencies nu in THz; internally
// omega = 2*pi*nu * 1e-3 rad/fs.  Decay rates kappa follow the same
// convention.

namespace plexsim::units {

inline constexpr double pi = std::numbers::pi;

// SI constants (CODATA 2018).
inline constexpr double hbar_J_s   = 1.054571817e-34;
inline constexpr double eps0_F_m   = 8.8541878128e-12;
inline constexpr double debye_C_m  = 3.33564095198152e-30;  // 1e-21 / c

inline constexpr double rad_fs_per_thz = 2.0e-3 * pi;

constexpr double rad_fs_from_thz(double nu_thz) { return nu_thz * rad_fs_per_thz; }
constexpr double thz_from_rad_fs(double omega) { return omega / rad_fs_per_thz; }

}  // namespace plexsim::units
