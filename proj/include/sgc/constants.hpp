#pragma once

// CODATA 2018 / SI 2019 values, fixed so that outputs are bit-reproducible.
namespace sgc::constants {

inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double epsilon0 = 8.8541878128e-12;  // F m^-1
inline constexpr double mu0 = 1.25663706212e-6;       // N A^-2
inline constexpr double c = 2.99792458e8;             // m s^-1
inline constexpr double bohr_magneton = 9.274e-24;    // J T^-1, default magnetic dipole

}  // namespace sgc::constants
