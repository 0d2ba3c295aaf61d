#pragma once

#include <numbers>

namespace ommsim {

/// Fundamental constants (SI) plus the material constants of the
/// YIG micro-bridge platform. Only spin_density is meant to be
/// overridden; everything else is fixed at its CODATA value.
struct PhysicalConstants {
    double hbar = 1.054571817e-34;               // J s
    double k_boltzmann = 1.380649e-23;           // J/K
    double mu0 = 4.0e-7 * std::numbers::pi;      // T m/A
    double c_light = 299792458.0;                // m/s
    double gyromagnetic_ratio = 2.0 * std::numbers::pi * 28.0e9;  // rad/s per T
    double spin_density = 4.22e27;               // 1/m^3
};

inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace ommsim
