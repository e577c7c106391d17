#pragma once

#include <numbers>

// Unit system used throughout: lengths in nm, times in s, energies in meV.
// Masses are meV s^2/nm^2, velocities nm/s, wavenumbers 1/nm.

namespace gdiff::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double deg = pi / 180.0;

inline constexpr double hbar = 6.582119569e-13;     // meV s
inline constexpr double amu = 1.03642696e-23;       // meV s^2 / nm^2
inline constexpr double mass_he4 = 4.002602 * amu;  // meV s^2 / nm^2
inline constexpr double m_per_s = 1.0e9;            // nm/s per m/s

} // namespace gdiff::units
