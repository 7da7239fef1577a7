#pragma once

#include <numbers>

//! Physical constants (CODATA 2018) and unit conventions.
//!
//! Everything in the library is expressed in Hartree atomic units:
//! electron mass, reduced Planck constant and elementary charge are 1 and the
//! speed of light is 1/alpha.  The bound-state momentum scale of a
//! hydrogenic 1s electron is then simply the nuclear charge Z.
namespace coalesce::constants
{
inline constexpr double pi = std::numbers::pi;

//! Fine-structure constant.
inline constexpr double fine_structure = 7.2973525693e-3;

//! Electron mass in unified atomic mass units (electron/nucleon ratio).
inline constexpr double electron_to_nucleon_mass = 5.4857990907e-4;

//! Hartree energy in eV.
inline constexpr double hartree_ev = 27.211386245988;

inline constexpr double ev_per_mev = 1.0e6;

}  // namespace coalesce::constants
