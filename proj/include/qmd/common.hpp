#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace qmd {

using complex_t = std::complex<double>;

namespace units {
/// CODATA: one atomic mass unit in electron masses.
inline constexpr double amu_in_electron_masses = 1822.888486;
/// 1 Hartree expressed in wavenumbers (cm^-1).
inline constexpr double hartree_in_cm1 = 219474.63;

inline double amu_to_au(double mass_amu) { return mass_amu * amu_in_electron_masses; }
inline double cm1_to_hartree(double wavenumber) { return wavenumber / hartree_in_cm1; }
}  // namespace units

}  // namespace qmd
