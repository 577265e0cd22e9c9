#pragma once

#include <stdexcept>
#include <string>

// Natural-unit conventions: energies in eV, lengths and times in eV^-1.
// Conversions to metric happen only at the I/O boundary.

namespace nucorr::units {

// hbar*c, CODATA
inline constexpr double hbar_c_ev_m = 1.973269804e-7;  // eV * m

inline constexpr double ev_per_gev = 1.0e9;
inline constexpr double m_per_km = 1.0e3;

inline constexpr double meters_to_natural(double m) { return m / hbar_c_ev_m; }
inline constexpr double natural_to_meters(double inv_ev) { return inv_ev * hbar_c_ev_m; }

inline constexpr double km_to_natural(double km) { return meters_to_natural(km * m_per_km); }
inline constexpr double natural_to_km(double inv_ev) { return natural_to_meters(inv_ev) / m_per_km; }

inline constexpr double gev_to_ev(double gev) { return gev * ev_per_gev; }

// Parses a length with a unit tag: "1e-9m", "100km" or "5e12/eV".
// Returns the value in natural units (eV^-1).
double parse_length(const std::string& text);

}  // namespace nucorr::units
