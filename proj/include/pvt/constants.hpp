#ifndef PVT_CONSTANTS_HPP
#define PVT_CONSTANTS_HPP

namespace pvt {

// CODATA 2018 values.
namespace constants {
inline constexpr double stefan_boltzmann = 5.670374419e-8; // W/m^2.K^4
inline constexpr double boltzmann        = 1.380649e-23;   // J/K
inline constexpr double elementary_charge = 1.602176634e-19; // C
inline constexpr double silicon_band_gap = 1.12;           // eV, crystalline Si
inline constexpr double zero_celsius     = 273.15;         // K
} // namespace constants

inline constexpr double to_kelvin(double celsius) { return celsius + constants::zero_celsius; }
inline constexpr double to_celsius(double kelvin) { return kelvin - constants::zero_celsius; }

} // namespace pvt

#endif
