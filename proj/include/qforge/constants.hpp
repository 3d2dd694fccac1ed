#pragma once

// Physical constants (CODATA 2018 exact values where defined) and the unit
// conventions used throughout the library:
//   - circuit energies are stored as E/h in GHz
//   - angular frequencies are rad/s and appear only at coherence-model
//     boundaries
//   - magnetic flux is measured in units of the flux quantum Phi0, so flux
//     noise amplitudes and curvatures are per Phi0 and per Phi0^2
namespace qforge {

inline constexpr double kPlanck = 6.62607015e-34;         // J s
inline constexpr double kHbar = 1.0545718176461565e-34;   // J s
inline constexpr double kBoltzmann = 1.380649e-23;        // J / K
inline constexpr double kVonKlitzingOhm = 25812.807;      // ohm, R_K = h / e^2
inline constexpr double kPi = 3.14159265358979323846;

// E/h in GHz -> angular frequency in rad/s
inline constexpr double ghz_to_rad_per_s(double f_ghz) {
  return 2.0 * kPi * f_ghz * 1e9;
}

inline constexpr double rad_per_s_to_ghz(double omega) {
  return omega / (2.0 * kPi * 1e9);
}

}  // namespace qforge
