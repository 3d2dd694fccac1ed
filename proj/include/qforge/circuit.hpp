#pragma once

#include <cmath>
#include <stdexcept>

#include "qforge/constants.hpp"

namespace qforge {

// Single-mode circuit Hamiltonian
//   H = 4 E_C n^2 + (1/2) E_L phi^2 - E_J cos(phi - phi_diff)
// with all energies stored as E/h in GHz and the external phase bias
// phi_diff in radians (sweet spot at pi).
struct CircuitEnergies {
  double e_j = 0.0;       // Josephson energy, GHz
  double e_l = 0.0;       // inductive energy, GHz
  double e_c = 0.0;       // capacitive energy, GHz
  double phi_diff = kPi;  // external phase bias, rad

  CircuitEnergies(double ej, double el, double ec, double phi = kPi)
      : e_j(ej), e_l(el), e_c(ec), phi_diff(phi) {
    if (!(e_j >= 0.0))
      throw std::domain_error("CircuitEnergies: e_j must be >= 0");
    if (!(e_l >= 0.0))
      throw std::domain_error("CircuitEnergies: e_l must be >= 0");
    if (!(e_c > 0.0))
      throw std::domain_error("CircuitEnergies: e_c must be > 0");
  }

  bool single_well() const { return e_l >= e_j; }
  bool at_sweet_spot(double tol = 1e-9) const {
    return std::abs(phi_diff - kPi) <= tol;
  }
};

// Rescaled quadratic/quartic potential coefficients
//   eps2 = (E_L - E_J) / (4 E_C),  eps4 = E_J / (4 E_C).
struct DimensionlessPotential {
  double eps2 = 0.0;
  double eps4 = 0.0;

  DimensionlessPotential(double e2, double e4) : eps2(e2), eps4(e4) {
    if (!(eps2 >= 0.0) || !(eps4 >= 0.0))
      throw std::domain_error("DimensionlessPotential: eps2, eps4 must be >= 0");
    if (eps2 == 0.0 && eps4 == 0.0)
      throw std::domain_error("DimensionlessPotential: eps2 = eps4 = 0 is degenerate");
  }
};

// 1/f flux-noise and dielectric-loss environment.
struct NoiseEnvironment {
  double a_phi = 15e-6;     // flux-noise PSD amplitude at 1 Hz, units of Phi0
  double q_diel = 3.5e5;    // dielectric quality factor
  double temperature = 0.025;  // K
  double omega_ir = 1e3;    // infrared cutoff, rad/s
  double nu = 1.0;          // pulse parameter in t_g = 2 pi nu / |alpha|

  NoiseEnvironment() = default;
  NoiseEnvironment(double a, double q, double temp, double wir = 1e3,
                   double nu_ = 1.0)
      : a_phi(a), q_diel(q), temperature(temp), omega_ir(wir), nu(nu_) {
    if (!(a_phi > 0.0) || !(q_diel > 0.0) || !(temperature > 0.0) ||
        !(omega_ir > 0.0) || !(nu > 0.0))
      throw std::domain_error("NoiseEnvironment: all fields must be > 0");
  }
};

inline DimensionlessPotential to_dimensionless(const CircuitEnergies& c) {
  if (c.e_l < c.e_j)
    throw std::domain_error(
        "to_dimensionless: e_l < e_j (double-well regime not supported)");
  return DimensionlessPotential((c.e_l - c.e_j) / (4.0 * c.e_c),
                                c.e_j / (4.0 * c.e_c));
}

// Inverse of to_dimensionless for a chosen capacitive energy:
//   e_l = 4 e_c (eps2 + eps4),  e_j = 4 e_c eps4.
inline CircuitEnergies energies_from_dimensionless(
    const DimensionlessPotential& p, double e_c, double phi_diff = kPi) {
  return CircuitEnergies(4.0 * e_c * p.eps4, 4.0 * e_c * (p.eps2 + p.eps4),
                         e_c, phi_diff);
}

// Qubit mode impedance Z = R_K / (4 pi) * sqrt(2 E_C / E_L), in ohms.
inline double impedance(const CircuitEnergies& c) {
  if (!(c.e_l > 0.0))
    throw std::domain_error("impedance: undefined for e_l = 0");
  return kVonKlitzingOhm / (4.0 * kPi) * std::sqrt(2.0 * c.e_c / c.e_l);
}

// Characteristic impedance Z0 = Z / sqrt(12) of a CPW resonator with the
// junction in the middle.
inline double cpw_characteristic_impedance(double z_ohm) {
  if (!(z_ohm > 0.0))
    throw std::domain_error("cpw_characteristic_impedance: z must be > 0");
  return z_ohm / std::sqrt(12.0);
}

}  // namespace qforge
