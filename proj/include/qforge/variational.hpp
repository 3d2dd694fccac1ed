#pragma once

#include <cmath>
#include <stdexcept>

#include "qforge/circuit.hpp"
#include "qforge/constants.hpp"
#include "qforge/errors.hpp"

// Closed-form variational approximation of the three lowest eigenstates of
// the single-well Hamiltonian at the half-flux sweet spot.  The ansatz
// states are harmonic-oscillator-like wavefunctions with independently
// optimized Gaussian widths theta_n; each width solves a depressed cubic
//   theta^3 - (eps2/2) theta - (c_n/24) eps4 = 0,   c_n = 3, 5, 7.
namespace qforge {

struct AnsatzWidths {
  double theta0 = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
};

struct VariationalSpectrum {
  double e0 = 0.0;     // GHz
  double e1 = 0.0;     // GHz
  double e2 = 0.0;     // GHz
  double f01 = 0.0;    // GHz
  double f12 = 0.0;    // GHz
  double alpha = 0.0;  // GHz, f12 - f01
};

namespace detail {
inline double cubic_coefficient(int level) {
  switch (level) {
    case 0: return 3.0;
    case 1: return 5.0;
    case 2: return 7.0;
    default: throw std::domain_error("theta_root: level must be 0, 1 or 2");
  }
}
}  // namespace detail

// Unique real positive root of the width cubic, selected by the
// trigonometric (three real roots) or hyperbolic (one real root) branch.
// The branch argument is (c_n sqrt(6) / 8) eps4 / eps2^(3/2); both branches
// coincide at argument 1.
inline double theta_root(int level, const DimensionlessPotential& p) {
  const double c = detail::cubic_coefficient(level);
  if (p.eps2 == 0.0) return 0.5 * std::cbrt(c * p.eps4 / 3.0);
  const double arg =
      c * std::sqrt(6.0) / 8.0 * p.eps4 / (p.eps2 * std::sqrt(p.eps2));
  const double s = std::sqrt(6.0 * p.eps2) / 3.0;
  if (arg <= 1.0) return s * std::cos(std::acos(arg) / 3.0);
  return s * std::cosh(std::acosh(arg) / 3.0);
}

inline AnsatzWidths ansatz_widths(const DimensionlessPotential& p) {
  return {theta_root(0, p), theta_root(1, p), theta_root(2, p)};
}

// Residual of the width cubic; vanishes at the exact root.
inline double theta_cubic_residual(int level, double theta,
                                   const DimensionlessPotential& p) {
  const double c = detail::cubic_coefficient(level);
  return theta * theta * theta - 0.5 * p.eps2 * theta - c / 24.0 * p.eps4;
}

// Full septic equation for theta2, arising from the orthogonality of psi2
// against psi0.  Used only as a validation oracle for theta_root(2, .).
inline double septic_value(double t2, double t0,
                           const DimensionlessPotential& p) {
  const double p0 = (t0 + 3.0 * t2) *
                    (7.0 * t0 * t0 * t0 + 15.0 * t0 * t0 * t2 +
                     5.0 * t0 * t2 * t2 + 5.0 * t2 * t2 * t2);
  const double p1 = (3.0 * t0 + t2) *
                    (5.0 * t0 * t0 * t0 + 5.0 * t0 * t0 * t2 +
                     15.0 * t0 * t2 * t2 + 7.0 * t2 * t2 * t2);
  const double p2 = 105.0 * t0 * t0 * t0 * t0 + 180.0 * t0 * t0 * t0 * t2 +
                    310.0 * t0 * t0 * t2 * t2 + 244.0 * t0 * t2 * t2 * t2 +
                    57.0 * t2 * t2 * t2 * t2;
  return t2 * t2 * t2 * p0 - 0.5 * p.eps2 * t2 * p1 - p.eps4 / 24.0 * p2;
}

// Bracketed bisection for the physical root of the septic, starting from
// [theta0/2, 4 theta0] and expanding to [1e-9, 1e9] if no sign change is
// found.  If the bracket contains several crossings, the one nearest the
// cubic-approximation root is refined.
inline double septic_root_theta2(double theta0,
                                 const DimensionlessPotential& p) {
  if (!(theta0 > 0.0))
    throw std::domain_error("septic_root_theta2: theta0 must be > 0");
  const double guess = theta_root(2, p);

  double lo = theta0 / 2.0, hi = 4.0 * theta0;
  const int segments = 64;
  auto find_bracket = [&](double a, double b, double& ba, double& bb) {
    // log-spaced scan; pick the sign-change segment closest to the guess
    const double la = std::log(a), lb = std::log(b);
    double best = -1.0, best_dist = 0.0;
    double xprev = a, fprev = septic_value(a, theta0, p);
    for (int i = 1; i <= segments; ++i) {
      const double x = std::exp(la + (lb - la) * i / segments);
      const double f = septic_value(x, theta0, p);
      if ((fprev <= 0.0 && f >= 0.0) || (fprev >= 0.0 && f <= 0.0)) {
        const double mid = 0.5 * (xprev + x);
        const double dist = std::abs(std::log(mid / guess));
        if (best < 0.0 || dist < best_dist) {
          best = 1.0;
          best_dist = dist;
          ba = xprev;
          bb = x;
        }
      }
      xprev = x;
      fprev = f;
    }
    return best > 0.0;
  };

  double ba = 0.0, bb = 0.0;
  while (!find_bracket(lo, hi, ba, bb)) {
    lo /= 2.0;
    hi *= 2.0;
    if (lo < 1e-9 || hi > 1e9)
      throw SolverError(
          "septic_root_theta2: no sign change found in [1e-9, 1e9]");
  }
  double fa = septic_value(ba, theta0, p);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (ba + bb);
    if (mid == ba || mid == bb) break;
    const double fm = septic_value(mid, theta0, p);
    if ((fa <= 0.0 && fm <= 0.0) || (fa >= 0.0 && fm >= 0.0)) {
      ba = mid;
      fa = fm;
    } else {
      bb = mid;
    }
  }
  return 0.5 * (ba + bb);
}

// Variational eigenenergies of the full (untruncated) sweet-spot
// Hamiltonian evaluated on the quartic-optimized ansatz states:
//   E0 = 2 t0 E_C + E_L/(4 t0) + e^{-1/(4 t0)} E_J
//   E1 = 6 t1 E_C + 3 E_L/(4 t1) + (1 - 1/(2 t1)) e^{-1/(4 t1)} E_J
//   E2 = 2 A t2 E_C + B E_L/(4 t2)
//        + (1 - C/t2 + D/t2^2) e^{-1/(4 t2)} E_J
// with exact rational coefficients A, B, C, D in t0, t2.
inline VariationalSpectrum variational_energies(const CircuitEnergies& c) {
  if (!c.at_sweet_spot())
    throw std::domain_error("variational_energies: requires phi_diff = pi");
  if (!c.single_well())
    throw std::domain_error("variational_energies: requires e_l >= e_j");
  const DimensionlessPotential p = to_dimensionless(c);
  const AnsatzWidths w = ansatz_widths(p);
  const double t0 = w.theta0, t1 = w.theta1, t2 = w.theta2;

  const double e0 = 2.0 * t0 * c.e_c + c.e_l / (4.0 * t0) +
                    std::exp(-1.0 / (4.0 * t0)) * c.e_j;
  const double e1 = 6.0 * t1 * c.e_c + 3.0 * c.e_l / (4.0 * t1) +
                    (1.0 - 1.0 / (2.0 * t1)) * std::exp(-1.0 / (4.0 * t1)) * c.e_j;

  const double den = 3.0 * t0 * t0 + 2.0 * t0 * t2 + 3.0 * t2 * t2;
  const double A = (7.0 * t0 * t0 + 18.0 * t0 * t2 + 15.0 * t2 * t2) / den;
  const double B = (15.0 * t0 * t0 + 18.0 * t0 * t2 + 7.0 * t2 * t2) / den;
  const double C = (3.0 * t0 * t0 + 4.0 * t0 * t2 + t2 * t2) / den;
  const double D = (t0 * t0 + 2.0 * t0 * t2 + t2 * t2) / (4.0 * den);
  const double e2 = 2.0 * A * t2 * c.e_c + B * c.e_l / (4.0 * t2) +
                    (1.0 - C / t2 + D / (t2 * t2)) *
                        std::exp(-1.0 / (4.0 * t2)) * c.e_j;

  VariationalSpectrum s;
  s.e0 = e0;
  s.e1 = e1;
  s.e2 = e2;
  s.f01 = e1 - e0;
  s.f12 = e2 - e1;
  s.alpha = s.f12 - s.f01;
  return s;
}

// Normalized ansatz wavefunction value at phi (dimensionless phase).
inline double ansatz_value(int level, const AnsatzWidths& w, double phi) {
  switch (level) {
    case 0: {
      const double t = w.theta0;
      return std::pow(t / kPi, 0.25) * std::exp(-0.5 * t * phi * phi);
    }
    case 1: {
      const double t = w.theta1;
      return std::pow(t / kPi, 0.25) * std::sqrt(2.0 * t) * phi *
             std::exp(-0.5 * t * phi * phi);
    }
    case 2: {
      const double t0 = w.theta0, t2 = w.theta2;
      const double den =
          std::sqrt(3.0 * t0 * t0 + 2.0 * t0 * t2 + 3.0 * t2 * t2);
      return std::pow(t2 / kPi, 0.25) * 2.0 * t2 *
             ((t0 + t2) * phi * phi - 1.0) / den *
             std::exp(-0.5 * t2 * phi * phi);
    }
    default:
      throw std::domain_error("ansatz_value: level must be 0, 1 or 2");
  }
}

}  // namespace qforge
