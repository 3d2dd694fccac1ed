#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "qforge/circuit.hpp"
#include "qforge/constants.hpp"
#include "qforge/eigensolver.hpp"
#include "qforge/errors.hpp"

// Relaxation and dephasing models: Gamma1 decomposition into 1/f flux noise
// and dielectric loss, the nonexponential sweet-spot dephasing envelope,
// its quasirate, and the first-order dephasing time used off sweet spot.
//
// Unit convention for the noise couplings: energies enter these formulas as
// angular frequencies E/hbar (rad/s), which absorbs the hbar factors of the
// textbook forms.  Concretely
//   mu_hat  = hbar^2 mu  = 8 pi^3 (A_Phi / Phi0)^2            (dimensionless)
//   eta_hat = hbar  eta  = 16 / Q_diel                        (dimensionless)
//   Gamma1_flux = mu_hat  (E_L/hbar)^2 |<0|phi|1>|^2 / omega01
//   Gamma1_diel = eta_hat (E_C/hbar) |<0|n|1>|^2 coth(hbar omega01 / 2 kB T)
// The end-to-end unit check is the flux-noise-limited T1 of the Table II
// qubits reproduced in the test suite.
namespace qforge {

struct RelaxationBreakdown {
  double gamma1_flux = 0.0;   // 1/s
  double gamma1_diel = 0.0;   // 1/s
  double gamma1_total = 0.0;  // 1/s
  double t1 = 0.0;            // s
};

struct DephasingModel {
  double kappa = 0.0;        // rad/s per Phi0^2
  double quasirate = 0.0;    // 1/s, 2 kappa A^2
  double t_phi_tilde = 0.0;  // s
};

// mu in the hbar-absorbed convention above (dimensionless; quadratic in the
// noise amplitude).
inline double mu_from_psd(double a_phi) {
  if (!(a_phi > 0.0)) throw std::domain_error("mu_from_psd: a_phi must be > 0");
  return 8.0 * kPi * kPi * kPi * a_phi * a_phi;
}

// eta in the hbar-absorbed convention above (dimensionless).
inline double eta_from_q(double q_diel) {
  if (!(q_diel > 0.0)) throw std::domain_error("eta_from_q: q_diel must be > 0");
  return 16.0 / q_diel;
}

// 1/f flux-noise relaxation rate; phi01 = |<0|phi|1>|, omega01 in rad/s.
inline double gamma1_flux(const CircuitEnergies& c, const NoiseEnvironment& env,
                          double phi01, double omega01) {
  if (!(omega01 > 0.0)) throw std::domain_error("gamma1_flux: omega01 must be > 0");
  const double el_ang = ghz_to_rad_per_s(c.e_l);
  return mu_from_psd(env.a_phi) * el_ang * el_ang * phi01 * phi01 / omega01;
}

// Dielectric relaxation rate; n01 = |<0|n|1>|.
inline double gamma1_diel(const CircuitEnergies& c, const NoiseEnvironment& env,
                          double n01, double omega01) {
  if (!(omega01 > 0.0)) throw std::domain_error("gamma1_diel: omega01 must be > 0");
  const double ec_ang = ghz_to_rad_per_s(c.e_c);
  const double x = kHbar * omega01 / (2.0 * kBoltzmann * env.temperature);
  return eta_from_q(env.q_diel) * ec_ang * n01 * n01 / std::tanh(x);
}

// Both channels from a diagonalized spectrum.
inline RelaxationBreakdown relaxation_breakdown(const CircuitEnergies& c,
                                                const NoiseEnvironment& env,
                                                const Spectrum& s) {
  const double omega01 = ghz_to_rad_per_s(s.energies[1] - s.energies[0]);
  RelaxationBreakdown r;
  r.gamma1_flux = gamma1_flux(c, env, matrix_element_phi(s, 0, 1), omega01);
  r.gamma1_diel = gamma1_diel(c, env, matrix_element_n(s, 0, 1), omega01);
  r.gamma1_total = r.gamma1_flux + r.gamma1_diel;
  r.t1 = 1.0 / r.gamma1_total;
  return r;
}

inline DephasingModel dephasing_model(double kappa, const NoiseEnvironment& env) {
  DephasingModel m;
  m.kappa = kappa;
  m.quasirate = 2.0 * std::abs(kappa) * env.a_phi * env.a_phi;
  m.t_phi_tilde = m.quasirate > 0.0
                      ? 1.0 / m.quasirate
                      : std::numeric_limits<double>::infinity();
  return m;
}

// Short-time quadratic-coupling decay envelope
//   f(t) = [1 - 2 i kappa A^2 t ln(1/(omega_ir t))]^{-1/2},
// valid for t < 2/(kappa A^2) and omega_ir t < 1.  Violations are errors,
// not clamps.
inline std::complex<double> dephasing_envelope(double t, double kappa,
                                               const NoiseEnvironment& env) {
  if (!(t > 0.0)) throw EnvelopeDomainError("dephasing_envelope: t must be > 0");
  if (!(env.omega_ir * t < 1.0))
    throw EnvelopeDomainError("dephasing_envelope: omega_ir * t >= 1");
  const double rate = std::abs(kappa) * env.a_phi * env.a_phi;
  if (rate > 0.0 && !(t < 2.0 / rate))
    throw EnvelopeDomainError("dephasing_envelope: t >= (kappa A^2 / 2)^-1");
  const double x =
      2.0 * kappa * env.a_phi * env.a_phi * t * std::log(1.0 / (env.omega_ir * t));
  return 1.0 / std::sqrt(std::complex<double>(1.0, -x));
}

struct FirstOrderDephasing {
  double t_phi = 0.0;     // s; +inf when diverged
  bool diverged = false;  // slope negligible, second order dominates
  int iterations = 0;
};

// First-order (linear-coupling) Gaussian 1/f dephasing time
//   T_phi = [ A |d omega01 / d Phi| sqrt(2 ln(1/(omega_ir T_phi))) ]^{-1}
// solved self-consistently for the slowly varying log factor.  Flagged as
// diverged when the slope is so small that the fixed point leaves the
// omega_ir t < 1 domain (the first-order contribution is then negligible).
inline FirstOrderDephasing first_order_dephasing_time(
    double d_omega_d_phi, const NoiseEnvironment& env, double t_scale = 1e-6) {
  FirstOrderDephasing r;
  const double s = std::abs(d_omega_d_phi);
  if (s == 0.0) {
    r.t_phi = std::numeric_limits<double>::infinity();
    r.diverged = true;
    return r;
  }
  double t = t_scale;
  for (int it = 1; it <= 20; ++it) {
    r.iterations = it;
    const double arg = env.omega_ir * t;
    if (!(arg < 1.0)) {
      r.t_phi = std::numeric_limits<double>::infinity();
      r.diverged = true;
      return r;
    }
    const double next =
        1.0 / (env.a_phi * s * std::sqrt(2.0 * std::log(1.0 / arg)));
    if (std::abs(next - t) <= 1e-3 * next) {
      r.t_phi = next;
      return r;
    }
    t = next;
  }
  r.t_phi = t;
  return r;
}

}  // namespace qforge
