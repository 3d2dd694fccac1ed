#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "qforge/circuit.hpp"
#include "qforge/coherence.hpp"
#include "qforge/constants.hpp"
#include "qforge/eigensolver.hpp"

// Average single-qubit gate infidelity from decoherence and the gate
// duration models tying it to the anharmonicity.
namespace qforge {

enum class LimitingScale { anharmonicity, frequency };

struct GatePlan {
  double t_g = 0.0;  // s
  double nu = 1.0;
  LimitingScale limiting_scale = LimitingScale::anharmonicity;
};

struct ZeroAnharmonicityError : std::domain_error {
  using std::domain_error::domain_error;
};

// t_g = 2 pi nu / |alpha| with alpha in rad/s.
inline GatePlan gate_duration(double alpha, double nu) {
  if (alpha == 0.0)
    throw ZeroAnharmonicityError(
        "gate_duration: zero anharmonicity (harmonic system is unusable as a qubit)");
  return {2.0 * kPi * nu / std::abs(alpha), nu, LimitingScale::anharmonicity};
}

// Approximate microwave-gate speed limit 2 pi / min(omega01, |alpha|).
inline double gate_speed_limit(double omega01, double alpha) {
  if (!(omega01 > 0.0) || !(std::abs(alpha) > 0.0))
    throw std::domain_error("gate_speed_limit: omega01 and alpha must be nonzero");
  return 2.0 * kPi / std::min(omega01, std::abs(alpha));
}

// E_bar = 1 - (1/6) { 3 + e^{-Gamma1 t_g} + 2 e^{-Gamma1 t_g / 2} Re f(t_g) }.
inline double average_gate_infidelity(double gamma1, double t_g,
                                      double envelope_re) {
  if (!(gamma1 >= 0.0)) throw std::domain_error("average_gate_infidelity: gamma1 < 0");
  if (!(t_g > 0.0)) throw std::domain_error("average_gate_infidelity: t_g <= 0");
  if (!(std::abs(envelope_re) <= 1.0))
    throw std::domain_error("average_gate_infidelity: |Re f| > 1");
  const double x = gamma1 * t_g;
  return 1.0 - (3.0 + std::exp(-x) + 2.0 * std::exp(-0.5 * x) * envelope_re) / 6.0;
}

enum class EnvelopeMode {
  strict,  // Eq.-38 domain violations are errors
  plot     // Re f clamped to its domain-boundary value, cell flagged
};

// Full pipeline record: spectrum -> matrix elements -> Gamma1 -> kappa ->
// t_g -> envelope -> infidelity.
struct InfidelityBreakdown {
  CircuitEnergies energies{0.0, 0.0, 1.0};
  double f01 = 0.0;    // GHz, numeric
  double alpha = 0.0;  // GHz, numeric
  RelaxationBreakdown relaxation;
  DephasingModel dephasing;
  double t_g = 0.0;          // s
  double envelope_re = 1.0;  // Re f(t_g)
  double infidelity = 0.0;
  bool envelope_clamped = false;  // plot mode only
};

inline InfidelityBreakdown infidelity_at(const CircuitEnergies& c,
                                         const NoiseEnvironment& env,
                                         EnvelopeMode mode = EnvelopeMode::strict) {
  if (!c.at_sweet_spot())
    throw std::domain_error("infidelity_at: requires phi_diff = pi");
  if (!c.single_well())
    throw std::domain_error("infidelity_at: requires e_l >= e_j");

  InfidelityBreakdown r;
  r.energies = c;
  const Spectrum s = diagonalize(c, 3);
  r.f01 = s.energies[1] - s.energies[0];
  r.alpha = (s.energies[2] - s.energies[1]) - r.f01;
  r.relaxation = relaxation_breakdown(c, env, s);
  const double kappa = c.e_j == 0.0 ? 0.0 : flux_curvature_from_spectrum(c, s);
  r.dephasing = dephasing_model(kappa, env);

  r.t_g = gate_duration(ghz_to_rad_per_s(r.alpha), env.nu).t_g;

  double t_eval = r.t_g;
  const double rate = std::abs(kappa) * env.a_phi * env.a_phi;
  const double t_max = std::min(rate > 0.0 ? 2.0 / rate
                                           : std::numeric_limits<double>::infinity(),
                                1.0 / env.omega_ir);
  if (!(t_eval < t_max)) {
    if (mode == EnvelopeMode::strict)
      throw EnvelopeDomainError(
          "infidelity_at: gate duration outside the dephasing-envelope domain");
    t_eval = 0.999999 * t_max;
    r.envelope_clamped = true;
  }
  r.envelope_re = kappa == 0.0 ? 1.0 : dephasing_envelope(t_eval, kappa, env).real();
  r.infidelity =
      average_gate_infidelity(r.relaxation.gamma1_total, r.t_g, r.envelope_re);
  return r;
}

}  // namespace qforge
