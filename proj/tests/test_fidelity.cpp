// Gate-duration models and the average gate infidelity pipeline.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qforge/design_space.hpp"
#include "qforge/fidelity.hpp"

using namespace qforge;
using Catch::Approx;

TEST_CASE("gate duration from anharmonicity") {
  // alpha/2pi = 0.5 GHz at nu = 1 gives exactly 2 ns
  const GatePlan p = gate_duration(ghz_to_rad_per_s(0.5), 1.0);
  CHECK(p.t_g == Approx(2e-9).epsilon(1e-14));
  CHECK(p.limiting_scale == LimitingScale::anharmonicity);
  // optimized pulses at nu = 1.3 scale the duration by 1.3
  CHECK(gate_duration(ghz_to_rad_per_s(0.5), 1.3).t_g ==
        Approx(2.6e-9).epsilon(1e-14));
  CHECK_THROWS_AS(gate_duration(0.0, 1.0), ZeroAnharmonicityError);
}

TEST_CASE("gate speed limit picks the smaller scale") {
  // fluxonium-like: f01 well below |alpha| -> limit is one qubit period
  const double w = ghz_to_rad_per_s(0.3), a = ghz_to_rad_per_s(5.3);
  CHECK(gate_speed_limit(w, a) == Approx(1.0 / 0.3e9).epsilon(1e-12));
  // transmon-like: |alpha| far below omega01
  CHECK(gate_speed_limit(ghz_to_rad_per_s(4.5), ghz_to_rad_per_s(0.2)) ==
        Approx(2.0 * kPi / ghz_to_rad_per_s(0.2)).epsilon(1e-12));
  // tie
  CHECK(gate_speed_limit(1e9, 1e9) == Approx(2.0 * kPi / 1e9).epsilon(1e-12));
  CHECK_THROWS_AS(gate_speed_limit(0.0, 1.0), std::domain_error);
}

TEST_CASE("infidelity closed-form limits") {
  CHECK(average_gate_infidelity(0.0, 1e-9, 1.0) == Approx(0.0).margin(1e-15));
  // series: E ~ Gamma1 t / 3 for small Gamma1 t with a perfect envelope
  for (double x : {1e-6, 1e-5, 1e-4}) {
    const double e = average_gate_infidelity(x / 1e-9, 1e-9, 1.0);
    CHECK(e == Approx(x / 3.0).epsilon(1e-3));
  }
  // depolarizing bounds: 0 <= E <= 2/3 over the whole parameter range
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double gt = std::pow(10.0, -6.0 + 8.0 * u(rng));
    const double re = -1.0 + 2.0 * u(rng);
    const double e = average_gate_infidelity(gt / 1e-9, 1e-9, re);
    CHECK(e >= 0.0);
    CHECK(e <= 2.0 / 3.0 + 1e-12);
  }
}

TEST_CASE("infidelity is monotone in the relaxation rate") {
  double prev = -1.0;
  for (double g : {1e2, 1e3, 1e4, 1e5, 1e6, 1e7}) {
    const double e = average_gate_infidelity(g, 2e-9, 0.9);
    CHECK(e > prev);
    prev = e;
  }
}

TEST_CASE("infidelity pipeline equals its manual composition") {
  const CircuitEnergies c(19.0, 25.2, 0.297);
  const NoiseEnvironment env;
  const InfidelityBreakdown b = infidelity_at(c, env);

  const Spectrum s = diagonalize(c, 3);
  const RelaxationBreakdown rb = relaxation_breakdown(c, env, s);
  const double kappa = flux_curvature_from_spectrum(c, s);
  const double t_g = gate_duration(
      ghz_to_rad_per_s((s.energies[2] - s.energies[1]) -
                       (s.energies[1] - s.energies[0])), env.nu).t_g;
  const double re = dephasing_envelope(t_g, kappa, env).real();
  const double expect = average_gate_infidelity(rb.gamma1_total, t_g, re);
  CHECK(b.infidelity == expect);  // same code path, bit-identical
  CHECK(b.t_g == t_g);
  CHECK(b.envelope_re == re);
}

TEST_CASE("pipeline at the measured device and at the optimum") {
  const NoiseEnvironment env;
  const InfidelityBreakdown dev =
      infidelity_at(CircuitEnergies(19.0, 25.2, 0.297), env);
  // first-device territory: infidelity of order 1e-4..1e-3
  CHECK(dev.infidelity > 5e-5);
  CHECK(dev.infidelity < 5e-3);

  const CircuitEnergies opt =
      design_to_energies(DesignPoint(4.5, 1.0, 1000.0), true);
  const InfidelityBreakdown best = infidelity_at(opt, env);
  // optimal point reaches ~2e-5 (within a factor of two)
  CHECK(best.infidelity > 1e-5);
  CHECK(best.infidelity < 4e-5);
  CHECK(best.infidelity < dev.infidelity);
}

TEST_CASE("pipeline error paths") {
  const NoiseEnvironment env;
  // harmonic input: no anharmonicity, no gate
  CHECK_THROWS_AS(infidelity_at(CircuitEnergies(0.0, 25.2, 0.297), env),
                  ZeroAnharmonicityError);
  // double well rejected
  CHECK_THROWS_AS(infidelity_at(CircuitEnergies(6.27, 0.80, 1.41), env),
                  std::domain_error);
  // off sweet spot rejected
  CHECK_THROWS_AS(infidelity_at(CircuitEnergies(19.0, 25.2, 0.297, 1.0), env),
                  std::domain_error);
}

TEST_CASE("strict vs plot envelope handling") {
  // an artificially large infrared cutoff pushes t_g out of the envelope
  // domain: strict errors, plot clamps and flags
  const CircuitEnergies c(19.0, 25.2, 0.297);
  const NoiseEnvironment bad_ir(15e-6, 3.5e5, 0.025, 1e13);
  CHECK_THROWS_AS(infidelity_at(c, bad_ir, EnvelopeMode::strict),
                  EnvelopeDomainError);
  const InfidelityBreakdown b = infidelity_at(c, bad_ir, EnvelopeMode::plot);
  CHECK(b.envelope_clamped);
  CHECK(std::isfinite(b.infidelity));
}

TEST_CASE("doubling the quality factor strictly lowers the infidelity") {
  const CircuitEnergies c(19.0, 25.2, 0.297);
  const NoiseEnvironment base;
  const NoiseEnvironment better(base.a_phi, 2.0 * base.q_diel, base.temperature);
  CHECK(infidelity_at(c, better).infidelity < infidelity_at(c, base).infidelity);
}
