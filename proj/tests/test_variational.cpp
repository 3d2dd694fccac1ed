// Variational widths, energies, and ansatz wavefunctions.
//
// Oracles used here:
//   - cubic residual of each width root, checked by direct substitution
//   - independent bisection on the full septic polynomial for theta2
//   - composite-Simpson quadrature for normalization and orthogonality
//   - the exact harmonic-oscillator limit f01 = sqrt(8 E_C E_L), alpha = 0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <random>

#include "qforge/variational.hpp"

using namespace qforge;
using Catch::Approx;

namespace {

// composite Simpson on [a, b]; n must be even
double simpson(const std::function<double(double)>& f, double a, double b,
               int n = 4000) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("theta roots in closed-form limits") {
  // pure quartic: theta0 = (1/2) eps4^(1/3)
  CHECK(theta_root(0, DimensionlessPotential(0.0, 8.0)) == Approx(1.0).epsilon(1e-14));
  // harmonic: every width equals sqrt(eps2 / 2)
  const DimensionlessPotential h(2.0, 0.0);
  CHECK(theta_root(0, h) == Approx(1.0).epsilon(1e-12));
  CHECK(theta_root(1, h) == Approx(1.0).epsilon(1e-12));
  CHECK(theta_root(2, h) == Approx(1.0).epsilon(1e-12));
  // pure quartic upper widths: (1/2)(5 eps4 / 3)^(1/3), (1/2)(7 eps4 / 3)^(1/3)
  CHECK(theta_root(1, DimensionlessPotential(0.0, 24.0)) ==
        Approx(0.5 * std::cbrt(40.0)).epsilon(1e-14));
  CHECK(theta_root(2, DimensionlessPotential(0.0, 24.0)) ==
        Approx(0.5 * std::cbrt(56.0)).epsilon(1e-14));
}

TEST_CASE("root residuals vanish across the parameter range") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    const DimensionlessPotential p(std::pow(10.0, u(rng)), std::pow(10.0, u(rng)));
    const double scale = std::max({1.0, std::pow(p.eps2, 1.5), p.eps4});
    for (int level = 0; level < 3; ++level) {
      const double t = theta_root(level, p);
      REQUIRE(t > 0.0);
      CHECK(std::abs(theta_cubic_residual(level, t, p)) < 1e-10 * scale);
    }
  }
}

TEST_CASE("widths are ordered theta0 <= theta1 <= theta2") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    const DimensionlessPotential p(std::pow(10.0, u(rng)), std::pow(10.0, u(rng)));
    const AnsatzWidths w = ansatz_widths(p);
    CHECK(w.theta0 <= w.theta1 * (1.0 + 1e-14));
    CHECK(w.theta1 <= w.theta2 * (1.0 + 1e-14));
  }
}

TEST_CASE("cos and cosh branches agree at the branch point") {
  // eps4 chosen so the level-n argument is exactly 1: at the branch point
  // both expressions give sqrt(6 eps2)/3
  for (int level = 0; level < 3; ++level) {
    const double c = 2.0 * level + 3.0;
    const double eps2 = 2.0;
    const double eps4 = 8.0 * std::pow(eps2, 1.5) / (c * std::sqrt(6.0));
    const double t_at = theta_root(level, DimensionlessPotential(eps2, eps4));
    const double t_below =
        theta_root(level, DimensionlessPotential(eps2, eps4 * (1.0 - 1e-9)));
    const double t_above =
        theta_root(level, DimensionlessPotential(eps2, eps4 * (1.0 + 1e-9)));
    CHECK(t_below == Approx(t_at).epsilon(1e-8));
    CHECK(t_above == Approx(t_at).epsilon(1e-8));
    CHECK(t_at == Approx(std::sqrt(6.0 * eps2) / 3.0).epsilon(1e-9));
  }
}

TEST_CASE("degenerate potential is rejected") {
  // the potential type itself rejects eps2 = eps4 = 0
  CHECK_THROWS_AS(DimensionlessPotential(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(theta_root(3, DimensionlessPotential(1.0, 1.0)), std::domain_error);
}

TEST_CASE("septic oracle confirms the cubic theta2") {
  // harmonic limit: the septic solution collapses onto the cubic one
  {
    const DimensionlessPotential p(2.0, 1e-9);
    const double t0 = theta_root(0, p);
    CHECK(septic_root_theta2(t0, p) ==
          Approx(theta_root(2, p)).epsilon(1e-3));
  }
  // pure quartic
  {
    const DimensionlessPotential p(0.0, 24.0);
    const double t0 = theta_root(0, p);
    const double cubic = theta_root(2, p);
    const double septic = septic_root_theta2(t0, p);
    CHECK(std::abs(cubic - septic) / septic < 0.01);
  }
  // at the root, p1/p0 is near 1 and p2/p0 near 7
  {
    const DimensionlessPotential p(5.0, 50.0);
    const double t0 = theta_root(0, p);
    const double t2 = septic_root_theta2(t0, p);
    const double p0 = (t0 + 3 * t2) * (7 * t0 * t0 * t0 + 15 * t0 * t0 * t2 +
                                       5 * t0 * t2 * t2 + 5 * t2 * t2 * t2);
    const double p1 = (3 * t0 + t2) * (5 * t0 * t0 * t0 + 5 * t0 * t0 * t2 +
                                       15 * t0 * t2 * t2 + 7 * t2 * t2 * t2);
    const double p2 = 105 * std::pow(t0, 4) + 180 * t0 * t0 * t0 * t2 +
                      310 * t0 * t0 * t2 * t2 + 244 * t0 * t2 * t2 * t2 +
                      57 * std::pow(t2, 4);
    CHECK(p1 / p0 == Approx(1.0).margin(0.05));
    CHECK(p2 / p0 == Approx(7.0).margin(0.35));
  }
}

TEST_CASE("variational energies: harmonic limit is exact") {
  const CircuitEnergies c(0.0, 25.2, 0.297);
  const VariationalSpectrum v = variational_energies(c);
  const double f01 = std::sqrt(8.0 * 0.297 * 25.2);
  CHECK(v.f01 == Approx(f01).epsilon(1e-12));
  CHECK(v.f12 == Approx(f01).epsilon(1e-12));
  CHECK(v.alpha == Approx(0.0).margin(1e-12));
  CHECK(v.e0 == Approx(0.5 * f01).epsilon(1e-12));
}

TEST_CASE("variational energies at the measured device") {
  const VariationalSpectrum v = variational_energies(CircuitEnergies(19.0, 25.2, 0.297));
  // frozen from an independent implementation of the same closed forms
  CHECK(v.f01 == Approx(4.487507).epsilon(2e-6));
  CHECK(v.f12 == Approx(4.975611).epsilon(2e-6));
  CHECK(v.alpha == Approx(0.488104).epsilon(1e-4));
  // within one percent of the measured 4.488 GHz
  CHECK(v.f01 == Approx(4.488).epsilon(0.01));
}

TEST_CASE("relative anharmonicity approaches one third in the quartic limit") {
  const CircuitEnergies c = energies_from_dimensionless(
      DimensionlessPotential(0.0, 10.0), 0.25);
  const VariationalSpectrum v = variational_energies(c);
  CHECK(v.alpha / v.f01 == Approx(1.0 / 3.0).margin(0.04));
}

TEST_CASE("variational preconditions") {
  CHECK_THROWS_AS(variational_energies(CircuitEnergies(19.0, 25.2, 0.297, 0.0)),
                  std::domain_error);
  CHECK_THROWS_AS(variational_energies(CircuitEnergies(6.27, 0.80, 1.41)),
                  std::domain_error);
}

TEST_CASE("ansatz wavefunctions are normalized and orthogonal") {
  const DimensionlessPotential p(5.2188552188552185, 15.993265993265993);
  const AnsatzWidths w = ansatz_widths(p);

  for (int n = 0; n < 3; ++n) {
    const double theta = n == 0 ? w.theta0 : (n == 1 ? w.theta1 : w.theta2);
    const double lim = 20.0 / std::sqrt(theta);
    const double norm = simpson(
        [&](double phi) {
          const double v = ansatz_value(n, w, phi);
          return v * v;
        },
        -lim, lim, 8000);
    CHECK(norm == Approx(1.0).margin(1e-10));
  }

  // enforced orthogonality of psi0 and psi2
  const double lim = 20.0 / std::sqrt(w.theta0);
  const double overlap = simpson(
      [&](double phi) { return ansatz_value(0, w, phi) * ansatz_value(2, w, phi); },
      -lim, lim, 8000);
  CHECK(std::abs(overlap) < 1e-10);

  // odd parity of psi1
  CHECK(ansatz_value(1, w, 0.0) == 0.0);
  CHECK(ansatz_value(1, w, 0.7) == Approx(-ansatz_value(1, w, -0.7)).epsilon(1e-14));
}

TEST_CASE("variational energy integrals match the closed forms") {
  // <psi_n | H1 | psi_n> evaluated by quadrature, H1 in units of 4 E_C with
  // the full cosine potential, reproduces the closed-form energies
  const CircuitEnergies c(19.0, 25.2, 0.297);
  const DimensionlessPotential p = to_dimensionless(c);
  const AnsatzWidths w = ansatz_widths(p);
  const VariationalSpectrum v = variational_energies(c);

  auto h1_energy = [&](int n, double theta) {
    const double lim = 22.0 / std::sqrt(theta);
    // kinetic part via -psi'' ~ (grad psi)^2 after integration by parts
    const double kinetic = simpson(
        [&](double phi) {
          const double h = 1e-5;
          const double d = (ansatz_value(n, w, phi + h) -
                            ansatz_value(n, w, phi - h)) / (2.0 * h);
          return d * d;
        },
        -lim, lim, 8000);
    const double potential = simpson(
        [&](double phi) {
          const double psi = ansatz_value(n, w, phi);
          const double u = 0.5 * (p.eps2 + p.eps4) * phi * phi +
                           p.eps4 * std::cos(phi);
          return psi * psi * u;
        },
        -lim, lim, 8000);
    return 4.0 * c.e_c * (kinetic + potential);
  };

  CHECK(h1_energy(0, w.theta0) == Approx(v.e0).epsilon(1e-6));
  CHECK(h1_energy(1, w.theta1) == Approx(v.e1).epsilon(1e-6));
  CHECK(h1_energy(2, w.theta2) == Approx(v.e2).epsilon(1e-6));
}
