// Phase-grid diagonalization, transmon charge basis, matrix elements, and
// flux curvature.
//
// Oracles:
//   - harmonic oscillator: f01 = sqrt(8 E_C E_L), |<0|phi|1>|^2 =
//     sqrt(2 E_C / E_L), |<0|n|1>|^2 = sqrt(E_L / (32 E_C))
//   - commutator identity [H, phi] = -8 i E_C n, giving
//     |<0|n|1>| = (E1 - E0) |<0|phi|1>| / (8 E_C) exactly
//   - grid refinement (doubled resolution) for matrix-element convergence
//   - central finite differences of omega01(phi_diff) for the curvature
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qforge/eigensolver.hpp"
#include "qforge/variational.hpp"

using namespace qforge;
using Catch::Approx;

namespace {
const CircuitEnergies kDevice(19.0, 25.2, 0.297);
}

TEST_CASE("harmonic oscillator is reproduced to closed form") {
  const CircuitEnergies c(0.0, 25.2, 0.297);
  const Spectrum s = diagonalize(c, 3);
  const double f01 = std::sqrt(8.0 * c.e_c * c.e_l);
  CHECK(s.energies[1] - s.energies[0] == Approx(f01).epsilon(1e-6));
  CHECK(s.energies[2] - s.energies[1] ==
        Approx(s.energies[1] - s.energies[0]).epsilon(1e-4));
  const double p01 = matrix_element_phi(s, 0, 1);
  CHECK(p01 * p01 == Approx(std::sqrt(2.0 * c.e_c / c.e_l)).epsilon(1e-6));
  const double n01 = matrix_element_n(s, 0, 1);
  CHECK(n01 * n01 == Approx(std::sqrt(c.e_l / (32.0 * c.e_c))).epsilon(1e-6));
  // parity: <0|phi|2> vanishes
  CHECK(matrix_element_phi(s, 0, 2) < 1e-8);
}

TEST_CASE("measured device frequency") {
  const Spectrum s = diagonalize(kDevice, 3);
  const double f01 = s.energies[1] - s.energies[0];
  CHECK(f01 == Approx(4.488).epsilon(0.01));
  // frozen cross-implementation value at the default grid
  CHECK(f01 == Approx(4.480556).epsilon(1e-6));
  CHECK(s.energies[2] - s.energies[1] == Approx(4.962617).epsilon(1e-6));
}

TEST_CASE("fluxonium double well at half flux") {
  const CircuitEnergies c(6.27, 0.80, 1.41);
  const Spectrum s = diagonalize(c, 3);
  const double f01 = s.energies[1] - s.energies[0];
  const double alpha = (s.energies[2] - s.energies[1]) - f01;
  CHECK(f01 < 1.0);          // sub-GHz splitting
  CHECK(alpha > f01);        // anharmonicity exceeding the frequency
  CHECK(f01 == Approx(0.2981).epsilon(0.01));
  CHECK(alpha == Approx(5.3233).epsilon(0.01));
}

TEST_CASE("grid convergence at production resolution") {
  const Spectrum coarse = diagonalize(kDevice, 4);
  const Spectrum fine = diagonalize(kDevice, default_grid(kDevice, 48001), 4);
  for (int j = 0; j < 4; ++j)
    CHECK(std::abs(coarse.energies[j] - fine.energies[j]) /
              std::abs(fine.energies[j]) < 1e-6);
}

TEST_CASE("orthonormality of the lowest states") {
  const Spectrum s = diagonalize(kDevice, 6);
  const double h = s.grid.step();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j <= i; ++j) {
      double dot = 0.0;
      for (int m = 0; m < s.grid.n_points; ++m)
        dot += s.states[i][m] * s.states[j][m];
      dot *= h;
      CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-8);
    }
}

TEST_CASE("sweet-spot parity of diagonal phase elements") {
  // at phi_diff = pi the potential is even, so <n|phi|n> = 0
  const Spectrum s = diagonalize(kDevice, 2);
  const double h = s.grid.step();
  for (int n = 0; n < 2; ++n) {
    double acc = 0.0;
    for (int m = 0; m < s.grid.n_points; ++m)
      acc += s.states[n][m] * s.grid.point(m) * s.states[n][m];
    CHECK(std::abs(acc * h) < 1e-8);
  }
  CHECK(matrix_element_n(s, 0, 0) < 1e-8);
}

TEST_CASE("matrix elements converge under grid refinement") {
  const Spectrum a = diagonalize(kDevice, 2);
  const Spectrum b = diagonalize(kDevice, default_grid(kDevice, 48001), 2);
  const double pa = matrix_element_phi(a, 0, 1), pb = matrix_element_phi(b, 0, 1);
  CHECK(std::abs(pa - pb) / pb < 1e-6);
  // frozen value for the default grid
  CHECK(pa * pa == Approx(0.264786).epsilon(1e-5));
  CHECK(std::pow(matrix_element_n(a, 0, 1), 2) == Approx(0.941600).epsilon(1e-5));
}

TEST_CASE("commutator identity links phi and n elements") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    const double eps2 = std::pow(10.0, -1.0 + 3.0 * u(rng));
    const double eps4 = std::pow(10.0, -1.0 + 3.0 * u(rng));
    const double ec = std::pow(10.0, -0.7 + u(rng));
    const CircuitEnergies c =
        energies_from_dimensionless(DimensionlessPotential(eps2, eps4), ec);
    const Spectrum s = diagonalize(c, 2);
    const double n01 = matrix_element_n(s, 0, 1);
    const double predicted = (s.energies[1] - s.energies[0]) *
                             matrix_element_phi(s, 0, 1) / (8.0 * c.e_c);
    CHECK(n01 == Approx(predicted).epsilon(1e-4));
  }
}

TEST_CASE("boundary leakage raises an error") {
  const CircuitEnergies c(0.0, 0.01, 0.297);  // very shallow, wide states
  CHECK_THROWS_AS(diagonalize(c, PhaseGrid(-6.0, 6.0, 301), 3),
                  BoundaryLeakageError);
}

TEST_CASE("diagonalize validates inputs") {
  CHECK_THROWS_AS(diagonalize(kDevice, 13), std::domain_error);
  CHECK_THROWS_AS(PhaseGrid(-1.0, 1.0, 100), std::domain_error);
  CHECK_THROWS_AS(PhaseGrid(2.0, -2.0, 301), std::domain_error);
}

TEST_CASE("transmon charge-basis diagonalization") {
  const TransmonSpectrum s = transmon_diagonalize(14.0, 0.195, 0.0, 60, 3);
  const double f01 = s.energies[1] - s.energies[0];
  const double alpha = (s.energies[2] - s.energies[1]) - f01;
  // deep-transmon asymptotics: f01 ~ sqrt(8 E_J E_C) - E_C, alpha ~ -E_C
  CHECK(f01 == Approx(std::sqrt(8.0 * 14.0 * 0.195) - 0.195).epsilon(0.02));
  CHECK(alpha == Approx(-0.195).epsilon(0.15));
  CHECK(f01 == Approx(4.469135).epsilon(1e-6));
}

TEST_CASE("transmon charge limit e_j -> 0") {
  const TransmonSpectrum s = transmon_diagonalize(0.0, 0.195, 0.0, 30, 3);
  // diagonal matrix: E0 = 0, E1 = E2 = 4 E_C (degenerate n = +-1 pair)
  CHECK(s.energies[1] - s.energies[0] == Approx(4.0 * 0.195).epsilon(1e-10));
  CHECK(s.energies[2] - s.energies[1] == Approx(0.0).margin(1e-10));
}

TEST_CASE("transmon cutoff and validation errors") {
  CHECK_THROWS_AS(transmon_diagonalize(14.0, 0.195, 0.0, 20, 3), std::domain_error);
  CHECK_THROWS_AS(transmon_diagonalize(14.0, 0.195, 0.0, 60, 7), std::domain_error);
  // a cutoff of 30 is fine for this E_J/E_C; population check passes
  CHECK_NOTHROW(transmon_diagonalize(14.0, 0.195, 0.0, 30, 3));
}

TEST_CASE("flux curvature: perturbative vs finite difference") {
  const double kp = flux_curvature(kDevice);
  const FluxCurvatureFd fd = flux_curvature_fd(kDevice, 0.02);
  CHECK(kp == Approx(fd.kappa).epsilon(0.05));
  CHECK(!fd.step_warning);
  // frozen cross-implementation values
  CHECK(kp == Approx(6.9108e12).epsilon(1e-3));
}

TEST_CASE("flux curvature vanishes without a junction") {
  const CircuitEnergies c(0.0, 25.2, 0.297);
  CHECK(flux_curvature(c) == 0.0);
  const FluxCurvatureFd fd = flux_curvature_fd(c, 0.02);
  CHECK(std::abs(fd.kappa) < 1e3);  // pure rounding noise on a 1e10 scale
}

TEST_CASE("sweet-spot symmetry of omega01") {
  const double h = 0.03;
  auto f01_at = [&](double pd) {
    const Spectrum s = diagonalize(CircuitEnergies(19.0, 25.2, 0.297, pd), 2);
    return s.energies[1] - s.energies[0];
  };
  CHECK(f01_at(kPi + h) == Approx(f01_at(kPi - h)).epsilon(1e-10));
}

TEST_CASE("relative curvature falls with impedance at fixed shape") {
  // along a Z sweep at fixed E_J/E_L and fixed f01, kappa/omega01 drops
  auto kappa_over_f01 = [&](double ec_over_el) {
    const double el = 10.0;
    const CircuitEnergies c(0.754 * el, el, ec_over_el * el);
    const Spectrum s = diagonalize(c, 3);
    return flux_curvature_from_spectrum(c, s) /
           ghz_to_rad_per_s(s.energies[1] - s.energies[0]);
  };
  const double low_z = kappa_over_f01(0.01);
  const double mid_z = kappa_over_f01(0.05);
  const double high_z = kappa_over_f01(0.25);
  CHECK(low_z > mid_z);
  CHECK(mid_z > high_z);
}

TEST_CASE("curvature preconditions") {
  CHECK_THROWS_AS(flux_curvature(CircuitEnergies(19.0, 25.2, 0.297, 1.0)),
                  std::domain_error);
  CHECK_THROWS_AS(flux_curvature_fd(kDevice, 1e-5), std::domain_error);
  CHECK_THROWS_AS(flux_curvature_fd(kDevice, 0.5), std::domain_error);
}
