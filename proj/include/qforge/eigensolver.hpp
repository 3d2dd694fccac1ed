#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "qforge/circuit.hpp"
#include "qforge/constants.hpp"
#include "qforge/errors.hpp"
#include "qforge/tridiag.hpp"

// Exact numerical reference: finite-difference diagonalization of the
// single-mode Hamiltonian on a phase grid (any phi_diff), charge-basis
// diagonalization for the transmon, matrix elements of phi and n, and the
// flux curvature of the qubit frequency.
namespace qforge {

struct PhaseGrid {
  double phi_min = 0.0;
  double phi_max = 0.0;
  int n_points = 0;

  PhaseGrid(double lo, double hi, int n) : phi_min(lo), phi_max(hi), n_points(n) {
    if (!(phi_min < phi_max))
      throw std::domain_error("PhaseGrid: phi_min must be < phi_max");
    if (n_points < 201)
      throw std::domain_error("PhaseGrid: n_points must be >= 201");
  }

  double step() const { return (phi_max - phi_min) / (n_points - 1); }
  double point(int i) const { return phi_min + i * step(); }
};

// Lowest-k eigenpairs on a phase grid.  States are L2-normalized with
// respect to the grid weight: sum_i psi[i]^2 * step = 1.
struct Spectrum {
  std::vector<double> energies;             // GHz, ascending
  std::vector<std::vector<double>> states;  // one vector per level
  PhaseGrid grid;
};

inline double potential_value(const CircuitEnergies& c, double phi) {
  return 0.5 * c.e_l * phi * phi - c.e_j * std::cos(phi - c.phi_diff);
}

namespace detail {

// Ground-width estimate used only to size the grid; clamps the double-well
// case (e_l < e_j) to the pure-quartic width.
inline double theta0_estimate(const CircuitEnergies& c) {
  const double eps2 = std::max(0.0, (c.e_l - c.e_j) / (4.0 * c.e_c));
  const double eps4 = c.e_j / (4.0 * c.e_c);
  if (eps2 == 0.0 && eps4 == 0.0) return 1.0;
  if (eps2 == 0.0) return 0.5 * std::cbrt(eps4);
  const double arg = 3.0 * std::sqrt(6.0) / 8.0 * eps4 / (eps2 * std::sqrt(eps2));
  const double s = std::sqrt(6.0 * eps2) / 3.0;
  return arg <= 1.0 ? s * std::cos(std::acos(arg) / 3.0)
                    : s * std::cosh(std::acosh(arg) / 3.0);
}

// Location of the global potential minimum: coarse scan plus bisection on
// the derivative.  Solutions of V'=0 satisfy |phi| <= e_j/e_l, so the scan
// window covers that range.
inline double potential_minimum(const CircuitEnergies& c) {
  if (c.e_l <= 0.0) {
    // bare cosine: minimum of -cos(phi - phi_diff) at phi_diff (mod 2 pi)
    double m = std::fmod(c.phi_diff, 2.0 * kPi);
    if (m > kPi) m -= 2.0 * kPi;
    if (m < -kPi) m += 2.0 * kPi;
    return m;
  }
  const double reach = std::max(2.0 * kPi, 1.2 * c.e_j / c.e_l);
  const int n = 4001;
  double best_phi = 0.0, best_v = potential_value(c, 0.0);
  for (int i = 0; i < n; ++i) {
    const double phi = -reach + 2.0 * reach * i / (n - 1);
    const double v = potential_value(c, phi);
    if (v < best_v) {
      best_v = v;
      best_phi = phi;
    }
  }
  auto dv = [&](double phi) {
    return c.e_l * phi + c.e_j * std::sin(phi - c.phi_diff);
  };
  double lo = best_phi - 2.0 * reach / (n - 1);
  double hi = best_phi + 2.0 * reach / (n - 1);
  if (dv(lo) < 0.0 && dv(hi) > 0.0) {
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (dv(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
  return best_phi;
}

}  // namespace detail

// Default grid: centered on the potential minimum with half-width
// W = max(12, 10/sqrt(theta0_est)), wide enough for fluxonium double wells
// and the quartic regime.  The default resolution keeps the 3-point-stencil
// truncation error of the lowest four levels below 1e-6 relative under grid
// halving across the working parameter range.
inline PhaseGrid default_grid(const CircuitEnergies& c, int n_points = 24001) {
  const double mu = detail::potential_minimum(c);
  const double width =
      std::max(12.0, 10.0 / std::sqrt(detail::theta0_estimate(c)));
  return PhaseGrid(mu - width, mu + width, n_points);
}

// Lowest k eigenpairs of H = -4 E_C d^2/dphi^2 + V(phi) with the full
// cosine potential (no Taylor truncation), 3-point kinetic stencil and
// Dirichlet boundaries.  Post-checks that every returned state has decayed
// below 1e-8 at both grid edges.
inline Spectrum diagonalize(const CircuitEnergies& c, const PhaseGrid& g,
                            int k) {
  if (k < 1 || k > 12)
    throw std::domain_error("diagonalize: k must be in [1, 12]");
  const int n = g.n_points;
  const double h = g.step();
  const double kin = 4.0 * c.e_c / (h * h);
  std::vector<double> diag(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    diag[static_cast<std::size_t>(i)] = 2.0 * kin + potential_value(c, g.point(i));
  std::vector<double> off(static_cast<std::size_t>(n - 1), -kin);

  TridiagEigenSolver solver(std::move(diag), std::move(off));
  Spectrum s{{}, {}, g};
  solver.solve(k, s.energies, s.states);

  const double inv_sqrt_h = 1.0 / std::sqrt(h);
  for (auto& v : s.states)
    for (auto& x : v) x *= inv_sqrt_h;

  for (int j = 0; j < k; ++j) {
    const auto& v = s.states[static_cast<std::size_t>(j)];
    const double tail = std::max(std::abs(v.front()), std::abs(v.back()));
    if (!(tail < 1e-8)) {
      std::ostringstream msg;
      msg << "diagonalize: state " << j << " leaks at the grid boundary (|psi| = "
          << tail << "); widen the grid";
      throw BoundaryLeakageError(msg.str());
    }
  }
  return s;
}

inline Spectrum diagonalize(const CircuitEnergies& c, int k) {
  return diagonalize(c, default_grid(c), k);
}

// |<i| phi |j>| by grid quadrature.
inline double matrix_element_phi(const Spectrum& s, int i, int j) {
  const auto& vi = s.states.at(static_cast<std::size_t>(i));
  const auto& vj = s.states.at(static_cast<std::size_t>(j));
  const double h = s.grid.step();
  double acc = 0.0;
  for (int m = 0; m < s.grid.n_points; ++m)
    acc += vi[static_cast<std::size_t>(m)] * s.grid.point(m) *
           vj[static_cast<std::size_t>(m)];
  return std::abs(acc * h);
}

// |<i| n |j>| with n = -i d/dphi, via a central-difference derivative of
// the eigenvector (Dirichlet: ghost points are zero).
inline double matrix_element_n(const Spectrum& s, int i, int j) {
  const auto& vi = s.states.at(static_cast<std::size_t>(i));
  const auto& vj = s.states.at(static_cast<std::size_t>(j));
  const int n = s.grid.n_points;
  const double h = s.grid.step();
  double acc = 0.0;
  for (int m = 0; m < n; ++m) {
    const double up = m + 1 < n ? vj[static_cast<std::size_t>(m + 1)] : 0.0;
    const double dn = m > 0 ? vj[static_cast<std::size_t>(m - 1)] : 0.0;
    acc += vi[static_cast<std::size_t>(m)] * (up - dn) / (2.0 * h);
  }
  return std::abs(acc * h);
}

// ---------------------------------------------------------------------------
// Transmon in the integer charge basis: 4 E_C (n - n_g)^2 - E_J cos(phi),
// tridiagonal with -E_J/2 off-diagonals.

struct TransmonSpectrum {
  std::vector<double> energies;             // GHz
  std::vector<std::vector<double>> states;  // charge-basis amplitudes
  int cutoff = 0;                           // basis spans n in [-cutoff, cutoff]

  double charge(int index) const { return static_cast<double>(index - cutoff); }
};

inline TransmonSpectrum transmon_diagonalize(double e_j, double e_c,
                                             double n_g, int cutoff, int k) {
  if (cutoff < 30)
    throw std::domain_error("transmon_diagonalize: cutoff must be >= 30");
  if (k < 1 || k > 6)
    throw std::domain_error("transmon_diagonalize: k must be in [1, 6]");
  if (!(e_j >= 0.0) || !(e_c > 0.0))
    throw std::domain_error("transmon_diagonalize: bad energies");
  const int n = 2 * cutoff + 1;
  std::vector<double> diag(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double q = static_cast<double>(i - cutoff) - n_g;
    diag[static_cast<std::size_t>(i)] = 4.0 * e_c * q * q;
  }
  std::vector<double> off(static_cast<std::size_t>(n - 1), -0.5 * e_j);

  TransmonSpectrum s;
  s.cutoff = cutoff;
  TridiagEigenSolver solver(std::move(diag), std::move(off));
  solver.solve(k, s.energies, s.states);

  for (int j = 0; j < k; ++j) {
    const auto& v = s.states[static_cast<std::size_t>(j)];
    const double top = std::max(std::abs(v.front()), std::abs(v.back()));
    if (!(top * top < 1e-10)) {
      std::ostringstream msg;
      msg << "transmon_diagonalize: top-basis population " << top * top
          << " for state " << j << "; increase the cutoff";
      throw SolverError(msg.str());
    }
  }
  return s;
}

// |<i| n |j>| in the charge basis (n is diagonal there).
inline double transmon_matrix_element_n(const TransmonSpectrum& s, int i,
                                        int j) {
  const auto& vi = s.states.at(static_cast<std::size_t>(i));
  const auto& vj = s.states.at(static_cast<std::size_t>(j));
  double acc = 0.0;
  for (std::size_t m = 0; m < vi.size(); ++m)
    acc += vi[m] * s.charge(static_cast<int>(m)) * vj[m];
  return std::abs(acc);
}

// ---------------------------------------------------------------------------
// Flux curvature kappa = d^2 omega01 / d Phi_diff^2 (rad/s per Phi0^2).

// Second-order perturbative expansion truncated to the three lowest
// eigenstates.  Moving the bias onto the inductor shows the perturbation is
// E_L phi per unit phase, so with Phi_diff in units of Phi0
//   kappa = 8 pi^2 (E_L^2/hbar) [ sum_{m != 1} |<m|phi|1>|^2/(E_1 - E_m)
//                               - sum_{n != 0} |<n|phi|0>|^2/(E_0 - E_n) ].
inline double flux_curvature_from_spectrum(const CircuitEnergies& c,
                                           const Spectrum& s) {
  const double p01 = matrix_element_phi(s, 0, 1);
  const double p12 = matrix_element_phi(s, 1, 2);
  const double p02 = matrix_element_phi(s, 0, 2);
  const double d10 = s.energies[1] - s.energies[0];
  const double d21 = s.energies[2] - s.energies[1];
  const double d20 = s.energies[2] - s.energies[0];
  const double sum_ghz =
      2.0 * p01 * p01 / d10 - p12 * p12 / d21 + p02 * p02 / d20;  // 1/GHz
  // 8 pi^2 E_L^2 / hbar * sum(1/E) with E/h in Hz reduces to
  // 16 pi^3 e_l^2 * sum, both in Hz
  return 16.0 * kPi * kPi * kPi * (c.e_l * 1e9) * (c.e_l * 1e9) *
         (sum_ghz / 1e9);
}

inline double flux_curvature(const CircuitEnergies& c) {
  if (!c.at_sweet_spot())
    throw std::domain_error("flux_curvature: requires phi_diff = pi");
  if (c.e_j == 0.0) return 0.0;
  return flux_curvature_from_spectrum(c, diagonalize(c, 3));
}

struct FluxCurvatureFd {
  double kappa = 0.0;                // rad/s per Phi0^2, step h
  double kappa_2h = 0.0;             // same, step 2h
  double richardson_mismatch = 0.0;  // |kappa - kappa_2h| / |kappa|
  bool step_warning = false;         // mismatch > 10%
};

// Independent oracle: central second difference of omega01(phi_diff) at the
// sweet spot, converted to flux units via Phi_diff = (phi_diff / 2 pi) Phi0.
inline FluxCurvatureFd flux_curvature_fd(const CircuitEnergies& c, double h) {
  if (!(h >= 1e-4 && h <= 1e-1))
    throw std::domain_error("flux_curvature_fd: h must be in [1e-4, 1e-1]");
  if (!c.at_sweet_spot())
    throw std::domain_error("flux_curvature_fd: requires phi_diff = pi");
  auto omega01 = [&](double pd) {
    CircuitEnergies shifted(c.e_j, c.e_l, c.e_c, pd);
    const Spectrum s = diagonalize(shifted, 2);
    return ghz_to_rad_per_s(s.energies[1] - s.energies[0]);
  };
  const double w0 = omega01(kPi);
  auto second = [&](double step) {
    return 4.0 * kPi * kPi *
           (omega01(kPi + step) + omega01(kPi - step) - 2.0 * w0) /
           (step * step);
  };
  FluxCurvatureFd r;
  r.kappa = second(h);
  r.kappa_2h = second(2.0 * h);
  r.richardson_mismatch =
      r.kappa != 0.0 ? std::abs(r.kappa - r.kappa_2h) / std::abs(r.kappa) : 0.0;
  r.step_warning = r.richardson_mismatch > 0.10;
  return r;
}

}  // namespace qforge
