#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qforge/circuit.hpp"
#include "qforge/coherence.hpp"
#include "qforge/constants.hpp"
#include "qforge/eigensolver.hpp"
#include "qforge/fidelity.hpp"

// Side-by-side comparison of unimon, transmon, and fluxonium: flux profiles
// of frequency, anharmonicity and gate speed limit, relaxation versus
// frequency and dielectric quality factor, and dephasing versus flux offset.
namespace qforge {

enum class QubitKind { unimon, transmon, fluxonium };

inline const char* qubit_kind_name(QubitKind k) {
  switch (k) {
    case QubitKind::unimon: return "unimon";
    case QubitKind::transmon: return "transmon";
    case QubitKind::fluxonium: return "fluxonium";
  }
  return "?";
}

struct QubitSpec {
  QubitKind kind = QubitKind::unimon;
  std::string name;
  double e_j = 0.0;  // GHz; maximum junction energy for the transmon SQUID
  double e_l = 0.0;  // GHz; unused for the transmon
  double e_c = 0.0;  // GHz
  double n_g = 0.0;  // offset charge, transmon only
  NoiseEnvironment env;

  // Flux bias (units of Phi0) of the optimal operation point.
  double sweet_spot_flux() const {
    return kind == QubitKind::transmon ? 0.0 : 0.5;
  }
};

// Comparison parameter sets: three unimons (the measured device plus two
// higher-impedance variants), a transmon, and a fluxonium, all at 30 mK
// with per-qubit flux noise amplitudes.
inline std::vector<QubitSpec> builtin_specs() {
  const double temp = 0.030;
  std::vector<QubitSpec> specs;
  specs.push_back({QubitKind::unimon, "unimon1", 19.0, 25.2, 0.30, 0.0,
                   NoiseEnvironment(15.0e-6, 1e6, temp)});
  specs.push_back({QubitKind::unimon, "unimon2", 5.4, 7.1, 0.78, 0.0,
                   NoiseEnvironment(9.1e-6, 1e6, temp)});
  specs.push_back({QubitKind::unimon, "unimon3", 2.4, 3.2, 1.4, 0.0,
                   NoiseEnvironment(6.8e-6, 1e6, temp)});
  specs.push_back({QubitKind::transmon, "transmon", 14.0, 0.0, 0.195, 0.0,
                   NoiseEnvironment(1.5e-6, 1e6, temp)});
  specs.push_back({QubitKind::fluxonium, "fluxonium", 6.27, 0.80, 1.41, 0.0,
                   NoiseEnvironment(2.0e-6, 1e6, temp)});
  return specs;
}

// Spot spectrum of a qubit at a given external flux (units of Phi0).  The
// transmon is flux-tuned through a symmetric SQUID,
// E_J(Phi) = E_J_max |cos(pi Phi / Phi0)|.
struct QubitPoint {
  double f01 = 0.0;    // GHz
  double f12 = 0.0;    // GHz
  double alpha = 0.0;  // GHz, signed
  double phi01 = 0.0;  // |<0|phi|1>|; 0 for the transmon
  double n01 = 0.0;    // |<0|n|1>|
};

namespace detail {

inline double transmon_ej_at(const QubitSpec& q, double flux) {
  return q.e_j * std::abs(std::cos(kPi * flux));
}

inline QubitPoint qubit_point(const QubitSpec& q, double flux) {
  QubitPoint p;
  if (q.kind == QubitKind::transmon) {
    const TransmonSpectrum s =
        transmon_diagonalize(transmon_ej_at(q, flux), q.e_c, q.n_g, 80, 3);
    p.f01 = s.energies[1] - s.energies[0];
    p.f12 = s.energies[2] - s.energies[1];
    p.alpha = p.f12 - p.f01;
    p.n01 = transmon_matrix_element_n(s, 0, 1);
    return p;
  }
  const CircuitEnergies c(q.e_j, q.e_l, q.e_c, 2.0 * kPi * flux);
  const Spectrum s = diagonalize(c, 3);
  p.f01 = s.energies[1] - s.energies[0];
  p.f12 = s.energies[2] - s.energies[1];
  p.alpha = p.f12 - p.f01;
  p.phi01 = matrix_element_phi(s, 0, 1);
  p.n01 = matrix_element_n(s, 0, 1);
  return p;
}

inline double omega01_at_flux(const QubitSpec& q, double flux) {
  if (q.kind == QubitKind::transmon) {
    const TransmonSpectrum s =
        transmon_diagonalize(transmon_ej_at(q, flux), q.e_c, q.n_g, 80, 2);
    return ghz_to_rad_per_s(s.energies[1] - s.energies[0]);
  }
  const CircuitEnergies c(q.e_j, q.e_l, q.e_c, 2.0 * kPi * flux);
  const Spectrum s = diagonalize(c, 2);
  return ghz_to_rad_per_s(s.energies[1] - s.energies[0]);
}

// Slope and curvature of omega01 with respect to flux (per Phi0) by central
// differences; works uniformly for all three qubit kinds.
inline double flux_slope_fd(const QubitSpec& q, double flux, double h = 1e-3) {
  return (omega01_at_flux(q, flux + h) - omega01_at_flux(q, flux - h)) /
         (2.0 * h);
}

inline double flux_curvature_at(const QubitSpec& q, double flux, double h = 1e-3) {
  return (omega01_at_flux(q, flux + h) + omega01_at_flux(q, flux - h) -
          2.0 * omega01_at_flux(q, flux)) /
         (h * h);
}

inline RelaxationBreakdown relaxation_at(const QubitSpec& q,
                                         const QubitPoint& p,
                                         const NoiseEnvironment& env) {
  RelaxationBreakdown r;
  const double omega01 = ghz_to_rad_per_s(p.f01);
  // no shunt inductor on the transmon: flux noise does not relax it
  if (q.kind != QubitKind::transmon) {
    const CircuitEnergies c(q.e_j, q.e_l, q.e_c);
    r.gamma1_flux = gamma1_flux(c, env, p.phi01, omega01);
  }
  const CircuitEnergies cc(q.e_j, std::max(q.e_l, 0.0), q.e_c);
  r.gamma1_diel = gamma1_diel(cc, env, p.n01, omega01);
  r.gamma1_total = r.gamma1_flux + r.gamma1_diel;
  r.t1 = 1.0 / r.gamma1_total;
  return r;
}

}  // namespace detail

struct FluxProfilePoint {
  double flux = 0.0;     // Phi0
  double f01 = 0.0;      // GHz
  double alpha = 0.0;    // GHz
  double t_g_lim = 0.0;  // s, 2 pi / min(omega01, |alpha|)
};

struct FluxProfile {
  std::string qubit;
  std::vector<FluxProfilePoint> points;
};

inline FluxProfile flux_profile(const QubitSpec& q,
                                const std::vector<double>& flux_grid) {
  FluxProfile fp;
  fp.qubit = q.name;
  fp.points.reserve(flux_grid.size());
  for (double flux : flux_grid) {
    const QubitPoint p = detail::qubit_point(q, flux);
    FluxProfilePoint row;
    row.flux = flux;
    row.f01 = p.f01;
    row.alpha = p.alpha;
    row.t_g_lim = p.alpha == 0.0
                      ? std::numeric_limits<double>::infinity()
                      : gate_speed_limit(ghz_to_rad_per_s(p.f01),
                                         ghz_to_rad_per_s(p.alpha));
    fp.points.push_back(row);
  }
  return fp;
}

enum class RelaxationAxis { frequency, q_diel };

struct RelaxationRow {
  double axis_value = 0.0;  // flux (Phi0) or Q_diel
  double f01 = 0.0;         // GHz
  double t1_flux = 0.0;     // s; +inf for the transmon
  double t1_diel = 0.0;     // s
  double t1_total = 0.0;    // s
};

// Relaxation decomposition along a flux sweep (the frequency axis is the
// qubit's own f01(Phi)) or along a dielectric-quality sweep at the optimal
// operation point.
inline std::vector<RelaxationRow> relaxation_profile(
    const QubitSpec& q, RelaxationAxis axis,
    const std::vector<double>& axis_values) {
  std::vector<RelaxationRow> rows;
  rows.reserve(axis_values.size());
  for (double x : axis_values) {
    const double flux = axis == RelaxationAxis::frequency ? x : q.sweet_spot_flux();
    NoiseEnvironment env = q.env;
    if (axis == RelaxationAxis::q_diel)
      env = NoiseEnvironment(q.env.a_phi, x, q.env.temperature, q.env.omega_ir,
                             q.env.nu);
    const QubitPoint p = detail::qubit_point(q, flux);
    const RelaxationBreakdown rb = detail::relaxation_at(q, p, env);
    RelaxationRow row;
    row.axis_value = x;
    row.f01 = p.f01;
    row.t1_flux = rb.gamma1_flux > 0.0 ? 1.0 / rb.gamma1_flux
                                       : std::numeric_limits<double>::infinity();
    row.t1_diel = 1.0 / rb.gamma1_diel;
    row.t1_total = rb.t1;
    rows.push_back(row);
  }
  return rows;
}

struct DephasingRow {
  double offset = 0.0;        // Phi0, deviation from the optimal point
  double slope = 0.0;         // rad/s per Phi0
  double kappa = 0.0;         // rad/s per Phi0^2
  double t_phi_first = 0.0;   // s; +inf at the sweet spot
  bool first_diverged = false;
  double t_phi_second = 0.0;  // s
};

// First- and second-order 1/f flux-noise dephasing times versus flux
// deviation from the optimal operation point.  The slope and curvature are
// finite differences of omega01(Phi), so the same method covers all kinds.
inline std::vector<DephasingRow> dephasing_vs_offset(
    const QubitSpec& q, const std::vector<double>& offsets) {
  std::vector<DephasingRow> rows;
  rows.reserve(offsets.size());
  const double center = q.sweet_spot_flux();
  for (double offset : offsets) {
    DephasingRow row;
    row.offset = offset;
    const double flux = center + offset;
    row.slope = offset == 0.0 ? 0.0 : detail::flux_slope_fd(q, flux);
    row.kappa = detail::flux_curvature_at(q, flux);
    const FirstOrderDephasing fo = first_order_dephasing_time(row.slope, q.env);
    row.t_phi_first = fo.t_phi;
    row.first_diverged = fo.diverged;
    row.t_phi_second = dephasing_model(row.kappa, q.env).t_phi_tilde;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qforge
