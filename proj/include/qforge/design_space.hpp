#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qforge/circuit.hpp"
#include "qforge/constants.hpp"
#include "qforge/eigensolver.hpp"
#include "qforge/fidelity.hpp"
#include "qforge/variational.hpp"

// Inverse mapping from design coordinates (f01, E_J/E_L, Z) to circuit
// energies, and the grid sweeps over the (ratio, Z) design plane.
namespace qforge {

struct DesignPoint {
  double f01 = 0.0;    // GHz, target qubit frequency
  double ratio = 0.0;  // E_J / E_L in [0, 1]
  double z = 0.0;      // ohm, in [100, 5000]

  DesignPoint(double f, double r, double z_ohm) : f01(f), ratio(r), z(z_ohm) {
    if (!(f01 > 0.0)) throw std::domain_error("DesignPoint: f01 must be > 0");
    if (!(ratio >= 0.0 && ratio <= 1.0))
      throw std::domain_error("DesignPoint: ratio must be in [0, 1]");
    if (!(z >= 100.0 && z <= 5000.0))
      throw std::domain_error("DesignPoint: z must be in [100, 5000] ohm");
  }
};

// Analytic seed: Z fixes E_C/E_L = (4 pi Z / R_K)^2 / 2, the pair
// (ratio, Z) fixes (eps2, eps4) and hence the variational f01 per unit E_L;
// E_L is then scaled to hit the target.  With refine = true a short
// iteration on numerical diagonalization drives |f01 - target| below
// 1e-4 GHz; the map is linear in the overall energy scale, so one rescale
// per step suffices.
inline CircuitEnergies design_to_energies(const DesignPoint& d, bool refine) {
  const double ec_over_el =
      0.5 * std::pow(4.0 * kPi * d.z / kVonKlitzingOhm, 2.0);
  const DimensionlessPotential p((1.0 - d.ratio) / (4.0 * ec_over_el),
                                 d.ratio / (4.0 * ec_over_el));
  const CircuitEnergies unit = energies_from_dimensionless(p, ec_over_el);
  const double f_unit = variational_energies(unit).f01;
  double e_l = d.f01 / f_unit;

  if (refine) {
    std::ostringstream trace;
    for (int it = 0; it < 15; ++it) {
      const CircuitEnergies c(d.ratio * e_l, e_l, ec_over_el * e_l);
      const Spectrum s = diagonalize(c, 2);
      const double f = s.energies[1] - s.energies[0];
      trace << (it ? ", " : "") << f;
      if (std::abs(f - d.f01) < 1e-4) {
        return c;
      }
      e_l *= d.f01 / f;
    }
    throw SolverError("design_to_energies: refinement did not converge; f01 trace = " +
                      trace.str());
  }
  return CircuitEnergies(d.ratio * e_l, e_l, ec_over_el * e_l);
}

// Per-cell flags.
enum CellFlag : std::uint32_t {
  kCellHarmonic = 1u << 0,         // ratio = 0: alpha = 0, infinite t_g
  kCellEnvelopeClamped = 1u << 1,  // Eq.-38 domain violated, Re f clamped
  kCellKappaZero = 1u << 2,        // no flux curvature, t_phi infinite
};

inline std::string cell_flag_names(std::uint32_t flags) {
  std::string s;
  auto add = [&](const char* name) {
    if (!s.empty()) s += ';';
    s += name;
  };
  if (flags & kCellHarmonic) add("harmonic");
  if (flags & kCellEnvelopeClamped) add("envelope_clamped");
  if (flags & kCellKappaZero) add("kappa_zero");
  return s;
}

struct CellRecord {
  double ratio = 0.0;
  double z = 0.0;           // ohm
  double f01 = 0.0;         // GHz, achieved
  double e_j = 0.0, e_l = 0.0, e_c = 0.0;  // GHz
  double alpha = 0.0;       // GHz
  double kappa = 0.0;       // rad/s per Phi0^2
  double gamma1_flux = 0.0; // 1/s
  double gamma1_diel = 0.0; // 1/s
  double t1 = 0.0;          // s
  double t_phi = 0.0;       // s
  double infidelity = 0.0;
  std::uint32_t flags = 0;
};

struct SweepResult {
  double f01_target = 0.0;  // GHz
  std::vector<double> ratio_values;
  std::vector<double> z_values;            // ohm
  std::vector<CellRecord> cells;           // row-major: ratio outer, z inner
  NoiseEnvironment env;
  std::string metric;                      // "infidelity" or "coherence-ratio"

  const CellRecord& cell(std::size_t i_ratio, std::size_t i_z) const {
    return cells[i_ratio * z_values.size() + i_z];
  }
};

namespace detail {

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return v;
}

inline std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  const double la = std::log10(lo), lb = std::log10(hi);
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = std::pow(10.0, la + (lb - la) * i / (n - 1));
  return v;
}

inline CellRecord evaluate_cell(double f01, double ratio, double z,
                                const NoiseEnvironment& env, EnvelopeMode mode) {
  CellRecord rec;
  rec.ratio = ratio;
  rec.z = z;
  const CircuitEnergies c = design_to_energies(DesignPoint(f01, ratio, z), true);
  rec.e_j = c.e_j;
  rec.e_l = c.e_l;
  rec.e_c = c.e_c;

  if (ratio == 0.0) {
    // harmonic column: spectrum and relaxation are well defined, the gate
    // model is not
    const Spectrum s = diagonalize(c, 3);
    rec.f01 = s.energies[1] - s.energies[0];
    rec.alpha = (s.energies[2] - s.energies[1]) - rec.f01;
    const RelaxationBreakdown rb = relaxation_breakdown(c, env, s);
    rec.gamma1_flux = rb.gamma1_flux;
    rec.gamma1_diel = rb.gamma1_diel;
    rec.t1 = rb.t1;
    rec.kappa = 0.0;
    rec.t_phi = std::numeric_limits<double>::infinity();
    rec.infidelity = std::numeric_limits<double>::quiet_NaN();
    rec.flags |= kCellHarmonic | kCellKappaZero;
    return rec;
  }

  const InfidelityBreakdown b = infidelity_at(c, env, mode);
  rec.f01 = b.f01;
  rec.alpha = b.alpha;
  rec.kappa = b.dephasing.kappa;
  rec.gamma1_flux = b.relaxation.gamma1_flux;
  rec.gamma1_diel = b.relaxation.gamma1_diel;
  rec.t1 = b.relaxation.t1;
  rec.t_phi = b.dephasing.t_phi_tilde;
  rec.infidelity = b.infidelity;
  if (b.envelope_clamped) rec.flags |= kCellEnvelopeClamped;
  if (b.dephasing.kappa == 0.0) rec.flags |= kCellKappaZero;
  return rec;
}

// Evaluate all cells, optionally across threads; results land in a
// preallocated buffer indexed by cell, so assembly order is deterministic
// regardless of the execution schedule.
inline void run_cells(SweepResult& r, EnvelopeMode mode, int n_threads) {
  const std::size_t n_ratio = r.ratio_values.size();
  const std::size_t n_z = r.z_values.size();
  const std::size_t total = n_ratio * n_z;
  r.cells.resize(total);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const std::size_t i = idx / n_z, j = idx % n_z;
      r.cells[idx] =
          evaluate_cell(r.f01_target, r.ratio_values[i], r.z_values[j], r.env, mode);
    }
  };

  if (n_threads <= 1) {
    work(0, total);
    return;
  }
  const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(n_threads), total);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  const std::size_t chunk = (total + nt - 1) / nt;
  for (std::size_t t = 0; t < nt; ++t)
    pool.emplace_back(work, t * chunk, std::min(total, (t + 1) * chunk));
  for (auto& th : pool) th.join();
}

}  // namespace detail

// Average gate infidelity over the (ratio, Z) plane at fixed target f01.
// Cells violating the dephasing-envelope domain are flagged, not dropped.
inline SweepResult sweep_infidelity(double f01, int n_ratio, int n_z,
                                    const NoiseEnvironment& env,
                                    EnvelopeMode mode = EnvelopeMode::plot,
                                    int n_threads = 1) {
  if (n_ratio < 2 || n_z < 2)
    throw std::domain_error("sweep_infidelity: grid must be at least 2x2");
  SweepResult r;
  r.f01_target = f01;
  r.ratio_values = detail::linspace(0.0, 1.0, n_ratio);
  r.z_values = detail::logspace(100.0, 5000.0, n_z);
  r.env = env;
  r.metric = "infidelity";
  detail::run_cells(r, mode, n_threads);
  return r;
}

// Same grid, recording the coherence ratio T~phi / T1 as the metric.
inline SweepResult sweep_coherence_ratio(double f01, int n_ratio, int n_z,
                                         const NoiseEnvironment& env,
                                         EnvelopeMode mode = EnvelopeMode::plot,
                                         int n_threads = 1) {
  SweepResult r = sweep_infidelity(f01, n_ratio, n_z, env, mode, n_threads);
  r.metric = "coherence-ratio";
  return r;
}

inline double metric_value(const SweepResult& r, const CellRecord& c) {
  if (r.metric == "coherence-ratio") return c.t_phi / c.t1;
  return c.infidelity;
}

struct TracePoint {
  double ratio = 0.0;
  double z_opt = 0.0;  // ohm
  double value = 0.0;  // metric at the optimum
};

// Per-ratio argmin of the metric over z (ties resolved to the smaller z);
// columns without a finite metric (the harmonic column) are skipped.
inline std::vector<TracePoint> optimum_trace(const SweepResult& r) {
  std::vector<TracePoint> trace;
  for (std::size_t i = 0; i < r.ratio_values.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    double z_opt = 0.0;
    bool found = false;
    for (std::size_t j = 0; j < r.z_values.size(); ++j) {
      const double v = metric_value(r, r.cell(i, j));
      if (std::isfinite(v) && v < best) {
        best = v;
        z_opt = r.z_values[j];
        found = true;
      }
    }
    if (found) trace.push_back({r.ratio_values[i], z_opt, best});
  }
  return trace;
}

struct T1Row {
  double f01_target = 0.0;  // GHz
  double f01 = 0.0;         // GHz, achieved
  double e_j = 0.0, e_l = 0.0, e_c = 0.0;
  double gamma1_flux = 0.0, gamma1_diel = 0.0;  // 1/s
  double t1 = 0.0;                              // s
};

// T1 as a function of qubit frequency at fixed (ratio, z).
inline std::vector<T1Row> t1_vs_frequency(double ratio, double z,
                                          const NoiseEnvironment& env,
                                          const std::vector<double>& f01_list) {
  std::vector<T1Row> rows;
  rows.reserve(f01_list.size());
  for (double f : f01_list) {
    const CircuitEnergies c = design_to_energies(DesignPoint(f, ratio, z), true);
    const Spectrum s = diagonalize(c, 2);
    const RelaxationBreakdown rb = relaxation_breakdown(c, env, s);
    rows.push_back({f, s.energies[1] - s.energies[0], c.e_j, c.e_l, c.e_c,
                    rb.gamma1_flux, rb.gamma1_diel, rb.t1});
  }
  return rows;
}

struct NoiseGridRow {
  double a_phi = 0.0;   // Phi0
  double q_diel = 0.0;
  double gamma1_flux = 0.0, gamma1_diel = 0.0;  // 1/s
  double t1 = 0.0;                              // s
};

// T1 over an (A_Phi, Q_diel) grid for a fixed design; matrix elements are
// computed once, only the noise couplings vary.
inline std::vector<NoiseGridRow> t1_noise_grid(const std::vector<double>& a_list,
                                               const std::vector<double>& q_list,
                                               const DesignPoint& design,
                                               const NoiseEnvironment& base) {
  const CircuitEnergies c = design_to_energies(design, true);
  const Spectrum s = diagonalize(c, 2);
  const double omega01 = ghz_to_rad_per_s(s.energies[1] - s.energies[0]);
  const double phi01 = matrix_element_phi(s, 0, 1);
  const double n01 = matrix_element_n(s, 0, 1);

  std::vector<NoiseGridRow> rows;
  rows.reserve(a_list.size() * q_list.size());
  for (double a : a_list)
    for (double q : q_list) {
      NoiseEnvironment env(a, q, base.temperature, base.omega_ir, base.nu);
      NoiseGridRow row;
      row.a_phi = a;
      row.q_diel = q;
      row.gamma1_flux = gamma1_flux(c, env, phi01, omega01);
      row.gamma1_diel = gamma1_diel(c, env, n01, omega01);
      row.t1 = 1.0 / (row.gamma1_flux + row.gamma1_diel);
      rows.push_back(row);
    }
  return rows;
}

}  // namespace qforge
