#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qforge/compare.hpp"
#include "qforge/design_space.hpp"
#include "qforge/report.hpp"
#include "qforge/variational.hpp"

// Acceptance suite: every criterion pinned to its stated tolerance, each
// reported as a single pass/fail line with the measured values.
namespace qforge {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace validation_detail {

inline CircuitEnergies table1_energies() {
  return CircuitEnergies(19.0, 25.2, 0.297);
}

inline NoiseEnvironment table1_noise() {
  return NoiseEnvironment(15.0e-6, 3.5e5, 0.025);
}

struct ErrTriple {
  double f01 = 0.0, f12 = 0.0, alpha = 0.0;
};

// Variational-vs-numeric relative errors at one (eps2, eps4) point.
inline ErrTriple envelope_errors(double eps2, double eps4) {
  const CircuitEnergies c =
      energies_from_dimensionless(DimensionlessPotential(eps2, eps4), 0.25);
  const VariationalSpectrum v = variational_energies(c);
  const Spectrum s = diagonalize(c, 3);
  const double f01n = s.energies[1] - s.energies[0];
  const double f12n = s.energies[2] - s.energies[1];
  const double an = f12n - f01n;
  ErrTriple e;
  e.f01 = std::abs(v.f01 - f01n) / f01n;
  e.f12 = std::abs(v.f12 - f12n) / f12n;
  e.alpha = an != 0.0 ? std::abs(v.alpha - an) / std::abs(an) : 0.0;
  return e;
}

inline std::string sweep_csv_string(const SweepResult& r) {
  std::ostringstream os;
  write_sweep_csv(os, r, "determinism-check");
  return os.str();
}

}  // namespace validation_detail

inline CriterionResult criterion_1_table1() {
  using namespace validation_detail;
  CriterionResult r{1, "table-i-reproduction"};
  const auto t0 = std::chrono::steady_clock::now();
  const CircuitEnergies c = table1_energies();
  const Spectrum s = diagonalize(c, 2);
  const double f01 = s.energies[1] - s.energies[0];
  const double z = impedance(c);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool f01_ok = std::abs(f01 - 4.488) / 4.488 <= 0.01;
  const bool z_ok = std::abs(z - 315.0) / 315.0 <= 0.005;
  const bool time_ok = r.seconds < 1.0;
  r.pass = f01_ok && z_ok && time_ok;
  std::ostringstream d;
  d << "f01 = " << f01 << " GHz (4.488 +-1%), Z = " << z
    << " ohm (315 +-0.5%), runtime " << r.seconds << " s (< 1 s)";
  r.detail = d.str();
  return r;
}

inline CriterionResult criterion_2_variational_envelope() {
  using namespace validation_detail;
  CriterionResult r{2, "variational-accuracy-envelope"};
  const auto t0 = std::chrono::steady_clock::now();
  double max_f01 = 0.0, max_f12 = 0.0, max_alpha = 0.0;
  const int n = 10;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double eps2 = std::pow(10.0, -2.0 + 5.0 * i / (n - 1));
      const double eps4 = std::pow(10.0, -2.0 + 5.0 * j / (n - 1));
      const ErrTriple e = envelope_errors(eps2, eps4);
      max_f01 = std::max(max_f01, e.f01);
      max_f12 = std::max(max_f12, e.f12);
      max_alpha = std::max(max_alpha, e.alpha);
    }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = max_f01 <= 0.02 && max_f12 <= 0.02 && max_alpha <= 0.05 &&
           r.seconds < 30.0;
  std::ostringstream d;
  d << "eps grid [1e-2,1e3] 10x10: max err f01 = " << max_f01 * 100
    << "% (<=2%), f12 = " << max_f12 * 100 << "% (<=2%), alpha = "
    << max_alpha * 100 << "% (<=5%), runtime " << r.seconds << " s (< 30 s)";
  r.detail = d.str();
  return r;
}

inline CriterionResult criterion_3_anharmonicity_ceiling() {
  CriterionResult r{3, "anharmonicity-ceiling"};
  const auto t0 = std::chrono::steady_clock::now();
  double lo = 1.0, hi = 0.0;
  for (double eps4 : {1e-2, 1.0, 1e2, 1e4, 1e6}) {
    for (double ratio : {1e4, 1e6}) {
      const DimensionlessPotential p(eps4 / ratio, eps4);
      const VariationalSpectrum v =
          variational_energies(energies_from_dimensionless(p, 0.25));
      const double rel = v.alpha / v.f01;
      lo = std::min(lo, rel);
      hi = std::max(hi, rel);
    }
  }
  // numeric spot check in the quartic-dominated limit
  const CircuitEnergies c =
      energies_from_dimensionless(DimensionlessPotential(0.0, 8.0), 0.25);
  const Spectrum s = diagonalize(c, 3);
  const double rel_num = ((s.energies[2] - s.energies[1]) -
                          (s.energies[1] - s.energies[0])) /
                         (s.energies[1] - s.energies[0]);
  lo = std::min(lo, rel_num);
  hi = std::max(hi, rel_num);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = lo >= 0.30 && hi <= 0.36;
  std::ostringstream d;
  d << "alpha/f01 over eps4/eps2 >= 1e4: [" << lo << ", " << hi
    << "] (required within [0.30, 0.36])";
  r.detail = d.str();
  return r;
}

inline CriterionResult criterion_4_width_inequality() {
  CriterionResult r{4, "width-inequality-and-septic"};
  const auto t0 = std::chrono::steady_clock::now();
  double ratio_lo = 10.0, ratio_hi = 0.0, worst_septic = 0.0;
  const int n = 13;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double eps2 = std::pow(10.0, -6.0 + 12.0 * i / (n - 1));
      const double eps4 = std::pow(10.0, -6.0 + 12.0 * j / (n - 1));
      const DimensionlessPotential p(eps2, eps4);
      const double t0w = theta_root(0, p);
      const double t2w = theta_root(2, p);
      ratio_lo = std::min(ratio_lo, t2w / t0w);
      ratio_hi = std::max(ratio_hi, t2w / t0w);
      const double t2s = septic_root_theta2(t0w, p);
      worst_septic = std::max(worst_septic, std::abs(t2w - t2s) / t2s);
    }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = ratio_lo >= 1.0 - 1e-12 && ratio_hi < 2.0 && worst_septic <= 0.01;
  std::ostringstream d;
  d << "theta2/theta0 in [" << ratio_lo << ", " << ratio_hi
    << "] (required [1, 2)), septic-vs-cubic max dev = " << worst_septic * 100
    << "% (<=1%)";
  r.detail = d.str();
  return r;
}

inline CriterionResult criterion_5_variational_bound() {
  CriterionResult r{5, "variational-upper-bound"};
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  double worst_margin = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double eps2 = std::pow(10.0, -2.0 + 5.0 * u(rng));
    const double eps4 = std::pow(10.0, -2.0 + 5.0 * u(rng));
    const double e_c = std::pow(10.0, -1.3 + 1.6 * u(rng));
    const CircuitEnergies c =
        energies_from_dimensionless(DimensionlessPotential(eps2, eps4), e_c);
    const VariationalSpectrum v = variational_energies(c);
    const Spectrum s = diagonalize(c, 2);
    const double slack0 = 1e-9 * std::max(1.0, std::abs(s.energies[0]));
    const double slack1 = 1e-9 * std::max(1.0, std::abs(s.energies[1]));
    if (v.e0 < s.energies[0] - slack0 || v.e1 < s.energies[1] - slack1)
      ++violations;
    worst_margin = std::min(
        {worst_margin, v.e0 - s.energies[0], v.e1 - s.energies[1]});
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = violations == 0;
  std::ostringstream d;
  d << "200 random single-well inputs: " << violations
    << " bound violations (worst margin " << worst_margin << " GHz)";
  r.detail = d.str();
  return r;
}

inline CriterionResult criterion_6_fig3_optimum(int threads) {
  using namespace validation_detail;
  CriterionResult r{6, "fig3-infidelity-optimum"};
  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult sw = sweep_infidelity(4.5, 41, 41, table1_noise(),
                                          EnvelopeMode::plot, threads);
  double best = std::numeric_limits<double>::infinity();
  double best_ratio = 0.0, best_z = 0.0;
  for (const auto& c : sw.cells) {
    if (std::isfinite(c.infidelity) && c.infidelity < best) {
      best = c.infidelity;
      best_ratio = c.ratio;
      best_z = c.z;
    }
  }
  const auto trace = optimum_trace(sw);
  double z_opt_lo = std::numeric_limits<double>::infinity(), z_opt_hi = 0.0;
  int outside = 0;
  for (const auto& t : trace) {
    z_opt_lo = std::min(z_opt_lo, t.z_opt);
    z_opt_hi = std::max(z_opt_hi, t.z_opt);
    if (t.z_opt < 1000.0 || t.z_opt > 4000.0) ++outside;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool min_ok = best >= 1e-5 && best <= 4e-5;
  const bool loc_ok = best_ratio >= 0.95 && best_z >= 700.0 && best_z <= 1500.0;
  const bool trace_ok = outside == 0;
  const bool time_ok = r.seconds < 300.0;
  r.pass = min_ok && loc_ok && trace_ok && time_ok;
  std::ostringstream d;
  d << "41x41 sweep: global min " << best << " (in [1e-5, 4e-5]) at ratio = "
    << best_ratio << " (>=0.95), z = " << best_z
    << " ohm (in [700, 1500]); per-ratio z_opt in [" << z_opt_lo << ", "
    << z_opt_hi << "] ohm with " << outside
    << " columns outside [1000, 4000]; runtime " << r.seconds << " s (< 300 s)";
  r.detail = d.str();
  return r;
}

inline CriterionResult criterion_7_fig4b_scaling() {
  using namespace validation_detail;
  CriterionResult r{7, "fig4b-t1-frequency-scaling"};
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> f01s;
  for (int i = 0; i < 10; ++i)
    f01s.push_back(2.0 * std::pow(3.0, i / 9.0));  // 2 .. 6 GHz
  const std::vector<double> sub = {0.25, 0.3, 0.35, 0.4, 0.5, 0.65, 0.8, 0.95};
  std::vector<double> all = sub;
  all.insert(all.end(), f01s.begin(), f01s.end());
  const auto rows = t1_vs_frequency(0.754, 315.0, table1_noise(), all);

  // least-squares slope of log T1 vs log f01 over the 2-6 GHz block
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const std::size_t n0 = sub.size();
  const std::size_t m = rows.size() - n0;
  for (std::size_t i = n0; i < rows.size(); ++i) {
    const double x = std::log(rows[i].f01), y = std::log(rows[i].t1);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);

  double min_sub_slope = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < n0; ++i) {
    const double s = (std::log(rows[i].t1) - std::log(rows[i - 1].t1)) /
                     (std::log(rows[i].f01) - std::log(rows[i - 1].f01));
    min_sub_slope = std::min(min_sub_slope, std::abs(s));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = slope >= -1.15 && slope <= -0.85 && min_sub_slope < 0.8;
  std::ostringstream d;
  d << "fitted slope over 2-6 GHz = " << slope
    << " (required -1 +-0.15); min |local slope| below 1 GHz = "
    << min_sub_slope << " (< 0.8)";
  r.detail = d.str();
  return r;
}

inline CriterionResult criterion_8_fig4c_point() {
  CriterionResult r{8, "fig4c-optimal-t1"};
  const auto t0 = std::chrono::steady_clock::now();
  const NoiseEnvironment base(15.0e-6, 1e7, 0.025);
  const auto rows =
      t1_noise_grid({15.0e-6}, {1e7}, DesignPoint(1.0, 1.0, 1000.0), base);
  const double t1 = rows.front().t1;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = t1 >= 1e-3;
  std::ostringstream d;
  d << "T1(f01 = 1 GHz, ratio = 1, z = 1 kOhm, T = 25 mK, Q = 1e7, A = 15 uPhi0) = "
    << t1 * 1e3 << " ms (required >= 1 ms); flux-only "
    << 1e3 / rows.front().gamma1_flux << " ms, dielectric-only "
    << 1e3 / rows.front().gamma1_diel << " ms";
  r.detail = d.str();
  return r;
}

inline CriterionResult criterion_9_fig5e_flux_limited_t1() {
  CriterionResult r{9, "fig5e-flux-limited-t1"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto specs = builtin_specs();
  struct Window { const char* name; double lo, hi; };
  const std::vector<Window> windows = {{"unimon1", 64e-6, 96e-6},
                                       {"unimon2", 0.8e-3, 1.2e-3},
                                       {"unimon3", 4.48e-3, 6.72e-3},
                                       {"fluxonium", 7e-3, 13e-3}};
  bool all_ok = true;
  std::ostringstream d;
  for (const auto& w : windows) {
    const QubitSpec* q = nullptr;
    for (const auto& s : specs)
      if (s.name == w.name) q = &s;
    const QubitPoint p = detail::qubit_point(*q, q->sweet_spot_flux());
    const CircuitEnergies c(q->e_j, q->e_l, q->e_c);
    const double t1f =
        1.0 / gamma1_flux(c, q->env, p.phi01, ghz_to_rad_per_s(p.f01));
    const bool ok = t1f >= w.lo && t1f <= w.hi;
    all_ok = all_ok && ok;
    d << w.name << " " << t1f * 1e3 << " ms (in [" << w.lo * 1e3 << ", "
      << w.hi * 1e3 << "])" << (ok ? "" : " FAIL") << "; ";
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = all_ok;
  r.detail = d.str();
  return r;
}

inline CriterionResult criterion_10_fig5ab_spots() {
  CriterionResult r{10, "fig5ab-spot-values"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto specs = builtin_specs();
  const QubitPoint u2 = detail::qubit_point(specs[1], 0.5);
  const QubitPoint tr = detail::qubit_point(specs[3], 0.0);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool u2_ok = std::abs(u2.f01 - 4.5) <= 0.2 && std::abs(u2.alpha - 0.8) <= 0.1;
  const bool tr_ok = std::abs(tr.f01 - 4.5) <= 0.15 &&
                     std::abs(tr.alpha) >= 0.18 && std::abs(tr.alpha) <= 0.25;
  r.pass = u2_ok && tr_ok;
  std::ostringstream d;
  d << "unimon2: f01 = " << u2.f01 << " GHz (4.5 +-0.2), alpha = " << u2.alpha
    << " GHz (0.8 +-0.1); transmon: f01 = " << tr.f01
    << " GHz (4.5 +-0.15), |alpha| = " << std::abs(tr.alpha)
    << " GHz (in [0.18, 0.25])";
  r.detail = d.str();
  return r;
}

inline CriterionResult criterion_11_oracle_identities() {
  CriterionResult r{11, "oracle-identities"};
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(54321);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  // commutator identity |<0|n|1>| = (E1 - E0) |<0|phi|1>| / (8 E_C)
  double worst_comm = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double eps2 = std::pow(10.0, -1.0 + 3.0 * u(rng));
    const double eps4 = std::pow(10.0, -1.0 + 3.0 * u(rng));
    const double e_c = std::pow(10.0, -0.7 + u(rng));
    const CircuitEnergies c =
        energies_from_dimensionless(DimensionlessPotential(eps2, eps4), e_c);
    const Spectrum s = diagonalize(c, 2);
    const double n01 = matrix_element_n(s, 0, 1);
    const double pred = (s.energies[1] - s.energies[0]) *
                        matrix_element_phi(s, 0, 1) / (8.0 * c.e_c);
    worst_comm = std::max(worst_comm, std::abs(n01 - pred) / n01);
  }

  // harmonic-limit closed forms
  const CircuitEnergies ho(0.0, 25.2, 0.297);
  const Spectrum hs = diagonalize(ho, default_grid(ho, 4001), 2);
  const double f01_exact = std::sqrt(8.0 * ho.e_c * ho.e_l);
  const double p01sq_exact = std::sqrt(2.0 * ho.e_c / ho.e_l);
  const double n01sq_exact = std::sqrt(ho.e_l / (32.0 * ho.e_c));
  const double ef = std::abs((hs.energies[1] - hs.energies[0]) - f01_exact) / f01_exact;
  const double p01 = matrix_element_phi(hs, 0, 1);
  const double n01 = matrix_element_n(hs, 0, 1);
  const double ep = std::abs(p01 * p01 - p01sq_exact) / p01sq_exact;
  const double en = std::abs(n01 * n01 - n01sq_exact) / n01sq_exact;
  const double worst_harm = std::max({ef, ep, en});

  // perturbative vs finite-difference flux curvature
  double worst_kappa = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double eps2 = std::pow(10.0, -1.0 + 3.0 * u(rng));
    const double eps4 = std::pow(10.0, -1.0 + 3.0 * u(rng));
    const double e_c = std::pow(10.0, -0.7 + u(rng));
    const CircuitEnergies c =
        energies_from_dimensionless(DimensionlessPotential(eps2, eps4), e_c);
    const double kp = flux_curvature(c);
    const double kf = flux_curvature_fd(c, 0.02).kappa;
    worst_kappa = std::max(worst_kappa, std::abs(kp - kf) / std::abs(kf));
  }

  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = worst_comm <= 1e-4 && worst_harm <= 1e-6 && worst_kappa <= 0.05;
  std::ostringstream d;
  d << "commutator identity worst = " << worst_comm
    << " (<=1e-4, 100 inputs); harmonic closed-form worst = " << worst_harm
    << " (<=1e-6); kappa pert-vs-fd worst = " << worst_kappa * 100
    << "% (<=5%, 50 inputs)";
  r.detail = d.str();
  return r;
}

inline CriterionResult criterion_12_determinism(int threads) {
  using namespace validation_detail;
  CriterionResult r{12, "sweep-determinism"};
  const auto t0 = std::chrono::steady_clock::now();
  const NoiseEnvironment env = table1_noise();
  const std::string a =
      sweep_csv_string(sweep_infidelity(4.5, 6, 6, env, EnvelopeMode::plot, 1));
  const std::string b =
      sweep_csv_string(sweep_infidelity(4.5, 6, 6, env, EnvelopeMode::plot, 1));
  const int par = threads > 1 ? threads : 4;
  const std::string c =
      sweep_csv_string(sweep_infidelity(4.5, 6, 6, env, EnvelopeMode::plot, par));
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = (a == b) && (a == c);
  std::ostringstream d;
  d << "repeated 6x6 sweeps byte-identical: serial " << (a == b ? "yes" : "NO")
    << ", " << par << "-thread vs serial " << (a == c ? "yes" : "NO");
  r.detail = d.str();
  return r;
}

// Runs the full suite (or a subset of criterion ids); the callback fires
// after each criterion so progress can be streamed.
inline std::vector<CriterionResult> run_acceptance(
    int threads = 1, const std::vector<int>& only = {},
    const std::function<void(const CriterionResult&)>& cb = {}) {
  std::vector<std::function<CriterionResult()>> suite = {
      [] { return criterion_1_table1(); },
      [] { return criterion_2_variational_envelope(); },
      [] { return criterion_3_anharmonicity_ceiling(); },
      [] { return criterion_4_width_inequality(); },
      [] { return criterion_5_variational_bound(); },
      [threads] { return criterion_6_fig3_optimum(threads); },
      [] { return criterion_7_fig4b_scaling(); },
      [] { return criterion_8_fig4c_point(); },
      [] { return criterion_9_fig5e_flux_limited_t1(); },
      [] { return criterion_10_fig5ab_spots(); },
      [] { return criterion_11_oracle_identities(); },
      [threads] { return criterion_12_determinism(threads); },
  };
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() &&
        std::find(only.begin(), only.end(), id) == only.end())
      continue;
    CriterionResult res = suite[i]();
    if (cb) cb(res);
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace qforge
