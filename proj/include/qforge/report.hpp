#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qforge/compare.hpp"
#include "qforge/design_space.hpp"
#include "qforge/io.hpp"

// CSV and JSON emitters for the sweep and comparison recipes.  Every file
// embeds the run configuration as a comment (CSV) or field (JSON) so runs
// are reproducible from their outputs alone.
namespace qforge {

inline void write_sweep_csv(std::ostream& out, const SweepResult& r,
                            const std::string& config_echo) {
  out << "# qforge " << kVersion << " sweep metric=" << r.metric << "\n";
  if (!config_echo.empty()) out << "# config: " << config_echo << "\n";
  out << "ratio,z_ohm,f01_GHz,e_j_GHz,e_l_GHz,e_c_GHz,alpha_GHz,"
         "kappa_rad_per_s_per_phi0sq,gamma1_flux_per_s,gamma1_diel_per_s,"
         "t1_s,t_phi_s,infidelity,flags\n";
  for (const auto& c : r.cells) {
    out << fmt_double(c.ratio) << ',' << fmt_double(c.z) << ','
        << fmt_double(c.f01) << ',' << fmt_double(c.e_j) << ','
        << fmt_double(c.e_l) << ',' << fmt_double(c.e_c) << ','
        << fmt_double(c.alpha) << ',' << fmt_double(c.kappa) << ','
        << fmt_double(c.gamma1_flux) << ',' << fmt_double(c.gamma1_diel) << ','
        << fmt_double(c.t1) << ',' << fmt_double(c.t_phi) << ','
        << fmt_double(c.infidelity) << ',' << cell_flag_names(c.flags) << "\n";
  }
}

inline nlohmann::json sweep_summary_json(const SweepResult& r,
                                         const nlohmann::json& config) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["config"] = config;
  j["metric"] = r.metric;
  j["f01_target_GHz"] = r.f01_target;

  nlohmann::json trace = nlohmann::json::array();
  for (const auto& t : optimum_trace(r)) {
    trace.push_back({{"ratio", t.ratio}, {"z_opt_ohm", t.z_opt}, {"value", t.value}});
  }
  j["optimum_trace"] = trace;

  const CellRecord* best = nullptr;
  double best_value = std::numeric_limits<double>::infinity();
  for (const auto& c : r.cells) {
    const double v = metric_value(r, c);
    if (std::isfinite(v) && v < best_value) {
      best_value = v;
      best = &c;
    }
  }
  if (best) {
    j["global_optimum"] = {{"ratio", best->ratio},
                           {"z_ohm", best->z},
                           {"value", best_value},
                           {"f01_GHz", best->f01},
                           {"infidelity", best->infidelity}};
  }
  return j;
}

inline void write_flux_profile_csv(std::ostream& out, const FluxProfile& fp,
                                   const std::string& config_echo) {
  out << "# qforge " << kVersion << " flux profile qubit=" << fp.qubit << "\n";
  if (!config_echo.empty()) out << "# config: " << config_echo << "\n";
  out << "flux_phi0,f01_GHz,alpha_GHz,t_g_lim_s\n";
  for (const auto& p : fp.points)
    out << fmt_double(p.flux) << ',' << fmt_double(p.f01) << ','
        << fmt_double(p.alpha) << ',' << fmt_double(p.t_g_lim) << "\n";
}

inline void write_relaxation_csv(std::ostream& out, const std::string& qubit,
                                 RelaxationAxis axis,
                                 const std::vector<RelaxationRow>& rows,
                                 const std::string& config_echo) {
  out << "# qforge " << kVersion << " relaxation qubit=" << qubit << "\n";
  if (!config_echo.empty()) out << "# config: " << config_echo << "\n";
  out << (axis == RelaxationAxis::frequency ? "flux_phi0" : "q_diel")
      << ",f01_GHz,t1_flux_s,t1_diel_s,t1_total_s\n";
  for (const auto& row : rows)
    out << fmt_double(row.axis_value) << ',' << fmt_double(row.f01) << ','
        << fmt_double(row.t1_flux) << ',' << fmt_double(row.t1_diel) << ','
        << fmt_double(row.t1_total) << "\n";
}

inline void write_dephasing_csv(std::ostream& out, const std::string& qubit,
                                const std::vector<DephasingRow>& rows,
                                const std::string& config_echo) {
  out << "# qforge " << kVersion << " dephasing qubit=" << qubit << "\n";
  if (!config_echo.empty()) out << "# config: " << config_echo << "\n";
  out << "offset_phi0,slope_rad_per_s_per_phi0,kappa_rad_per_s_per_phi0sq,"
         "t_phi_first_s,first_order_diverged,t_phi_second_s\n";
  for (const auto& row : rows)
    out << fmt_double(row.offset) << ',' << fmt_double(row.slope) << ','
        << fmt_double(row.kappa) << ',' << fmt_double(row.t_phi_first) << ','
        << (row.first_diverged ? 1 : 0) << ','
        << fmt_double(row.t_phi_second) << "\n";
}

inline nlohmann::json qubit_manifest_json(const std::vector<QubitSpec>& specs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& q : specs) {
    arr.push_back({{"name", q.name},
                   {"kind", qubit_kind_name(q.kind)},
                   {"e_j_GHz", q.e_j},
                   {"e_l_GHz", q.e_l},
                   {"e_c_GHz", q.e_c},
                   {"n_g", q.n_g},
                   {"a_phi_phi0", q.env.a_phi},
                   {"q_diel", q.env.q_diel},
                   {"temperature_K", q.env.temperature}});
  }
  return {{"version", kVersion}, {"qubits", arr}};
}

}  // namespace qforge
