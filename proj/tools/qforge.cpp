// qforge command-line interface: spectrum, sweep, compare, coherence,
// fidelity, and validate subcommands.  All commands are deterministic given
// a configuration; the effective configuration is echoed into every output
// file.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qforge/compare.hpp"
#include "qforge/design_space.hpp"
#include "qforge/fidelity.hpp"
#include "qforge/report.hpp"
#include "qforge/validation.hpp"
#include "qforge/variational.hpp"

namespace {

using nlohmann::json;

int default_threads() {
  if (const char* env = std::getenv("QFORGE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Pre-scan for --config so file values become defaults that explicit flags
// then override.
std::optional<json> load_config(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      std::ifstream in(argv[i + 1]);
      if (!in) throw std::domain_error(std::string("cannot read config ") + argv[i + 1]);
      json j;
      in >> j;
      return j;
    }
  }
  return std::nullopt;
}

template <typename T>
void from_config(const std::optional<json>& cfg, const std::string& key, T& value) {
  if (cfg && cfg->contains(key)) value = cfg->at(key).get<T>();
}

struct NoiseFlags {
  double a_phi = 15e-6;
  double q_diel = 3.5e5;
  double temperature = 0.025;
  double omega_ir = 1e3;
  double nu = 1.0;

  void attach(CLI::App* cmd, const std::optional<json>& cfg) {
    from_config(cfg, "a_phi", a_phi);
    from_config(cfg, "q_diel", q_diel);
    from_config(cfg, "temperature", temperature);
    from_config(cfg, "omega_ir", omega_ir);
    from_config(cfg, "nu", nu);
    cmd->add_option("--a-phi", a_phi, "flux-noise PSD amplitude at 1 Hz (Phi0)")
        ->capture_default_str();
    cmd->add_option("--q-diel", q_diel, "dielectric quality factor")
        ->capture_default_str();
    cmd->add_option("--temp", temperature, "bath temperature (K)")
        ->capture_default_str();
    cmd->add_option("--omega-ir", omega_ir, "infrared cutoff (rad/s)")
        ->capture_default_str();
    cmd->add_option("--nu", nu, "pulse parameter in t_g = 2 pi nu / |alpha|")
        ->capture_default_str();
  }

  qforge::NoiseEnvironment env() const {
    return qforge::NoiseEnvironment(a_phi, q_diel, temperature, omega_ir, nu);
  }

  json to_json() const {
    return {{"a_phi", a_phi},
            {"q_diel", q_diel},
            {"temperature", temperature},
            {"omega_ir", omega_ir},
            {"nu", nu}};
  }
};

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  return out;
}

// ---------------------------------------------------------------------------

int cmd_spectrum(double ej, double el, double ec, double phi_diff,
                 const std::string& method, bool as_json) {
  using namespace qforge;
  CircuitEnergies c(ej, el, ec, phi_diff);
  json out;
  out["input"] = {{"e_j_GHz", ej}, {"e_l_GHz", el}, {"e_c_GHz", ec},
                  {"phi_diff_rad", phi_diff}};
  if (el > 0.0) out["impedance_ohm"] = impedance(c);

  std::optional<Spectrum> num;
  if (method != "variational") {
    num = diagonalize(c, 3);
    const double f01 = num->energies[1] - num->energies[0];
    const double f12 = num->energies[2] - num->energies[1];
    out["numeric"] = {{"f01_GHz", f01}, {"f12_GHz", f12}, {"alpha_GHz", f12 - f01}};
  }
  if (method != "numeric") {
    const VariationalSpectrum v = variational_energies(c);
    out["variational"] = {{"f01_GHz", v.f01}, {"f12_GHz", v.f12}, {"alpha_GHz", v.alpha}};
    if (num) {
      const double f01 = num->energies[1] - num->energies[0];
      const double f12 = num->energies[2] - num->energies[1];
      out["relative_deviation"] = {
          {"f01", std::abs(v.f01 - f01) / f01},
          {"f12", std::abs(v.f12 - f12) / f12},
          {"alpha", (f12 - f01) != 0.0
                        ? std::abs(v.alpha - (f12 - f01)) / std::abs(f12 - f01)
                        : 0.0}};
    }
  }
  if (as_json) {
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "qubit spectrum (GHz)\n";
  if (out.contains("impedance_ohm"))
    std::cout << "  impedance: " << out["impedance_ohm"].get<double>() << " ohm\n";
  for (const char* key : {"numeric", "variational"}) {
    if (!out.contains(key)) continue;
    const auto& s = out[key];
    std::cout << "  " << key << ": f01 = " << s["f01_GHz"].get<double>()
              << ", f12 = " << s["f12_GHz"].get<double>()
              << ", alpha = " << s["alpha_GHz"].get<double>() << "\n";
  }
  if (out.contains("relative_deviation")) {
    const auto& d = out["relative_deviation"];
    std::cout << "  deviation: f01 " << d["f01"].get<double>() * 100
              << "%, f12 " << d["f12"].get<double>() * 100 << "%, alpha "
              << d["alpha"].get<double>() * 100 << "%\n";
  }
  return 0;
}

int cmd_sweep(double f01, const std::string& metric, int n_ratio, int n_z,
              const NoiseFlags& noise, const std::string& out_dir,
              bool strict_envelope, int threads, bool as_json) {
  using namespace qforge;
  const EnvelopeMode mode =
      strict_envelope ? EnvelopeMode::strict : EnvelopeMode::plot;
  const SweepResult r =
      metric == "coherence-ratio"
          ? sweep_coherence_ratio(f01, n_ratio, n_z, noise.env(), mode, threads)
          : sweep_infidelity(f01, n_ratio, n_z, noise.env(), mode, threads);

  json cfg = {{"command", "sweep"},   {"schema_version", 1},
              {"f01", f01},           {"metric", metric},
              {"n_ratio", n_ratio},   {"n_z", n_z},
              {"noise", noise.to_json()},
              {"strict_envelope", strict_envelope}};

  auto csv = open_out(out_dir, "sweep_" + metric + ".csv");
  write_sweep_csv(csv, r, cfg.dump());
  auto js = open_out(out_dir, "sweep_" + metric + ".json");
  const json summary = sweep_summary_json(r, cfg);
  js << summary.dump(2) << "\n";

  int flagged = 0;
  for (const auto& c : r.cells)
    if (c.flags) ++flagged;
  if (as_json) {
    std::cout << summary.dump(2) << "\n";
  } else {
    std::cout << "sweep " << metric << " at f01 = " << f01 << " GHz: "
              << r.cells.size() << " cells, " << flagged << " flagged\n";
    if (summary.contains("global_optimum")) {
      const auto& g = summary["global_optimum"];
      std::cout << "  global optimum " << g["value"].get<double>()
                << " at ratio = " << g["ratio"].get<double>()
                << ", z = " << g["z_ohm"].get<double>() << " ohm\n";
    }
    std::cout << "  wrote " << out_dir << "/sweep_" << metric << ".{csv,json}\n";
  }
  return 0;
}

int cmd_compare(const std::string& panel, const std::string& qubit_filter,
                double ng, int flux_points, const NoiseFlags& noise,
                bool noise_overridden, const std::string& out_dir) {
  using namespace qforge;
  std::vector<QubitSpec> specs = builtin_specs();
  if (!qubit_filter.empty()) {
    std::vector<QubitSpec> keep;
    for (auto& q : specs)
      if (q.name == qubit_filter || qubit_kind_name(q.kind) == qubit_filter)
        keep.push_back(q);
    if (keep.empty())
      throw std::domain_error("compare: unknown qubit '" + qubit_filter + "'");
    specs = keep;
  }
  for (auto& q : specs) {
    if (q.kind == QubitKind::transmon) q.n_g = ng;
    if (noise_overridden) q.env = noise.env();
  }

  json cfg = {{"command", "compare"}, {"schema_version", 1},
              {"panel", panel},       {"qubit", qubit_filter},
              {"n_g", ng},            {"flux_points", flux_points}};
  const std::string echo = cfg.dump();

  auto want = [&](char p) { return panel == "all" || panel == std::string(1, p); };

  std::vector<double> flux_grid;
  for (int i = 0; i < flux_points; ++i)
    flux_grid.push_back(static_cast<double>(i) / (flux_points - 1));

  if (want('a') || want('b') || want('c')) {
    for (const auto& q : specs) {
      const FluxProfile fp = flux_profile(q, flux_grid);
      auto out = open_out(out_dir, "panel_abc_" + q.name + ".csv");
      write_flux_profile_csv(out, fp, echo);
    }
  }
  if (want('d')) {
    std::vector<double> half;
    for (int i = 0; i < flux_points; ++i)
      half.push_back(0.5 * i / (flux_points - 1));
    for (const auto& q : specs) {
      const auto rows = relaxation_profile(q, RelaxationAxis::frequency, half);
      auto out = open_out(out_dir, "panel_d_" + q.name + ".csv");
      write_relaxation_csv(out, q.name, RelaxationAxis::frequency, rows, echo);
    }
  }
  if (want('e')) {
    std::vector<double> qs;
    for (int i = 0; i <= 32; ++i)
      qs.push_back(std::pow(10.0, 4.0 + 4.0 * i / 32.0));
    for (const auto& q : specs) {
      const auto rows = relaxation_profile(q, RelaxationAxis::q_diel, qs);
      auto out = open_out(out_dir, "panel_e_" + q.name + ".csv");
      write_relaxation_csv(out, q.name, RelaxationAxis::q_diel, rows, echo);
    }
  }
  if (want('f')) {
    std::vector<double> offsets;
    for (int i = 0; i <= 40; ++i) offsets.push_back(-0.02 + 0.04 * i / 40.0);
    for (const auto& q : specs) {
      const auto rows = dephasing_vs_offset(q, offsets);
      auto out = open_out(out_dir, "panel_f_" + q.name + ".csv");
      write_dephasing_csv(out, q.name, rows, echo);
    }
  }

  auto manifest = open_out(out_dir, "compare_manifest.json");
  json m = qubit_manifest_json(specs);
  m["config"] = cfg;
  manifest << m.dump(2) << "\n";
  std::cout << "compare: wrote panel CSVs and compare_manifest.json to "
            << out_dir << "\n";
  return 0;
}

int cmd_coherence(double ej, double el, double ec, const NoiseFlags& noise,
                  bool as_json) {
  using namespace qforge;
  const CircuitEnergies c(ej, el, ec);
  const NoiseEnvironment env = noise.env();
  const Spectrum s = diagonalize(c, 3);
  const RelaxationBreakdown rb = relaxation_breakdown(c, env, s);
  const double kappa = c.e_j > 0.0 ? flux_curvature_from_spectrum(c, s) : 0.0;
  const DephasingModel dm = dephasing_model(kappa, env);

  json out = {{"f01_GHz", s.energies[1] - s.energies[0]},
              {"gamma1_flux_per_s", rb.gamma1_flux},
              {"gamma1_diel_per_s", rb.gamma1_diel},
              {"gamma1_total_per_s", rb.gamma1_total},
              {"t1_s", rb.t1},
              {"kappa_rad_per_s_per_phi0sq", dm.kappa},
              {"quasirate_per_s", dm.quasirate},
              {"t_phi_tilde_s", dm.t_phi_tilde}};
  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "coherence model\n"
              << "  f01 = " << out["f01_GHz"].get<double>() << " GHz\n"
              << "  Gamma1 flux/diel/total = " << rb.gamma1_flux << " / "
              << rb.gamma1_diel << " / " << rb.gamma1_total << " 1/s\n"
              << "  T1 = " << rb.t1 * 1e6 << " us\n"
              << "  kappa = " << dm.kappa << " rad/s/Phi0^2, quasirate = "
              << dm.quasirate << " 1/s, T~phi = " << dm.t_phi_tilde * 1e6
              << " us\n";
  }
  return 0;
}

int cmd_fidelity(double ej, double el, double ec, const NoiseFlags& noise,
                 bool strict_envelope, bool as_json) {
  using namespace qforge;
  const CircuitEnergies c(ej, el, ec);
  const InfidelityBreakdown b = infidelity_at(
      c, noise.env(),
      strict_envelope ? EnvelopeMode::strict : EnvelopeMode::plot);
  json out = {{"f01_GHz", b.f01},
              {"alpha_GHz", b.alpha},
              {"t_g_s", b.t_g},
              {"gamma1_total_per_s", b.relaxation.gamma1_total},
              {"t1_s", b.relaxation.t1},
              {"t_phi_tilde_s", b.dephasing.t_phi_tilde},
              {"envelope_re", b.envelope_re},
              {"envelope_clamped", b.envelope_clamped},
              {"infidelity", b.infidelity}};
  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "average gate infidelity = " << b.infidelity << "\n"
              << "  f01 = " << b.f01 << " GHz, alpha = " << b.alpha
              << " GHz, t_g = " << b.t_g * 1e9 << " ns\n"
              << "  T1 = " << b.relaxation.t1 * 1e6 << " us, T~phi = "
              << b.dephasing.t_phi_tilde * 1e6 << " us, Re f(t_g) = "
              << b.envelope_re << "\n";
  }
  return 0;
}

int cmd_validate(const std::vector<int>& criteria, int threads, bool as_json) {
  using namespace qforge;
  json results = json::array();
  int failures = 0;
  auto cb = [&](const CriterionResult& r) {
    if (!r.pass) ++failures;
    if (!as_json) {
      std::printf("[%s] %2d %-32s %s (%.2f s)\n", r.pass ? "PASS" : "FAIL",
                  r.id, r.name.c_str(), r.detail.c_str(), r.seconds);
      std::fflush(stdout);
    }
    results.push_back({{"id", r.id},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"detail", r.detail},
                       {"seconds", r.seconds}});
  };
  run_acceptance(threads, criteria, cb);
  if (as_json) std::cout << results.dump(2) << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qforge: design toolkit for single-well superconducting qubits"};
  app.require_subcommand(1);

  std::optional<json> cfg;
  try {
    cfg = load_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override)");
  int threads = default_threads();
  app.add_option("--threads", threads, "worker threads for sweeps")
      ->capture_default_str();
  bool as_json = false;
  app.add_flag("--json", as_json, "emit machine-readable JSON to stdout");
  std::string out_dir = ".";
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  if (cfg) {
    from_config(cfg, "threads", threads);
    from_config(cfg, "out", out_dir);
  }

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "variational and numeric spectrum");
  double ej = 0.0, el = 0.0, ec = 0.0, phi_diff = qforge::kPi;
  std::string method = "both";
  from_config(cfg, "e_j", ej);
  from_config(cfg, "e_l", el);
  from_config(cfg, "e_c", ec);
  spectrum->add_option("--ej", ej, "E_J/h (GHz)");
  spectrum->add_option("--el", el, "E_L/h (GHz)");
  spectrum->add_option("--ec", ec, "E_C/h (GHz)");
  spectrum->add_option("--phi-diff", phi_diff, "external phase bias (rad)")
      ->capture_default_str();
  spectrum->add_option("--method", method, "both|numeric|variational")
      ->check(CLI::IsMember({"both", "numeric", "variational"}))
      ->capture_default_str();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "grid sweep over (E_J/E_L, Z)");
  double f01 = 4.5;
  std::string metric = "infidelity";
  int n_ratio = 41, n_z = 41;
  bool strict_envelope = false;
  NoiseFlags sweep_noise;
  from_config(cfg, "f01", f01);
  from_config(cfg, "n_ratio", n_ratio);
  from_config(cfg, "n_z", n_z);
  sweep->add_option("--f01", f01, "target qubit frequency (GHz)")
      ->capture_default_str();
  sweep->add_option("--metric", metric, "infidelity|coherence-ratio")
      ->check(CLI::IsMember({"infidelity", "coherence-ratio"}))
      ->capture_default_str();
  sweep->add_option("--n-ratio", n_ratio, "grid points along E_J/E_L")
      ->capture_default_str();
  sweep->add_option("--n-z", n_z, "grid points along Z")->capture_default_str();
  sweep->add_flag("--strict-envelope", strict_envelope,
                  "treat envelope-domain violations as errors");
  sweep_noise.attach(sweep, cfg);

  // compare
  auto* compare = app.add_subcommand("compare", "unimon/transmon/fluxonium comparison");
  std::string panel = "all", qubit_filter;
  double ng = 0.0;
  int flux_points = 101;
  NoiseFlags compare_noise;
  compare->add_option("--panel", panel, "a|b|c|d|e|f|all")
      ->check(CLI::IsMember({"a", "b", "c", "d", "e", "f", "all"}))
      ->capture_default_str();
  compare->add_option("--qubit", qubit_filter,
                      "restrict to one qubit (name or kind)");
  compare->add_option("--ng", ng, "transmon offset charge")->capture_default_str();
  compare->add_option("--flux-points", flux_points, "points along the flux axis")
      ->capture_default_str();
  compare_noise.attach(compare, cfg);

  // coherence
  auto* coherence = app.add_subcommand("coherence", "relaxation and dephasing rates");
  double cej = 0.0, cel = 0.0, cec = 0.0;
  NoiseFlags coherence_noise;
  from_config(cfg, "e_j", cej);
  from_config(cfg, "e_l", cel);
  from_config(cfg, "e_c", cec);
  coherence->add_option("--ej", cej, "E_J/h (GHz)");
  coherence->add_option("--el", cel, "E_L/h (GHz)");
  coherence->add_option("--ec", cec, "E_C/h (GHz)");
  coherence_noise.attach(coherence, cfg);

  // fidelity
  auto* fidelity = app.add_subcommand("fidelity", "average gate infidelity pipeline");
  double fej = 0.0, fel = 0.0, fec = 0.0;
  bool fstrict = false;
  NoiseFlags fidelity_noise;
  from_config(cfg, "e_j", fej);
  from_config(cfg, "e_l", fel);
  from_config(cfg, "e_c", fec);
  fidelity->add_option("--ej", fej, "E_J/h (GHz)");
  fidelity->add_option("--el", fel, "E_L/h (GHz)");
  fidelity->add_option("--ec", fec, "E_C/h (GHz)");
  fidelity->add_flag("--strict-envelope", fstrict,
                     "treat envelope-domain violations as errors");
  fidelity_noise.attach(fidelity, cfg);

  // validate
  auto* validate = app.add_subcommand("validate", "run the acceptance suite");
  std::vector<int> criteria;
  validate->add_option("--criterion", criteria,
                       "run only the given criterion ids (1-12)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum->parsed())
      return cmd_spectrum(ej, el, ec, phi_diff, method, as_json);
    if (sweep->parsed())
      return cmd_sweep(f01, metric, n_ratio, n_z, sweep_noise, out_dir,
                       strict_envelope, threads, as_json);
    if (compare->parsed()) {
      const bool noise_overridden =
          compare->count("--a-phi") || compare->count("--q-diel") ||
          compare->count("--temp") || compare->count("--omega-ir") ||
          compare->count("--nu");
      return cmd_compare(panel, qubit_filter, ng, flux_points, compare_noise,
                         noise_overridden, out_dir);
    }
    if (coherence->parsed())
      return cmd_coherence(cej, cel, cec, coherence_noise, as_json);
    if (fidelity->parsed())
      return cmd_fidelity(fej, fel, fec, fidelity_noise, fstrict, as_json);
    if (validate->parsed()) return cmd_validate(criteria, threads, as_json);
  } catch (const qforge::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
