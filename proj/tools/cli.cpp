#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "dstbc/analysis.hpp"
#include "dstbc/config.hpp"
#include "dstbc/harness.hpp"
#include "dstbc/report.hpp"
#include "embedded_configs.hpp"

namespace dstbc::cli {

namespace {

struct SimOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> snr;
  std::optional<std::string> mod;
  std::optional<std::string> channel;
  std::optional<double> doppler_hz;
  std::optional<double> kappa_db;
  std::optional<double> phi_deg;
  std::optional<std::string> iqi;
  std::optional<std::string> detection;
  std::optional<std::string> compensation;
  std::optional<double> mu;
  std::optional<std::uint64_t> min_bits;
  std::optional<std::uint64_t> max_block_pairs;
  std::optional<std::uint64_t> frame_block_pairs;
  std::optional<std::string> noise;
  std::string out = "-";
  std::string json;
  std::string gamma_trace;
  unsigned threads = 0;
};

struct AnalyticOptions {
  std::string config;
  std::optional<double> irr_db;
  std::optional<double> kappa_db;
  std::optional<double> phi_deg;
  std::optional<std::string> mod;
  std::optional<std::string> snr;
  std::string out = "-";
  std::string json;
};

template <typename T>
std::string text(const T& v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void add_sim_options(CLI::App* app, SimOptions& o) {
  app->add_option("--config", o.config, "Experiment file (built-in: paper_fig1.cfg, paper_fig2.cfg, paper_fig2_fast.cfg)");
  app->add_option("--seed", o.seed, "Master seed");
  app->add_option("--snr", o.snr, "SNR grid in dB, start:stop:step or a comma separated list");
  app->add_option("--mod", o.mod, "bpsk, qpsk, 8psk or 16psk");
  app->add_option("--channel", o.channel, "itu-pb, itu-va or flat");
  app->add_option("--doppler-hz", o.doppler_hz, "Maximum Doppler shift in Hz");
  app->add_option("--iqi-kappa-db", o.kappa_db, "Receive amplitude imbalance in dB (enables IQI)");
  app->add_option("--iqi-phi-deg", o.phi_deg, "Receive phase imbalance in degrees (enables IQI)");
  app->add_option("--iqi", o.iqi, "on or off");
  app->add_option("--detection", o.detection, "differential or coherent");
  app->add_option("--compensation", o.compensation, "off, genie_gamma or lms");
  app->add_option("--mu", o.mu, "LMS step size");
  app->add_option("--min-bits", o.min_bits, "Bits counted per SNR point");
  app->add_option("--max-block-pairs", o.max_block_pairs, "Upper bound on information blocks per SNR point");
  app->add_option("--frame-block-pairs", o.frame_block_pairs, "Information blocks per fading realization");
  app->add_option("--noise", o.noise, "on, or off for a noiseless run");
  app->add_option("--out", o.out, "CSV output file, - for stdout");
  app->add_option("--json", o.json, "Also write the results as JSON to this file");
  app->add_option("--threads", o.threads, "Worker threads, 0 for all cores");
}

ConfigEntries load_entries(const std::string& config) {
  if (config.empty()) return {};
  if (std::filesystem::exists(config)) return read_config_entries(config);
  if (auto text = embedded_config(std::filesystem::path(config).filename().string());
      text && std::filesystem::path(config).filename() == std::filesystem::path(config)) {
    return parse_config_entries(*text);
  }
  throw ConfigError("cannot open config file '" + config + "'");
}

SimConfig build_config(const SimOptions& o) {
  ConfigEntries e = load_entries(o.config);
  if (o.seed) e["sweep.seed"] = text(*o.seed);
  if (o.snr) e["sweep.snr_db"] = *o.snr;
  if (o.mod) e["system.modulation"] = *o.mod;
  if (o.channel) {
    e["channel.profile"] = *o.channel;
    e.erase("channel.delays_ns");
    e.erase("channel.powers_db");
  }
  if (o.doppler_hz) {
    e.erase("channel.speed_kmh");
    e["channel.doppler_hz"] = text(*o.doppler_hz);
  }
  if (o.kappa_db) e["iqi.kappa_db"] = text(*o.kappa_db);
  if (o.phi_deg) e["iqi.phi_deg"] = text(*o.phi_deg);
  if (o.iqi) {
    e["iqi.enabled"] = *o.iqi;
  } else if (o.kappa_db || o.phi_deg) {
    e["iqi.enabled"] = "on";
  }
  if (o.detection) e["receiver.detection"] = *o.detection;
  if (o.compensation) e["receiver.compensation"] = *o.compensation;
  if (o.mu) e["receiver.mu"] = text(*o.mu);
  if (o.min_bits) e["sweep.min_bits"] = text(*o.min_bits);
  if (o.max_block_pairs) e["sweep.max_block_pairs"] = text(*o.max_block_pairs);
  if (o.frame_block_pairs) e["channel.frame_block_pairs"] = text(*o.frame_block_pairs);
  if (o.noise) e["sweep.noise"] = *o.noise;
  SimConfig cfg = apply_config(SimConfig{}, e);
  cfg.validate();
  return cfg;
}

template <typename Writer>
void emit(const std::string& path, std::ostream& out, Writer&& write) {
  if (path.empty()) return;
  if (path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  write(file);
  if (!file) throw std::runtime_error("error while writing '" + path + "'");
}

int simulate(const SimOptions& o, bool with_analytic, std::ostream& out) {
  const SimConfig cfg = build_config(o);
  const auto records = run_sweep(cfg, o.threads);
  if (with_analytic) {
    const auto points = compare_with_analytic(records, cfg);
    emit(o.out, out, [&](std::ostream& os) { write_compare_csv(os, points); });
    emit(o.json, out, [&](std::ostream& os) { write_compare_json(os, points); });
  } else {
    emit(o.out, out, [&](std::ostream& os) { write_ber_csv(os, records); });
    emit(o.json, out, [&](std::ostream& os) { write_ber_json(os, records); });
  }
  if (!o.gamma_trace.empty()) {
    const auto trajectory = trace_gamma(cfg, cfg.snr_grid_db.back());
    emit(o.gamma_trace, out, [&](std::ostream& os) { write_gamma_trajectory_csv(os, trajectory); });
  }
  return kExitOk;
}

int analytic(const AnalyticOptions& o, std::ostream& out) {
  unsigned order = 8;
  std::vector<double> grid{0, 5, 10, 15, 20, 25, 30, 35, 40};
  double irr_db = std::numeric_limits<double>::infinity();
  if (!o.config.empty()) {
    const SimConfig cfg = apply_config(SimConfig{}, load_entries(o.config));
    order = cfg.order;
    grid = cfg.snr_grid_db;
    irr_db = cfg.iqi.params().irr_db;
  }
  if (o.irr_db && (o.kappa_db || o.phi_deg)) throw ConfigError("give either --irr-db or the IQI parameters, not both");
  if (o.irr_db) {
    if (!(*o.irr_db > 0.0)) throw ConfigError("--irr-db must be positive");
    irr_db = *o.irr_db;
  }
  if (o.kappa_db || o.phi_deg) irr_db = derive_iqi_params(o.kappa_db.value_or(0.0), o.phi_deg.value_or(0.0)).irr_db;
  if (o.mod) order = parse_modulation(*o.mod);
  if (o.snr) grid = parse_snr_grid(*o.snr);
  const auto points = analysis::analytic_curve(order, irr_db, grid);
  emit(o.out, out, [&](std::ostream& os) { write_analytic_csv(os, points); });
  emit(o.json, out, [&](std::ostream& os) { write_analytic_json(os, points); });
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differential Alamouti STBC-OFDM link simulator with receive IQ imbalance", "dstbc"};
  app.require_subcommand(1);

  SimOptions sim_opts;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo BER sweep");
  add_sim_options(sim, sim_opts);
  sim->add_option("--gamma-trace", sim_opts.gamma_trace,
                  "Write the LMS coefficient after every update at the highest SNR point as CSV");

  SimOptions cmp_opts;
  auto* cmp = app.add_subcommand("compare", "Monte Carlo BER sweep joined with the analytic curve");
  add_sim_options(cmp, cmp_opts);

  AnalyticOptions an_opts;
  auto* an = app.add_subcommand("analytic", "Closed-form BER and error floor");
  an->add_option("--config", an_opts.config, "Take modulation, grid and IQI from this experiment file");
  an->add_option("--irr-db", an_opts.irr_db, "Image rejection ratio in dB");
  an->add_option("--iqi-kappa-db", an_opts.kappa_db, "Amplitude imbalance in dB");
  an->add_option("--iqi-phi-deg", an_opts.phi_deg, "Phase imbalance in degrees");
  an->add_option("--mod", an_opts.mod, "bpsk, qpsk, 8psk or 16psk");
  an->add_option("--snr", an_opts.snr, "SNR grid in dB, start:stop:step or a comma separated list");
  an->add_option("--out", an_opts.out, "CSV output file, - for stdout");
  an->add_option("--json", an_opts.json, "Also write the results as JSON to this file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    err << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    err << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfigError;
  }

  try {
    if (*sim) return simulate(sim_opts, false, out);
    if (*cmp) return simulate(cmp_opts, true, out);
    return analytic(an_opts, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace dstbc::cli
