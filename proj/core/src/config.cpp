#include "dstbc/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace dstbc {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': expected a number, got '" + v + "'");
  }
}

std::uint64_t to_count(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d < 0.0 || d != std::floor(d) || d > 1.8e19) {
    throw ConfigError("'" + key + "': expected a non-negative integer, got '" + v + "'");
  }
  return static_cast<std::uint64_t>(d);
}

bool to_switch(const std::string& key, const std::string& v) {
  const auto s = lower(v);
  if (s == "on" || s == "true" || s == "yes" || s == "1") return true;
  if (s == "off" || s == "false" || s == "no" || s == "0") return false;
  throw ConfigError("'" + key + "': expected on/off, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto t = trim(item);
    if (!t.empty()) out.push_back(to_double(key, t));
  }
  return out;
}

}  // namespace

void SimConfig::validate() const {
  if (!is_power_of_two(subcarriers) || subcarriers < 4) throw ConfigError("subcarriers must be a power of two >= 4");
  if (cp_len > subcarriers) throw ConfigError("cp_len must not exceed the subcarrier count");
  if (order != 2 && order != 4 && order != 8 && order != 16) throw ConfigError("modulation order must be 2, 4, 8 or 16");
  if (!(bandwidth_hz > 0.0)) throw ConfigError("bandwidth_hz must be positive");
  if (!(carrier_hz > 0.0)) throw ConfigError("carrier_hz must be positive");
  if (oscillators < 1) throw ConfigError("oscillators must be >= 1");
  if (frame_block_pairs < 1) throw ConfigError("frame_block_pairs must be >= 1");
  if (snr_grid_db.empty()) throw ConfigError("SNR grid is empty");
  if (!std::is_sorted(snr_grid_db.begin(), snr_grid_db.end()) ||
      std::adjacent_find(snr_grid_db.begin(), snr_grid_db.end()) != snr_grid_db.end()) {
    throw ConfigError("SNR grid must be strictly increasing");
  }
  for (double s : snr_grid_db) {
    if (!std::isfinite(s)) throw ConfigError("SNR grid values must be finite");
  }
  if (min_bits < 10'000) throw ConfigError("min_bits must be at least 10000");
  if (max_block_pairs < 1) throw ConfigError("max_block_pairs must be >= 1");
  if (!(mu > 0.0) && (compensation == CompensationMode::lms || compensation == CompensationMode::lms_genie)) {
    throw ConfigError("LMS step size mu must be positive");
  }
  if (detection == Detection::coherent && compensation != CompensationMode::off) {
    throw ConfigError("coherent detection runs without IQI compensation");
  }
  if (compensation == CompensationMode::fixed && !iqi.enabled) {
    // gamma_true of an ideal receiver is 0; allowed, nothing to check.
  }
  try {
    (void)quantize_profile(channel, sample_period_s(), cp_len);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ConfigEntries parse_config_entries(std::string_view text) {
  boost::property_tree::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config parse error at line " + std::to_string(e.line()) + ": " + e.message());
  }
  ConfigEntries out;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      out[lower(section)] = trim(body.data());
      continue;
    }
    for (const auto& [key, value] : body) out[lower(section) + "." + lower(key)] = trim(value.data());
  }
  return out;
}

ConfigEntries read_config_entries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_entries(ss.str());
}

std::vector<double> parse_snr_grid(std::string_view text) {
  const std::string t = trim(text);
  if (t.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(to_double("snr", trim(item)));
    if (parts.size() != 3) throw ConfigError("SNR range must be start:stop:step, got '" + t + "'");
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (!(step > 0.0) || stop < start) throw ConfigError("SNR range needs step > 0 and stop >= start");
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  auto out = to_list("snr", t);
  if (out.empty()) throw ConfigError("empty SNR grid");
  return out;
}

unsigned parse_modulation(std::string_view text) {
  const auto s = lower(trim(text));
  if (s == "bpsk" || s == "2psk" || s == "2") return 2;
  if (s == "qpsk" || s == "4psk" || s == "4") return 4;
  if (s == "8psk" || s == "8") return 8;
  if (s == "16psk" || s == "16") return 16;
  throw ConfigError("unsupported modulation '" + std::string(text) + "' (bpsk, qpsk, 8psk, 16psk)");
}

Detection parse_detection(std::string_view text) {
  const auto s = lower(trim(text));
  if (s == "differential") return Detection::differential;
  if (s == "coherent") return Detection::coherent;
  throw ConfigError("detection must be differential or coherent, got '" + std::string(text) + "'");
}

CompensationMode parse_compensation(std::string_view text) {
  const auto s = lower(trim(text));
  if (s == "off") return CompensationMode::off;
  if (s == "genie_gamma") return CompensationMode::fixed;
  if (s == "lms") return CompensationMode::lms;
  if (s == "lms_genie") return CompensationMode::lms_genie;
  throw ConfigError("compensation must be off, genie_gamma or lms, got '" + std::string(text) + "'");
}

std::string to_string(Detection d) { return d == Detection::differential ? "differential" : "coherent"; }

std::string to_string(CompensationMode m) {
  switch (m) {
    case CompensationMode::off: return "off";
    case CompensationMode::fixed: return "genie_gamma";
    case CompensationMode::lms: return "lms";
    case CompensationMode::lms_genie: return "lms_genie";
  }
  return "?";
}

SimConfig apply_config(SimConfig cfg, const ConfigEntries& entries) {
  std::optional<std::string> profile;
  std::optional<double> doppler, speed;
  std::optional<std::vector<double>> delays, powers;
  std::set<std::string> used;

  auto get = [&](const std::string& key) -> std::optional<std::string> {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    used.insert(key);
    return it->second;
  };

  if (auto v = get("system.subcarriers")) cfg.subcarriers = to_count("system.subcarriers", *v);
  if (auto v = get("system.cp_len")) cfg.cp_len = to_count("system.cp_len", *v);
  if (auto v = get("system.modulation")) cfg.order = parse_modulation(*v);
  if (auto v = get("system.bandwidth_hz")) cfg.bandwidth_hz = to_double("system.bandwidth_hz", *v);
  if (auto v = get("system.carrier_hz")) cfg.carrier_hz = to_double("system.carrier_hz", *v);

  if (auto v = get("channel.profile")) profile = lower(*v);
  if (auto v = get("channel.doppler_hz")) doppler = to_double("channel.doppler_hz", *v);
  if (auto v = get("channel.speed_kmh")) speed = to_double("channel.speed_kmh", *v);
  if (auto v = get("channel.delays_ns")) delays = to_list("channel.delays_ns", *v);
  if (auto v = get("channel.powers_db")) powers = to_list("channel.powers_db", *v);
  if (auto v = get("channel.oscillators")) cfg.oscillators = static_cast<unsigned>(to_count("channel.oscillators", *v));
  if (auto v = get("channel.frame_block_pairs")) cfg.frame_block_pairs = to_count("channel.frame_block_pairs", *v);

  if (auto v = get("iqi.enabled")) cfg.iqi.enabled = to_switch("iqi.enabled", *v);
  if (auto v = get("iqi.kappa_db")) {
    cfg.iqi.kappa_db = to_double("iqi.kappa_db", *v);
    if (!get("iqi.enabled")) cfg.iqi.enabled = true;
  }
  if (auto v = get("iqi.phi_deg")) {
    cfg.iqi.phi_deg = to_double("iqi.phi_deg", *v);
    if (!get("iqi.enabled")) cfg.iqi.enabled = true;
  }

  if (auto v = get("receiver.detection")) cfg.detection = parse_detection(*v);
  if (auto v = get("receiver.compensation")) cfg.compensation = parse_compensation(*v);
  if (auto v = get("receiver.mu")) cfg.mu = to_double("receiver.mu", *v);

  if (auto v = get("sweep.snr_db")) cfg.snr_grid_db = parse_snr_grid(*v);
  if (auto v = get("sweep.min_bits")) cfg.min_bits = to_count("sweep.min_bits", *v);
  if (auto v = get("sweep.max_block_pairs")) cfg.max_block_pairs = to_count("sweep.max_block_pairs", *v);
  if (auto v = get("sweep.seed")) cfg.seed = to_count("sweep.seed", *v);
  if (auto v = get("sweep.noise")) cfg.noise = to_switch("sweep.noise", *v);

  for (const auto& [key, value] : entries) {
    if (!used.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  if (doppler && speed) throw ConfigError("give either channel.doppler_hz or channel.speed_kmh, not both");
  double fd = cfg.channel.doppler_hz;
  if (doppler) fd = *doppler;
  if (speed) fd = doppler_from_speed(*speed, cfg.carrier_hz);

  try {
    const std::string name = profile.value_or(cfg.channel.name);
    if (name == "custom" || delays || powers) {
      if (!delays || !powers) throw ConfigError("custom profile needs channel.delays_ns and channel.powers_db");
      cfg.channel = make_profile("custom", *delays, *powers, fd);
    } else {
      cfg.channel = load_profile(name, fd);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

}  // namespace dstbc
