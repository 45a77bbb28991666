#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dstbc/channel.hpp"
#include "dstbc/compensator.hpp"
#include "dstbc/iqi.hpp"

namespace dstbc {

/// Invalid experiment description (bad key, value or combination).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Detection { differential, coherent };

struct IqiSetting {
  bool enabled = false;
  double kappa_db = 0.0;
  double phi_deg = 0.0;

  [[nodiscard]] IqiParams params() const { return enabled ? derive_iqi_params(kappa_db, phi_deg) : ideal_iqi(); }
};

/// Full description of a Monte Carlo experiment.
struct SimConfig {
  std::size_t subcarriers = 64;
  std::size_t cp_len = 20;
  unsigned order = 8;
  double bandwidth_hz = 5e6;
  double carrier_hz = 2.5e9;

  ChannelProfile channel = load_profile("itu-pb", 11.6);
  unsigned oscillators = 32;
  std::size_t frame_block_pairs = 16;  // information blocks per fading realization

  IqiSetting iqi;

  Detection detection = Detection::differential;
  CompensationMode compensation = CompensationMode::off;
  double mu = 0.005;

  std::vector<double> snr_grid_db{0, 5, 10, 15, 20, 25, 30, 35, 40};
  std::uint64_t min_bits = 2'000'000;
  std::uint64_t max_block_pairs = 10'000'000;
  std::uint64_t seed = 1;
  bool noise = true;  // false: noiseless test hook

  [[nodiscard]] double sample_period_s() const noexcept { return 1.0 / bandwidth_hz; }

  /// Throws ConfigError on any violated invariant.
  void validate() const;
};

/// Flat "section.key" -> value map read from an INI-style file
/// ("[section]" headers, "key = value" lines, '#' or ';' comments).
using ConfigEntries = std::map<std::string, std::string>;

[[nodiscard]] ConfigEntries read_config_entries(const std::filesystem::path& path);
[[nodiscard]] ConfigEntries parse_config_entries(std::string_view text);

/// Applies entries over `base`. Unknown keys are rejected.
[[nodiscard]] SimConfig apply_config(SimConfig base, const ConfigEntries& entries);

/// "start:stop:step" (inclusive) or a comma separated list, in dB.
[[nodiscard]] std::vector<double> parse_snr_grid(std::string_view text);
/// "8psk", "8", "qpsk", "bpsk", ...
[[nodiscard]] unsigned parse_modulation(std::string_view text);
[[nodiscard]] Detection parse_detection(std::string_view text);
/// "off", "genie_gamma", "lms"
[[nodiscard]] CompensationMode parse_compensation(std::string_view text);

[[nodiscard]] std::string to_string(Detection d);
[[nodiscard]] std::string to_string(CompensationMode m);

}  // namespace dstbc
