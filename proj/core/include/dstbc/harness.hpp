#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dstbc/analysis.hpp"
#include "dstbc/config.hpp"
#include "dstbc/link.hpp"

namespace dstbc {

/// One simulated BER point.
struct BerRecord {
  double snr_db = 0.0;
  std::string modulation;    // "8psk"
  std::string channel;       // profile name
  double doppler_hz = 0.0;
  std::string iqi;           // "off" or "kappa_db/phi_deg"
  double irr_db = 0.0;       // +inf without IQI
  std::string detection;
  std::string compensation;
  std::uint64_t bit_errors = 0;
  std::uint64_t bits = 0;
  double ber = 0.0;
  std::uint64_t block_pairs = 0;
  cplx gamma{};
  std::uint64_t seed = 0;
  double elapsed_s = 0.0;    // wall clock, not part of the CSV
};

/// Seed for one SNR point, derived from the master seed and the SNR value so
/// that a point does not depend on the rest of the grid.
[[nodiscard]] std::uint64_t point_seed(std::uint64_t master_seed, double snr_db) noexcept;

[[nodiscard]] BerRecord run_point(const SimConfig& cfg, double snr_db);

/// Gamma after every LMS update while simulating one point (empty unless
/// the configured compensation adapts).
[[nodiscard]] std::vector<cplx> trace_gamma(const SimConfig& cfg, double snr_db);

/// Runs every grid point, using up to `threads` workers (0: hardware
/// concurrency). Results are ordered by SNR and independent of `threads`.
[[nodiscard]] std::vector<BerRecord> run_sweep(const SimConfig& cfg, unsigned threads = 0);

/// Analytic companion of a record grid for differential detection.
struct ComparePoint {
  BerRecord sim;
  double ber_analytic = 0.0;  // closed form
  double ber_floor = 0.0;     // exact floor, 0 without IQI
};

[[nodiscard]] std::vector<ComparePoint> compare_with_analytic(std::span<const BerRecord> records,
                                                              const SimConfig& cfg);

[[nodiscard]] std::string modulation_name(unsigned order);

}  // namespace dstbc
