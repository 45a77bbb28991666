#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dstbc/channel.hpp"
#include "dstbc/compensator.hpp"
#include "dstbc/config.hpp"
#include "dstbc/iqi.hpp"
#include "dstbc/ofdm.hpp"

namespace dstbc {

/// Error counts of one simulated SNR point.
struct LinkCounts {
  std::uint64_t bit_errors = 0;
  std::uint64_t bits = 0;
  std::uint64_t block_pairs = 0;
  std::uint64_t frames = 0;
  cplx final_gamma{};
};

/// End-to-end time-domain link: two transmit antennas, Jakes-faded multipath,
/// AWGN, receive IQI, OFDM demodulation and differential or coherent
/// detection. Each frame is an independent fading realization that carries
/// one reference block and `frame_block_pairs` information blocks. The
/// compensator state persists across frames.
///
/// Random streams depend only on (seed, frame), never on detection or
/// compensation settings, so runs with the same seed share data, noise and
/// channels.
class LinkSimulator {
 public:
  explicit LinkSimulator(SimConfig cfg);

  [[nodiscard]] const SimConfig& config() const noexcept { return cfg_; }

  /// Simulates until `min_bits` bits or `max_block_pairs` information blocks.
  [[nodiscard]] LinkCounts run(double snr_db, std::uint64_t seed,
                               std::vector<cplx>* gamma_trajectory = nullptr);

  /// Noise variance per complex time-domain sample at this SNR.
  [[nodiscard]] double noise_variance(double snr_db) const noexcept;

 private:
  void transmit_block(const FadingRealization& fading, std::size_t symbol, std::span<const AlamoutiMatrix> blocks,
                      std::span<cplx> z1, std::span<cplx> z2);
  void transmit_symbol(const FadingRealization& fading, std::size_t symbol, std::span<cplx> out);

  SimConfig cfg_;
  OfdmConfig ofdm_;
  OfdmModem modem_;
  PskConstellation psk_;
  IqiParams iqi_;
  FadingGrid grid_;
  TappedDelayLine tdl_;

  std::mt19937_64 noise_rng_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
  double noise_std_ = 0.0;  // per real dimension

  ComplexVector x1_, x2_;      // antenna spectra
  ComplexVector tx1_, tx2_;    // antenna time samples
  ComplexVector rx_;           // received time samples
};

}  // namespace dstbc
