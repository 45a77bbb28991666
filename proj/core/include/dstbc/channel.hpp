#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dstbc/numerics.hpp"

namespace dstbc {

enum class TxAntenna : int { first = 1, second = 2 };

/// Tapped-delay-line power profile. Delays in seconds, powers in dB relative
/// to the strongest tap; `linear_powers()` is normalized to unit sum.
struct ChannelProfile {
  std::string name;
  std::vector<double> delays_s;
  std::vector<double> powers_db;
  double doppler_hz = 0.0;

  [[nodiscard]] std::vector<double> linear_powers() const;
};

/// Builds and validates a profile (delays start at 0 and strictly increase).
[[nodiscard]] ChannelProfile make_profile(std::string name, std::span<const double> delays_ns,
                                          std::span<const double> powers_db, double doppler_hz);

/// Embedded profiles: "itu-pb" (Pedestrian B), "itu-va" (Vehicular A), "flat".
[[nodiscard]] ChannelProfile load_profile(std::string_view name, double doppler_hz);

/// Maximum Doppler shift for a terminal speed and carrier frequency.
[[nodiscard]] double doppler_from_speed(double speed_kmh, double carrier_hz) noexcept;

/// Sampling of the fading process: one tap snapshot per OFDM symbol.
struct FadingGrid {
  double sample_period_s = 200e-9;
  std::size_t symbol_samples = 84;  // N + cp
  std::size_t cp_len = 20;

  [[nodiscard]] double symbol_period_s() const noexcept {
    return sample_period_s * static_cast<double>(symbol_samples);
  }
};

/// A profile tap after rounding its delay to the sample grid.
struct QuantizedTap {
  std::size_t delay_samples;
  double power;  // linear, normalized
};

/// Rounds delays to the nearest sample and sums the powers of taps that land
/// on the same sample. Throws if the resulting order exceeds `cp_len`.
[[nodiscard]] std::vector<QuantizedTap> quantize_profile(const ChannelProfile& profile,
                                                         double sample_period_s, std::size_t cp_len);

struct FadingOptions {
  unsigned oscillators = 32;
  double start_time_s = 0.0;
};

/// Per-symbol complex tap gains h_l for both transmit antennas.
class FadingRealization {
 public:
  FadingRealization(std::size_t order, std::size_t n_symbols, double sample_period_s);

  [[nodiscard]] std::size_t order() const noexcept { return order_; }  // L
  [[nodiscard]] std::size_t n_symbols() const noexcept { return n_symbols_; }
  [[nodiscard]] double sample_period_s() const noexcept { return sample_period_s_; }

  /// L + 1 taps of `antenna` during OFDM symbol `symbol`.
  [[nodiscard]] std::span<const cplx> taps(TxAntenna antenna, std::size_t symbol) const;
  [[nodiscard]] std::span<cplx> taps(TxAntenna antenna, std::size_t symbol);

 private:
  [[nodiscard]] std::size_t offset(TxAntenna antenna, std::size_t symbol) const;

  std::size_t order_;
  std::size_t n_symbols_;
  double sample_period_s_;
  std::vector<cplx> taps_;
};

/// Sum-of-sinusoids Jakes fading, one independent process per antenna and tap.
/// Each tap has variance equal to its profile power and autocorrelation
/// J0(2 pi f_d tau); values are taken at the midpoint of each OFDM symbol.
[[nodiscard]] FadingRealization realize_fading(const ChannelProfile& profile, const FadingGrid& grid,
                                               std::size_t n_symbols, std::uint64_t seed,
                                               const FadingOptions& options = {});

/// lambda = sqrt(N) F^H [h; 0], i.e. lambda(n) = sum_l h_l exp(+j 2 pi (n-1) l / N).
/// Element i of the result belongs to subcarrier n = i + 1.
[[nodiscard]] ComplexVector freq_response(std::span<const cplx> taps, std::size_t n_fft);
[[nodiscard]] ComplexVector freq_response(const FadingRealization& realization, TxAntenna antenna,
                                          std::size_t symbol, std::size_t n_fft);

/// Gain a causal FIR channel imposes on each subcarrier after CP removal and
/// the forward DFT: sqrt(N) F [h; 0]. Equals freq_response at the mirror index.
[[nodiscard]] ComplexVector convolution_response(std::span<const cplx> taps, std::size_t n_fft);

/// Two-transmit, one-receive linear convolution that keeps the tail of the
/// previous symbol, so consecutive OFDM symbols interfere exactly as on air.
class TappedDelayLine {
 public:
  explicit TappedDelayLine(std::size_t order);

  void reset();

  /// out[m] = sum_i sum_l h_{i,l} tx_i[m - l], with samples before the symbol
  /// taken from the previous call.
  void apply(std::span<const cplx> taps1, std::span<const cplx> taps2, std::span<const cplx> tx1,
             std::span<const cplx> tx2, std::span<cplx> out);

 private:
  std::size_t order_;
  std::vector<cplx> history1_;
  std::vector<cplx> history2_;
};

}  // namespace dstbc
