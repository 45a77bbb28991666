#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dstbc/numerics.hpp"
#include "dstbc/stbc.hpp"

namespace dstbc {

/// Subcarriers are numbered 1..N. Index 1 (DC) and N/2 + 1 are their own
/// images and carry nothing; all other indices are active.
class OfdmConfig {
 public:
  OfdmConfig(std::size_t n_subcarriers, std::size_t cp_len);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t cp_len() const noexcept { return cp_; }
  [[nodiscard]] std::size_t symbol_samples() const noexcept { return n_ + cp_; }

  [[nodiscard]] bool is_active(std::size_t n) const noexcept { return n >= 2 && n <= n_ && n != n_ / 2 + 1; }
  [[nodiscard]] const std::vector<std::size_t>& active_set() const noexcept { return active_; }
  /// Active indices below N/2 + 1; each names one (n, N - n + 2) pair.
  [[nodiscard]] const std::vector<std::size_t>& lower_half() const noexcept { return lower_; }

 private:
  std::size_t n_;
  std::size_t cp_;
  std::vector<std::size_t> active_;
  std::vector<std::size_t> lower_;
};

/// N - n + 2. Throws for inactive n.
[[nodiscard]] std::size_t mirror_index(std::size_t n, std::size_t n_subcarriers);

/// IDFT plus cyclic prefix / CP removal plus DFT, with a reusable plan.
class OfdmModem {
 public:
  explicit OfdmModem(const OfdmConfig& cfg);

  [[nodiscard]] const OfdmConfig& config() const noexcept { return cfg_; }

  /// `freq` (length N, spectrum index i = subcarrier i + 1) to `time` (N + cp).
  void modulate(std::span<const cplx> freq, std::span<cplx> time) const;
  /// `time` (N + cp) to `freq` (N).
  void demodulate(std::span<const cplx> time, std::span<cplx> freq) const;

 private:
  OfdmConfig cfg_;
  Dft plan_;
};

[[nodiscard]] ComplexVector ofdm_modulate(std::span<const cplx> freq_symbols, const OfdmConfig& cfg);
[[nodiscard]] ComplexVector ofdm_demodulate(std::span<const cplx> time_samples, const OfdmConfig& cfg);

/// Received Alamouti matrices at subcarrier n and its mirror for blocks k, k+1.
///
/// z_k = [[z_{2k+1}(n), z_{2k+2}(n)], [-z_{2k+2}(n)*, z_{2k+1}(n)*]] and z_next
/// likewise from symbols 2k+3, 2k+4. The mirror companions are the elementwise
/// conjugates of the same packing at N - n + 2, so that under receive IQI
/// z_k = A z + B zbar holds with A = diag(alpha, alpha*), B = diag(beta, beta*).
struct SubcarrierObservation {
  std::size_t n = 0;
  AlamoutiMatrix z_k;
  AlamoutiMatrix z_next;
  AlamoutiMatrix zbar_k;
  AlamoutiMatrix zbar_next;
};

/// Packs one received block (two consecutive OFDM symbol spectra) at n.
[[nodiscard]] inline AlamoutiMatrix pack_block(std::span<const cplx> first, std::span<const cplx> second,
                                               std::size_t n) noexcept {
  return {first[n - 1], second[n - 1]};
}

[[nodiscard]] SubcarrierObservation build_observation(std::span<const cplx> z1, std::span<const cplx> z2,
                                                      std::span<const cplx> z3, std::span<const cplx> z4,
                                                      std::size_t n, const OfdmConfig& cfg);

}  // namespace dstbc
