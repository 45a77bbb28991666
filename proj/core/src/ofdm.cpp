#include "dstbc/ofdm.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dstbc {

OfdmConfig::OfdmConfig(std::size_t n_subcarriers, std::size_t cp_len) : n_(n_subcarriers), cp_(cp_len) {
  if (!is_power_of_two(n_) || n_ < 4) {
    throw std::invalid_argument("subcarrier count must be a power of two >= 4, got " + std::to_string(n_));
  }
  if (cp_ > n_) throw std::invalid_argument("cyclic prefix longer than the OFDM symbol");
  for (std::size_t n = 1; n <= n_; ++n) {
    if (!is_active(n)) continue;
    active_.push_back(n);
    if (n < n_ / 2 + 1) lower_.push_back(n);
  }
}

std::size_t mirror_index(std::size_t n, std::size_t n_subcarriers) {
  if (n < 2 || n > n_subcarriers || n == n_subcarriers / 2 + 1) {
    throw std::invalid_argument("subcarrier " + std::to_string(n) + " is not active for N = " +
                                std::to_string(n_subcarriers));
  }
  return n_subcarriers - n + 2;
}

OfdmModem::OfdmModem(const OfdmConfig& cfg) : cfg_(cfg), plan_(cfg.size()) {}

void OfdmModem::modulate(std::span<const cplx> freq, std::span<cplx> time) const {
  const std::size_t n = cfg_.size();
  const std::size_t cp = cfg_.cp_len();
  if (freq.size() != n || time.size() != n + cp) {
    throw std::invalid_argument("ofdm modulate: expected " + std::to_string(n) + " -> " +
                                std::to_string(n + cp) + " samples");
  }
  if (freq[0] != cplx{} || freq[n / 2] != cplx{}) {
    throw std::invalid_argument("ofdm modulate: inactive subcarriers must be zero");
  }
  auto body = time.subspan(cp, n);
  std::copy(freq.begin(), freq.end(), body.begin());
  plan_.inverse(body);
  std::copy(body.end() - static_cast<std::ptrdiff_t>(cp), body.end(), time.begin());
}

void OfdmModem::demodulate(std::span<const cplx> time, std::span<cplx> freq) const {
  const std::size_t n = cfg_.size();
  const std::size_t cp = cfg_.cp_len();
  if (time.size() != n + cp || freq.size() != n) {
    throw std::invalid_argument("ofdm demodulate: expected " + std::to_string(n + cp) + " -> " +
                                std::to_string(n) + " samples, got " + std::to_string(time.size()));
  }
  std::copy(time.begin() + static_cast<std::ptrdiff_t>(cp), time.end(), freq.begin());
  plan_.forward(freq);
}

ComplexVector ofdm_modulate(std::span<const cplx> freq_symbols, const OfdmConfig& cfg) {
  ComplexVector out(cfg.symbol_samples());
  OfdmModem(cfg).modulate(freq_symbols, out);
  return out;
}

ComplexVector ofdm_demodulate(std::span<const cplx> time_samples, const OfdmConfig& cfg) {
  ComplexVector out(cfg.size());
  OfdmModem(cfg).demodulate(time_samples, out);
  return out;
}

SubcarrierObservation build_observation(std::span<const cplx> z1, std::span<const cplx> z2,
                                        std::span<const cplx> z3, std::span<const cplx> z4, std::size_t n,
                                        const OfdmConfig& cfg) {
  const std::size_t size = cfg.size();
  if (z1.size() != size || z2.size() != size || z3.size() != size || z4.size() != size) {
    throw std::invalid_argument("build_observation: spectra must have N entries");
  }
  const std::size_t m = mirror_index(n, size);
  SubcarrierObservation obs;
  obs.n = n;
  obs.z_k = pack_block(z1, z2, n);
  obs.z_next = pack_block(z3, z4, n);
  obs.zbar_k = pack_block(z1, z2, m).conjugate();
  obs.zbar_next = pack_block(z3, z4, m).conjugate();
  return obs;
}

}  // namespace dstbc
