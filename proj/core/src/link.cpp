#include "dstbc/link.hpp"

#include <bit>
#include <cmath>

#include "dstbc/random.hpp"

namespace dstbc {

namespace {

constexpr std::uint64_t kDataStream = 0x64617461;
constexpr std::uint64_t kNoiseStream = 0x6e6f6973;
constexpr std::uint64_t kFadingStream = 0x66616465;

}  // namespace

LinkSimulator::LinkSimulator(SimConfig cfg)
    : cfg_((cfg.validate(), std::move(cfg))),
      ofdm_(cfg_.subcarriers, cfg_.cp_len),
      modem_(ofdm_),
      psk_(cfg_.order),
      iqi_(cfg_.iqi.params()),
      grid_{cfg_.sample_period_s(), ofdm_.symbol_samples(), cfg_.cp_len},
      tdl_(quantize_profile(cfg_.channel, cfg_.sample_period_s(), cfg_.cp_len).back().delay_samples),
      x1_(cfg_.subcarriers),
      x2_(cfg_.subcarriers),
      tx1_(ofdm_.symbol_samples()),
      tx2_(ofdm_.symbol_samples()),
      rx_(ofdm_.symbol_samples()) {}

double LinkSimulator::noise_variance(double snr_db) const noexcept {
  const double active = static_cast<double>(ofdm_.active_set().size()) / static_cast<double>(ofdm_.size());
  return active / std::pow(10.0, snr_db / 10.0);
}

void LinkSimulator::transmit_symbol(const FadingRealization& fading, std::size_t symbol, std::span<cplx> out) {
  modem_.modulate(x1_, tx1_);
  modem_.modulate(x2_, tx2_);
  tdl_.apply(fading.taps(TxAntenna::first, symbol), fading.taps(TxAntenna::second, symbol), tx1_, tx2_, rx_);
  if (cfg_.noise) {
    for (auto& s : rx_) s += cplx{noise_std_ * gauss_(noise_rng_), noise_std_ * gauss_(noise_rng_)};
  }
  apply_rx_iqi_inplace(rx_, iqi_);
  modem_.demodulate(rx_, out);
}

// Antenna 1 sends row 1 of S over the two symbols, antenna 2 sends row 2.
void LinkSimulator::transmit_block(const FadingRealization& fading, std::size_t symbol,
                                   std::span<const AlamoutiMatrix> blocks, std::span<cplx> z1, std::span<cplx> z2) {
  for (std::size_t n : ofdm_.active_set()) {
    x1_[n - 1] = blocks[n - 1].a;
    x2_[n - 1] = -std::conj(blocks[n - 1].b);
  }
  transmit_symbol(fading, symbol, z1);
  for (std::size_t n : ofdm_.active_set()) {
    x1_[n - 1] = blocks[n - 1].b;
    x2_[n - 1] = std::conj(blocks[n - 1].a);
  }
  transmit_symbol(fading, symbol + 1, z2);
}

LinkCounts LinkSimulator::run(double snr_db, std::uint64_t seed, std::vector<cplx>* gamma_trajectory) {
  const std::size_t n_sc = ofdm_.size();
  const auto& active = ofdm_.active_set();
  const unsigned bps = psk_.bits_per_symbol();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const bool coherent = cfg_.detection == Detection::coherent;
  const std::size_t pairs_per_frame = cfg_.frame_block_pairs;
  const std::size_t blocks_per_frame = coherent ? pairs_per_frame : pairs_per_frame + 1;

  std::mt19937_64 data_rng(derive_seed(seed, kDataStream));
  std::uniform_int_distribution<unsigned> pattern_dist(0, psk_.order() - 1);
  noise_rng_.seed(derive_seed(seed, kNoiseStream));
  gauss_.reset();
  noise_std_ = std::sqrt(noise_variance(snr_db) / 2.0);

  CompensatorState initial;
  initial.mu = cfg_.mu;
  if (cfg_.compensation == CompensationMode::fixed) initial.gamma = gamma_true(iqi_);
  DifferentialReceiver receiver(ofdm_, psk_, cfg_.compensation, initial);
  receiver.record_trajectory(gamma_trajectory);

  std::vector<AlamoutiMatrix> s_blocks(n_sc, AlamoutiMatrix{});
  std::vector<AlamoutiMatrix> truth(n_sc, AlamoutiMatrix{});
  std::vector<std::array<unsigned, 2>> tx_patterns(n_sc, {0U, 0U});
  std::vector<StbcDecision> decisions(n_sc);
  ComplexVector z_prev1(n_sc), z_prev2(n_sc), z1(n_sc), z2(n_sc);

  FadingOptions fopt;
  fopt.oscillators = cfg_.oscillators;

  LinkCounts counts;
  const auto done = [&] { return counts.bits >= cfg_.min_bits || counts.block_pairs >= cfg_.max_block_pairs; };

  const auto draw_info = [&] {
    for (std::size_t n : active) {
      const unsigned p1 = pattern_dist(data_rng);
      const unsigned p2 = pattern_dist(data_rng);
      tx_patterns[n - 1] = {p1, p2};
      truth[n - 1] = {psk_.point(psk_.phase_index_of(p1)), psk_.point(psk_.phase_index_of(p2))};
    }
  };
  const auto count_errors = [&] {
    for (std::size_t n : active) {
      const auto& d = decisions[n - 1];
      const auto& t = tx_patterns[n - 1];
      counts.bit_errors += static_cast<std::uint64_t>(std::popcount(t[0] ^ psk_.pattern_of(d.phase_index[0])) +
                                                      std::popcount(t[1] ^ psk_.pattern_of(d.phase_index[1])));
    }
    counts.bits += 2ULL * bps * active.size();
    ++counts.block_pairs;
  };

  for (std::uint64_t frame = 0; !done(); ++frame) {
    const auto fading =
        realize_fading(cfg_.channel, grid_, 2 * blocks_per_frame, derive_seed(seed, kFadingStream + frame), fopt);
    tdl_.reset();
    ++counts.frames;

    if (coherent) {
      for (std::size_t k = 0; k < pairs_per_frame && !done(); ++k) {
        draw_info();
        for (std::size_t n : active) s_blocks[n - 1] = inv_sqrt2 * truth[n - 1];
        const std::size_t sym = 2 * k;
        transmit_block(fading, sym, s_blocks, z1, z2);
        const auto h1a = convolution_response(fading.taps(TxAntenna::first, sym), n_sc);
        const auto h1b = convolution_response(fading.taps(TxAntenna::first, sym + 1), n_sc);
        const auto h2a = convolution_response(fading.taps(TxAntenna::second, sym), n_sc);
        const auto h2b = convolution_response(fading.taps(TxAntenna::second, sym + 1), n_sc);
        for (std::size_t n : active) {
          const AlamoutiMatrix lam{0.5 * (h1a[n - 1] + h1b[n - 1]), 0.5 * (h2a[n - 1] + h2b[n - 1])};
          decisions[n - 1] = coherent_detect(pack_block(z1, z2, n), lam, psk_);
        }
        count_errors();
      }
      continue;
    }

    for (std::size_t n : active) s_blocks[n - 1] = AlamoutiMatrix::identity();
    transmit_block(fading, 0, s_blocks, z_prev1, z_prev2);
    for (std::size_t k = 1; k <= pairs_per_frame && !done(); ++k) {
      draw_info();
      for (std::size_t n : active) s_blocks[n - 1] = s_blocks[n - 1] * (inv_sqrt2 * truth[n - 1]);
      transmit_block(fading, 2 * k, s_blocks, z1, z2);
      receiver.process(z_prev1, z_prev2, z1, z2, decisions, truth);
      count_errors();
      std::swap(z_prev1, z1);
      std::swap(z_prev2, z2);
    }
  }
  counts.final_gamma = receiver.state().gamma;
  return counts;
}

}  // namespace dstbc
