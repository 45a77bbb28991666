#include "dstbc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dstbc/random.hpp"

namespace dstbc {

std::vector<double> ChannelProfile::linear_powers() const {
  std::vector<double> p(powers_db.size());
  std::transform(powers_db.begin(), powers_db.end(), p.begin(),
                 [](double db) { return std::pow(10.0, db / 10.0); });
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& v : p) v /= total;
  return p;
}

ChannelProfile make_profile(std::string name, std::span<const double> delays_ns,
                            std::span<const double> powers_db, double doppler_hz) {
  if (delays_ns.empty() || delays_ns.size() != powers_db.size()) {
    throw std::invalid_argument("profile '" + name + "': need matching, non-empty delay and power lists");
  }
  if (delays_ns.front() != 0.0) {
    throw std::invalid_argument("profile '" + name + "': first tap delay must be 0");
  }
  for (std::size_t i = 1; i < delays_ns.size(); ++i) {
    if (!(delays_ns[i] > delays_ns[i - 1])) {
      throw std::invalid_argument("profile '" + name + "': delays must be strictly increasing");
    }
  }
  for (double p : powers_db) {
    if (!std::isfinite(p)) throw std::invalid_argument("profile '" + name + "': non-finite tap power");
  }
  if (!(doppler_hz >= 0.0) || !std::isfinite(doppler_hz)) {
    throw std::invalid_argument("profile '" + name + "': Doppler must be finite and >= 0");
  }
  ChannelProfile p;
  p.name = std::move(name);
  p.delays_s.reserve(delays_ns.size());
  for (double d : delays_ns) p.delays_s.push_back(d * 1e-9);
  p.powers_db.assign(powers_db.begin(), powers_db.end());
  p.doppler_hz = doppler_hz;
  return p;
}

ChannelProfile load_profile(std::string_view name, double doppler_hz) {
  // ITU-R M.1225 tapped-delay-line tables.
  if (name == "itu-pb") {
    static constexpr double d[] = {0, 200, 800, 1200, 2300, 3700};
    static constexpr double p[] = {0, -0.9, -4.9, -8.0, -7.8, -23.9};
    return make_profile("itu-pb", d, p, doppler_hz);
  }
  if (name == "itu-va") {
    static constexpr double d[] = {0, 310, 710, 1090, 1730, 2510};
    static constexpr double p[] = {0, -1.0, -9.0, -10.0, -15.0, -20.0};
    return make_profile("itu-va", d, p, doppler_hz);
  }
  if (name == "flat") {
    static constexpr double d[] = {0};
    static constexpr double p[] = {0};
    return make_profile("flat", d, p, doppler_hz);
  }
  throw std::invalid_argument("unknown channel profile '" + std::string(name) +
                              "' (expected itu-pb, itu-va or flat)");
}

double doppler_from_speed(double speed_kmh, double carrier_hz) noexcept {
  constexpr double c = 299792458.0;
  return speed_kmh / 3.6 * carrier_hz / c;
}

std::vector<QuantizedTap> quantize_profile(const ChannelProfile& profile, double sample_period_s,
                                           std::size_t cp_len) {
  if (!(sample_period_s > 0.0)) throw std::invalid_argument("sample period must be positive");
  const auto powers = profile.linear_powers();
  std::vector<QuantizedTap> taps;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    const double ratio = profile.delays_s[i] / sample_period_s;
    const auto delay = static_cast<std::size_t>(std::llround(ratio));
    if (delay > cp_len) {
      std::ostringstream msg;
      msg << "profile '" << profile.name << "': tap delay " << profile.delays_s[i] * 1e9 << " ns maps to "
          << delay << " samples, exceeding the cyclic prefix of " << cp_len << " samples";
      throw std::invalid_argument(msg.str());
    }
    if (!taps.empty() && taps.back().delay_samples == delay) {
      taps.back().power += powers[i];
    } else {
      taps.push_back({delay, powers[i]});
    }
  }
  return taps;
}

FadingRealization::FadingRealization(std::size_t order, std::size_t n_symbols, double sample_period_s)
    : order_(order),
      n_symbols_(n_symbols),
      sample_period_s_(sample_period_s),
      taps_(2 * n_symbols * (order + 1)) {}

std::size_t FadingRealization::offset(TxAntenna antenna, std::size_t symbol) const {
  const int a = static_cast<int>(antenna);
  if (a != 1 && a != 2) throw std::invalid_argument("transmit antenna must be 1 or 2");
  if (symbol >= n_symbols_) throw std::out_of_range("symbol index beyond fading realization");
  return (static_cast<std::size_t>(a - 1) * n_symbols_ + symbol) * (order_ + 1);
}

std::span<const cplx> FadingRealization::taps(TxAntenna antenna, std::size_t symbol) const {
  return {taps_.data() + offset(antenna, symbol), order_ + 1};
}

std::span<cplx> FadingRealization::taps(TxAntenna antenna, std::size_t symbol) {
  return {taps_.data() + offset(antenna, symbol), order_ + 1};
}

FadingRealization realize_fading(const ChannelProfile& profile, const FadingGrid& grid,
                                 std::size_t n_symbols, std::uint64_t seed, const FadingOptions& options) {
  if (options.oscillators == 0) throw std::invalid_argument("need at least one oscillator");
  const auto layout = quantize_profile(profile, grid.sample_period_s, grid.cp_len);
  const std::size_t order = layout.back().delay_samples;
  FadingRealization out(order, n_symbols, grid.sample_period_s);

  const unsigned k_osc = options.oscillators;
  const double t_sym = grid.symbol_period_s();
  const double w_d = 2.0 * kPi * profile.doppler_hz;
  std::vector<double> freq(k_osc);
  std::vector<double> phase(k_osc);

  for (int a = 1; a <= 2; ++a) {
    const auto antenna = static_cast<TxAntenna>(a);
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(a)));
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * kPi);
    for (const auto& tap : layout) {
      // Arrival angles: one per sector of width 2 pi / K, jointly rotated.
      const double theta = uniform(rng);
      for (unsigned m = 0; m < k_osc; ++m) {
        const double angle = (2.0 * kPi * m + theta) / k_osc;
        freq[m] = w_d * std::cos(angle);
        phase[m] = uniform(rng);
      }
      const double amp = std::sqrt(tap.power / k_osc);
      for (std::size_t s = 0; s < n_symbols; ++s) {
        const double t = options.start_time_s + (static_cast<double>(s) + 0.5) * t_sym;
        cplx acc{0.0, 0.0};
        for (unsigned m = 0; m < k_osc; ++m) acc += std::polar(1.0, freq[m] * t + phase[m]);
        out.taps(antenna, s)[tap.delay_samples] = amp * acc;
      }
    }
  }
  return out;
}

ComplexVector freq_response(std::span<const cplx> taps, std::size_t n_fft) {
  if (taps.size() > n_fft) throw std::invalid_argument("channel longer than the DFT size");
  ComplexVector padded(n_fft, cplx{});
  std::copy(taps.begin(), taps.end(), padded.begin());
  Dft plan(n_fft);
  plan.inverse(padded);
  const double root_n = std::sqrt(static_cast<double>(n_fft));
  for (auto& v : padded) v *= root_n;
  return padded;
}

ComplexVector freq_response(const FadingRealization& realization, TxAntenna antenna, std::size_t symbol,
                            std::size_t n_fft) {
  return freq_response(realization.taps(antenna, symbol), n_fft);
}

ComplexVector convolution_response(std::span<const cplx> taps, std::size_t n_fft) {
  if (taps.size() > n_fft) throw std::invalid_argument("channel longer than the DFT size");
  ComplexVector padded(n_fft, cplx{});
  std::copy(taps.begin(), taps.end(), padded.begin());
  Dft plan(n_fft);
  plan.forward(padded);
  const double root_n = std::sqrt(static_cast<double>(n_fft));
  for (auto& v : padded) v *= root_n;
  return padded;
}

TappedDelayLine::TappedDelayLine(std::size_t order)
    : order_(order), history1_(order, cplx{}), history2_(order, cplx{}) {}

void TappedDelayLine::reset() {
  std::fill(history1_.begin(), history1_.end(), cplx{});
  std::fill(history2_.begin(), history2_.end(), cplx{});
}

void TappedDelayLine::apply(std::span<const cplx> taps1, std::span<const cplx> taps2,
                            std::span<const cplx> tx1, std::span<const cplx> tx2, std::span<cplx> out) {
  const std::size_t n = tx1.size();
  if (tx2.size() != n || out.size() != n || taps1.size() != order_ + 1 || taps2.size() != order_ + 1) {
    throw std::invalid_argument("tapped delay line: inconsistent buffer sizes");
  }
  if (n < order_) throw std::invalid_argument("tapped delay line: symbol shorter than channel memory");
  // history_[j] holds tx[-order + j] of the previous call.
  auto sample = [&](std::span<const cplx> tx, const std::vector<cplx>& hist, std::ptrdiff_t idx) {
    return idx >= 0 ? tx[static_cast<std::size_t>(idx)]
                    : hist[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(order_) + idx)];
  };
  for (std::size_t m = 0; m < n; ++m) {
    cplx acc{0.0, 0.0};
    for (std::size_t l = 0; l <= order_; ++l) {
      const auto idx = static_cast<std::ptrdiff_t>(m) - static_cast<std::ptrdiff_t>(l);
      acc += taps1[l] * sample(tx1, history1_, idx) + taps2[l] * sample(tx2, history2_, idx);
    }
    out[m] = acc;
  }
  for (std::size_t j = 0; j < order_; ++j) {
    history1_[j] = tx1[n - order_ + j];
    history2_[j] = tx2[n - order_ + j];
  }
}

}  // namespace dstbc
