#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dstbc/analysis.hpp"
#include "dstbc/channel.hpp"
#include "dstbc/compensator.hpp"
#include "dstbc/config.hpp"
#include "dstbc/iqi.hpp"
#include "dstbc/link.hpp"
#include "dstbc/numerics.hpp"
#include "dstbc/ofdm.hpp"
#include "dstbc/stbc.hpp"

namespace {

using namespace dstbc;

ComplexVector random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexVector v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

void BM_Dft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Dft plan(n);
  auto x = random_vector(n, 1);
  for (auto _ : state) {
    plan.forward(x);
    plan.inverse(x);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(2 * state.iterations());
}
BENCHMARK(BM_Dft)->Arg(8)->Arg(64)->Arg(256)->Arg(1024);

void BM_OfdmRoundTrip(benchmark::State& state) {
  const OfdmConfig cfg(64, 20);
  const OfdmModem modem(cfg);
  auto freq = random_vector(64, 2);
  for (std::size_t n = 1; n <= 64; ++n) {
    if (!cfg.is_active(n)) freq[n - 1] = {};
  }
  ComplexVector time(cfg.symbol_samples()), back(64);
  for (auto _ : state) {
    modem.modulate(freq, time);
    modem.demodulate(time, back);
    benchmark::DoNotOptimize(back.data());
  }
}
BENCHMARK(BM_OfdmRoundTrip);

void BM_DifferentialDetect(benchmark::State& state) {
  const PskConstellation psk(static_cast<unsigned>(state.range(0)));
  const auto v = random_vector(4, 3);
  const AlamoutiMatrix z_k{v[0], v[1]}, z_next{v[2], v[3]};
  for (auto _ : state) benchmark::DoNotOptimize(ml_differential_detect(z_k, z_next, psk));
}
BENCHMARK(BM_DifferentialDetect)->Arg(2)->Arg(8)->Arg(16);

void BM_RxIqi(benchmark::State& state) {
  const auto p = derive_iqi_params(2.0, 8.0);
  auto x = random_vector(84, 4);
  for (auto _ : state) {
    apply_rx_iqi_inplace(x, p);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_RxIqi);

void BM_CompensateAndResiduals(benchmark::State& state) {
  const auto v = random_vector(8, 5);
  SubcarrierObservation obs{2, {v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}};
  const auto u = (1.0 / std::sqrt(2.0)) * alamouti_encode(cplx{1.0, 0.0}, cplx{0.0, 1.0});
  const cplx gamma{0.1, 0.05};
  for (auto _ : state) {
    benchmark::DoNotOptimize(compensate_observation(obs, gamma));
    benchmark::DoNotOptimize(build_residuals(obs, u));
  }
}
BENCHMARK(BM_CompensateAndResiduals);

void BM_LmsStep(benchmark::State& state) {
  CompensatorState s;
  const cplx xi{0.3, -0.2}, delta{0.7, 0.1};
  for (auto _ : state) {
    s = lms_step(s, xi, delta);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_LmsStep);

void BM_RealizeFading(benchmark::State& state) {
  const auto profile = load_profile("itu-pb", 11.6);
  const FadingGrid grid;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(realize_fading(profile, grid, 66, ++seed));
  state.SetItemsProcessed(66 * state.iterations());
}
BENCHMARK(BM_RealizeFading)->Unit(benchmark::kMicrosecond);

void BM_BerFloor(benchmark::State& state) {
  const double rho = 1.0 / analysis::db_to_linear(17.44);
  for (auto _ : state) benchmark::DoNotOptimize(analysis::ber_floor(8, rho));
}
BENCHMARK(BM_BerFloor)->Unit(benchmark::kMicrosecond);

void BM_LinkPoint(benchmark::State& state) {
  SimConfig cfg;
  cfg.iqi = {true, 2.0, 8.0};
  cfg.compensation = state.range(0) != 0 ? CompensationMode::lms : CompensationMode::off;
  cfg.min_bits = 100'000;
  LinkSimulator sim(cfg);
  std::uint64_t bits = 0;
  for (auto _ : state) {
    const auto counts = sim.run(20.0, 7);
    bits += counts.bits;
    benchmark::DoNotOptimize(counts);
  }
  state.counters["bits/s"] = benchmark::Counter(static_cast<double>(bits), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_LinkPoint)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
