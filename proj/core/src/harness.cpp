#include "dstbc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "dstbc/random.hpp"

namespace dstbc {

std::string modulation_name(unsigned order) {
  switch (order) {
    case 2: return "bpsk";
    case 4: return "qpsk";
    default: return std::to_string(order) + "psk";
  }
}

std::uint64_t point_seed(std::uint64_t master_seed, double snr_db) noexcept {
  const double key = snr_db == 0.0 ? 0.0 : snr_db;  // fold -0 into +0
  return derive_seed(master_seed, std::bit_cast<std::uint64_t>(key));
}

BerRecord run_point(const SimConfig& cfg, double snr_db) {
  const auto start = std::chrono::steady_clock::now();
  LinkSimulator sim(cfg);
  BerRecord r;
  r.snr_db = snr_db;
  r.modulation = modulation_name(cfg.order);
  r.channel = cfg.channel.name;
  r.doppler_hz = cfg.channel.doppler_hz;
  if (cfg.iqi.enabled) {
    std::ostringstream os;
    os << cfg.iqi.kappa_db << "/" << cfg.iqi.phi_deg;
    r.iqi = os.str();
  } else {
    r.iqi = "off";
  }
  r.irr_db = cfg.iqi.params().irr_db;
  r.detection = to_string(cfg.detection);
  r.compensation = to_string(cfg.compensation);
  r.seed = point_seed(cfg.seed, snr_db);

  const auto counts = sim.run(snr_db, r.seed);
  r.bit_errors = counts.bit_errors;
  r.bits = counts.bits;
  r.ber = counts.bits > 0 ? static_cast<double>(counts.bit_errors) / static_cast<double>(counts.bits) : 0.0;
  r.block_pairs = counts.block_pairs;
  r.gamma = counts.final_gamma;
  r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<cplx> trace_gamma(const SimConfig& cfg, double snr_db) {
  LinkSimulator sim(cfg);
  std::vector<cplx> trajectory;
  (void)sim.run(snr_db, point_seed(cfg.seed, snr_db), &trajectory);
  return trajectory;
}

std::vector<BerRecord> run_sweep(const SimConfig& cfg, unsigned threads) {
  cfg.validate();
  const auto& grid = cfg.snr_grid_db;
  std::vector<BerRecord> out(grid.size());
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size() && !failed; i = next++) {
      try {
        out[i] = run_point(cfg, grid[i]);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  std::sort(out.begin(), out.end(), [](const BerRecord& a, const BerRecord& b) { return a.snr_db < b.snr_db; });
  return out;
}

std::vector<ComparePoint> compare_with_analytic(std::span<const BerRecord> records, const SimConfig& cfg) {
  const auto p = cfg.iqi.params();
  const double irr = p.is_ideal() ? std::numeric_limits<double>::infinity() : 1.0 / p.rho;
  const bool coherent = cfg.detection == Detection::coherent;
  std::vector<ComparePoint> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    ComparePoint c;
    c.sim = r;
    const double snr = analysis::db_to_linear(r.snr_db);
    // Coherent detection sees half the noise and half the image power.
    const double snr_eq = coherent ? analysis::equivalent_snr(2.0 * snr, 2.0 * irr) : analysis::equivalent_snr(snr, irr);
    c.ber_analytic = analysis::ber_closed_form(cfg.order, snr_eq);
    if (!p.is_ideal()) c.ber_floor = analysis::ber_floor(cfg.order, coherent ? p.rho / 2.0 : p.rho);
    out.push_back(c);
  }
  return out;
}

}  // namespace dstbc
