#include "dstbc/compensator.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace dstbc {

cplx gamma_true(const IqiParams& p) {
  if (p.alpha == cplx{}) throw std::invalid_argument("degenerate IQI: alpha = 0");
  return -p.beta / std::conj(p.alpha);
}

CompensatedObservation compensate_observation(const SubcarrierObservation& obs, cplx gamma) noexcept {
  const cplx gc = std::conj(gamma);
  return {obs.z_k + obs.zbar_k.row_scaled(gamma), obs.z_next + obs.zbar_next.row_scaled(gamma),
          obs.z_k.row_scaled(gc) + obs.zbar_k, obs.z_next.row_scaled(gc) + obs.zbar_next};
}

std::array<ResidualSample, 2> build_residuals(const SubcarrierObservation& obs, const AlamoutiMatrix& u) noexcept {
  const AlamoutiMatrix xi = obs.z_next - obs.z_k * u;
  const AlamoutiMatrix delta = obs.zbar_next - obs.zbar_k * u;
  // [M]_21 = -b*, so its conjugate is -b.
  return {ResidualSample{xi.a, delta.a}, ResidualSample{-xi.b, -delta.b}};
}

CompensatorState lms_step(const CompensatorState& state, cplx xi, cplx delta) noexcept {
  CompensatorState next = state;
  const cplx e = xi + state.gamma * delta;
  next.gamma = state.gamma - state.mu * e * std::conj(delta);
  ++next.iteration;
  return next;
}

DifferentialReceiver::DifferentialReceiver(const OfdmConfig& cfg, const PskConstellation& psk,
                                           CompensationMode mode, CompensatorState initial)
    : cfg_(cfg), psk_(psk), mode_(mode), state_(initial) {
  if ((mode == CompensationMode::lms || mode == CompensationMode::lms_genie) && !(initial.mu > 0.0)) {
    throw std::invalid_argument("LMS step size must be positive");
  }
  if (mode == CompensationMode::off) state_.gamma = cplx{};
}

void DifferentialReceiver::process(std::span<const cplx> z1, std::span<const cplx> z2, std::span<const cplx> z3,
                                   std::span<const cplx> z4, std::span<StbcDecision> decisions,
                                   std::span<const AlamoutiMatrix> truth) {
  const std::size_t n_sc = cfg_.size();
  if (decisions.size() != n_sc) throw std::invalid_argument("decision buffer must have N entries");
  const bool adapt = mode_ == CompensationMode::lms || mode_ == CompensationMode::lms_genie;
  if (mode_ == CompensationMode::lms_genie && truth.size() != n_sc) {
    throw std::invalid_argument("genie LMS needs the true information matrices for all N subcarriers");
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  for (const std::size_t n : cfg_.lower_half()) {
    const std::size_t m = n_sc - n + 2;
    const auto obs_n = build_observation(z1, z2, z3, z4, n, cfg_);
    const auto obs_m = build_observation(z1, z2, z3, z4, m, cfg_);

    if (mode_ == CompensationMode::off) {
      decisions[n - 1] = ml_differential_detect(obs_n.z_k, obs_n.z_next, psk_);
      decisions[m - 1] = ml_differential_detect(obs_m.z_k, obs_m.z_next, psk_);
      continue;
    }

    const auto comp_n = compensate_observation(obs_n, state_.gamma);
    const auto comp_m = compensate_observation(obs_m, state_.gamma);
    decisions[n - 1] = ml_differential_detect(comp_n.s_k, comp_n.s_next, psk_);
    decisions[m - 1] = ml_differential_detect(comp_m.s_k, comp_m.s_next, psk_);

    if (!adapt) continue;
    const AlamoutiMatrix& info = mode_ == CompensationMode::lms_genie ? truth[n - 1] : decisions[n - 1].info;
    for (const auto& r : build_residuals(obs_n, inv_sqrt2 * info)) {
      state_ = lms_step(state_, r.xi, r.delta);
      if (trajectory_ != nullptr) trajectory_->push_back(state_.gamma);
    }
  }
}

DecisionDirectedResult decision_directed_pass(std::span<const ComplexVector> spectra, const OfdmConfig& cfg,
                                              const PskConstellation& psk, CompensatorState state,
                                              CompensationMode mode,
                                              std::span<const std::vector<AlamoutiMatrix>> truth) {
  if (spectra.size() % 2 != 0 || spectra.size() < 4) {
    throw std::invalid_argument("spectrum stream must hold an even number (>= 4) of OFDM symbols");
  }
  const std::size_t n_pairs = spectra.size() / 2 - 1;
  if (mode == CompensationMode::lms_genie && truth.size() != n_pairs) {
    throw std::invalid_argument("genie LMS needs one truth vector per block pair");
  }
  DecisionDirectedResult result;
  DifferentialReceiver rx(cfg, psk, mode, state);
  rx.record_trajectory(&result.gamma_trajectory);
  const unsigned k = psk.bits_per_symbol();

  for (std::size_t p = 0; p < n_pairs; ++p) {
    std::vector<StbcDecision> dec(cfg.size());
    std::span<const AlamoutiMatrix> t;
    if (mode == CompensationMode::lms_genie) t = truth[p];
    rx.process(spectra[2 * p], spectra[2 * p + 1], spectra[2 * p + 2], spectra[2 * p + 3], dec, t);
    for (const std::size_t n : cfg.active_set()) {
      for (const unsigned g : dec[n - 1].phase_index) {
        const unsigned pattern = psk.pattern_of(g);
        for (unsigned b = k; b-- > 0;) result.bits.push_back(static_cast<std::uint8_t>((pattern >> b) & 1u));
      }
    }
    result.decisions.push_back(std::move(dec));
  }
  result.final_state = rx.state();
  return result;
}

void write_gamma_trajectory_csv(std::ostream& os, std::span<const cplx> trajectory) {
  const auto old = os.precision(9);
  os << "iteration,gamma_re,gamma_im\n";
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    os << (i + 1) << ',' << trajectory[i].real() << ',' << trajectory[i].imag() << '\n';
  }
  os.precision(old);
}

}  // namespace dstbc
