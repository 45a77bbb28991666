#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "dstbc/iqi.hpp"
#include "dstbc/numerics.hpp"
#include "dstbc/ofdm.hpp"
#include "dstbc/stbc.hpp"

namespace dstbc {

/// The compensation coefficient that restores the differential relation:
/// Gamma = diag(gamma, gamma*) = -B (A*)^{-1}, i.e. gamma = -beta / alpha*.
/// Depends only on the IQI, never on the channel.
[[nodiscard]] cplx gamma_true(const IqiParams& p);

/// Shat = Z' + Gamma Zbar' and Shatbar = Gamma* Z' + Zbar' for both blocks.
struct CompensatedObservation {
  AlamoutiMatrix s_k;
  AlamoutiMatrix s_next;
  AlamoutiMatrix sbar_k;
  AlamoutiMatrix sbar_next;
};

[[nodiscard]] CompensatedObservation compensate_observation(const SubcarrierObservation& obs,
                                                            cplx gamma) noexcept;

/// One (xi, delta) sample of the scalar LMS regression xi + gamma delta -> 0.
struct ResidualSample {
  cplx xi;
  cplx delta;
};

/// Xi = Z'_{k+1} - Z'_k U and Delta = Zbar'_{k+1} - Zbar'_k U, reduced to the
/// two usable samples ([Xi]_11, [Delta]_11) and ([Xi*]_21, [Delta*]_21).
/// `u` is the unitary information matrix linking the blocks (PSK pair / sqrt 2).
[[nodiscard]] std::array<ResidualSample, 2> build_residuals(const SubcarrierObservation& obs,
                                                            const AlamoutiMatrix& u) noexcept;

struct CompensatorState {
  cplx gamma{};
  double mu = 0.005;
  std::uint64_t iteration = 0;
};

/// e = xi + gamma delta; gamma <- gamma - mu e delta*.
[[nodiscard]] CompensatorState lms_step(const CompensatorState& state, cplx xi, cplx delta) noexcept;

enum class CompensationMode {
  off,           // detect on raw observations
  fixed,         // fixed gamma (genie gamma_true)
  lms,           // decision-directed LMS
  lms_genie,     // LMS driven by the true information matrices
};

/// Receiver-side compensation plus differential detection for a stream of
/// block pairs. For every block pair it visits each (n, N - n + 2) pair once
/// from the lower index: both subcarriers are compensated with the current
/// gamma and detected, then the two residual samples of n update gamma.
class DifferentialReceiver {
 public:
  DifferentialReceiver(const OfdmConfig& cfg, const PskConstellation& psk, CompensationMode mode,
                       CompensatorState initial);

  [[nodiscard]] const CompensatorState& state() const noexcept { return state_; }
  [[nodiscard]] CompensationMode mode() const noexcept { return mode_; }

  /// Record gamma after every LMS update into `trajectory` (nullptr disables).
  void record_trajectory(std::vector<cplx>* trajectory) noexcept { trajectory_ = trajectory; }

  /// Processes blocks (z1, z2) -> (z3, z4). `decisions` has N entries and is
  /// written at active subcarriers (index n - 1). `truth` supplies the true
  /// PSK-pair information matrices per subcarrier for CompensationMode::lms_genie.
  void process(std::span<const cplx> z1, std::span<const cplx> z2, std::span<const cplx> z3,
               std::span<const cplx> z4, std::span<StbcDecision> decisions,
               std::span<const AlamoutiMatrix> truth = {});

 private:
  OfdmConfig cfg_;
  PskConstellation psk_;
  CompensationMode mode_;
  CompensatorState state_;
  std::vector<cplx>* trajectory_ = nullptr;
};

/// Result of running the receiver over a whole spectrum stream.
struct DecisionDirectedResult {
  std::vector<std::vector<StbcDecision>> decisions;  // per block pair, N entries
  BitVector bits;  // active subcarriers, block-major, ascending n, x1 then x2
  CompensatorState final_state;
  std::vector<cplx> gamma_trajectory;
};

/// Runs DifferentialReceiver over spectra z_1 .. z_{2K+2}: block k is the pair
/// (z_{2k+1}, z_{2k+2}) and block pairs (k, k+1) are processed in order.
[[nodiscard]] DecisionDirectedResult decision_directed_pass(std::span<const ComplexVector> spectra,
                                                            const OfdmConfig& cfg, const PskConstellation& psk,
                                                            CompensatorState state,
                                                            CompensationMode mode = CompensationMode::lms,
                                                            std::span<const std::vector<AlamoutiMatrix>> truth = {});

/// CSV with header "iteration,gamma_re,gamma_im".
void write_gamma_trajectory_csv(std::ostream& os, std::span<const cplx> trajectory);

}  // namespace dstbc
