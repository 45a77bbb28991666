#pragma once

#include <span>

#include "dstbc/numerics.hpp"

namespace dstbc {

/// Receive I/Q imbalance. y' = alpha y + beta y*, with
/// alpha = (1 + g e^{-j phi}) / 2 and beta = (1 - g e^{+j phi}) / 2.
struct IqiParams {
  double gain = 1.0;       // g_r, linear amplitude ratio
  double phase_rad = 0.0;  // phi_r
  cplx alpha{1.0, 0.0};
  cplx beta{0.0, 0.0};
  double rho = 0.0;     // |beta|^2 / |alpha|^2
  double irr_db = 0.0;  // -10 log10(rho), +inf when beta = 0

  [[nodiscard]] bool is_ideal() const noexcept { return beta == cplx{}; }
};

[[nodiscard]] IqiParams derive_iqi_params(double kappa_db, double phi_deg);
[[nodiscard]] inline IqiParams ideal_iqi() { return derive_iqi_params(0.0, 0.0); }

[[nodiscard]] ComplexVector apply_rx_iqi(std::span<const cplx> samples, const IqiParams& p);
void apply_rx_iqi_inplace(std::span<cplx> samples, const IqiParams& p) noexcept;

}  // namespace dstbc
