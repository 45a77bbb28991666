#include "dstbc/iqi.hpp"

#include <cmath>
#include <limits>

namespace dstbc {

IqiParams derive_iqi_params(double kappa_db, double phi_deg) {
  IqiParams p;
  p.gain = std::pow(10.0, kappa_db / 20.0);
  p.phase_rad = phi_deg * kPi / 180.0;
  if (kappa_db == 0.0 && phi_deg == 0.0) {
    // Keep the IQI-free case exact.
    p.alpha = {1.0, 0.0};
    p.beta = {0.0, 0.0};
  } else {
    p.alpha = 0.5 * (1.0 + p.gain * std::polar(1.0, -p.phase_rad));
    p.beta = 0.5 * (1.0 - p.gain * std::polar(1.0, p.phase_rad));
  }
  p.rho = std::norm(p.beta) / std::norm(p.alpha);
  p.irr_db = p.rho > 0.0 ? -10.0 * std::log10(p.rho) : std::numeric_limits<double>::infinity();
  return p;
}

void apply_rx_iqi_inplace(std::span<cplx> samples, const IqiParams& p) noexcept {
  for (auto& y : samples) y = p.alpha * y + p.beta * std::conj(y);
}

ComplexVector apply_rx_iqi(std::span<const cplx> samples, const IqiParams& p) {
  ComplexVector out(samples.begin(), samples.end());
  apply_rx_iqi_inplace(out, p);
  return out;
}

}  // namespace dstbc
