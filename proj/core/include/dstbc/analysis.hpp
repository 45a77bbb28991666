#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

namespace dstbc::analysis {

/// Conditional SINR of differential detection:
/// |lambda|^2 / (2 |lambdabar|^2 rho + 4 sigma^2).
[[nodiscard]] double sinr_differential(double lambda_sq, double lambdabar_sq, double rho, double sigma_sq);

/// Conditional SINR of coherent detection with perfect CSI:
/// |lambda|^2 / (|lambdabar|^2 rho + 2 sigma^2).
[[nodiscard]] double sinr_coherent(double lambda_sq, double lambdabar_sq, double rho, double sigma_sq);

/// sigma^2 -> 0 limit of sinr_differential.
[[nodiscard]] double sinr_differential_asymptotic(double lambda_sq, double lambdabar_sq, double rho);

/// Per-entry powers of the differential decision metric under the
/// magnitude-only IQI model (A = |alpha| I, B = |beta| I).
namespace metric_power {
[[nodiscard]] double interference(double alpha_abs, double beta_abs, double lambda_sq, double lambdabar_sq);
[[nodiscard]] double signal(double alpha_abs, double lambda_sq);
[[nodiscard]] double noise(double alpha_abs, double lambda_sq, double sigma_sq);
}  // namespace metric_power

/// Density and CDF of the F(4, 4) law of X = |lambda|^2 / |lambdabar|^2.
[[nodiscard]] double f44_pdf(double x);
[[nodiscard]] double f44_cdf(double x);

/// Average asymptotic BER (error floor) of Gray-mapped M-PSK differential
/// detection, integrating erfc(sqrt(eta) sin(pi/M)) / log2 M over the
/// density 2 rho f44(2 rho eta) of the asymptotic SINR.
[[nodiscard]] double ber_floor(unsigned order, double rho);

/// 0.2 (1 + 1.75 snr_eq / (M^1.9 + 1))^-2.
[[nodiscard]] double ber_closed_form(unsigned order, double snr_eq);

/// Harmonic combination 1 / (1/snr + 1/irr), linear; irr may be +inf.
[[nodiscard]] double equivalent_snr(double snr, double irr);

/// (IRR + 10 dB, IRR): SNR where the floor sets in, and the IQI-free SNR
/// whose BER equals the floor.
[[nodiscard]] std::pair<double, double> floor_onset_and_ideal_snr(double irr_db);

[[nodiscard]] inline double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
[[nodiscard]] inline double linear_to_db(double lin) noexcept { return 10.0 * std::log10(lin); }

struct AnalyticPoint {
  double snr_db = 0.0;
  double irr_db = 0.0;
  unsigned order = 8;
  double snr_eq = 0.0;
  double ber = 0.0;        // closed form
  double ber_floor = 0.0;  // 0 when IQI-free
};

[[nodiscard]] std::vector<AnalyticPoint> analytic_curve(unsigned order, double irr_db,
                                                        std::span<const double> snr_db);

}  // namespace dstbc::analysis

