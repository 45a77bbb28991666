#include "dstbc/analysis.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dstbc/numerics.hpp"

namespace dstbc::analysis {

namespace {

void check_order(unsigned order) {
  if (order != 2 && order != 4 && order != 8 && order != 16) {
    throw std::invalid_argument("unsupported PSK order " + std::to_string(order));
  }
}

double checked_ratio(double num, double den) {
  if (!(den > 0.0)) throw std::invalid_argument("SINR denominator must be positive");
  return num / den;
}

void check_nonnegative(double lambda_sq, double lambdabar_sq, double rho, double sigma_sq) {
  if (lambda_sq < 0.0 || lambdabar_sq < 0.0 || rho < 0.0 || sigma_sq < 0.0) {
    throw std::invalid_argument("SINR inputs must be non-negative");
  }
}

}  // namespace

double sinr_differential(double lambda_sq, double lambdabar_sq, double rho, double sigma_sq) {
  check_nonnegative(lambda_sq, lambdabar_sq, rho, sigma_sq);
  return checked_ratio(lambda_sq, 2.0 * lambdabar_sq * rho + 4.0 * sigma_sq);
}

double sinr_coherent(double lambda_sq, double lambdabar_sq, double rho, double sigma_sq) {
  check_nonnegative(lambda_sq, lambdabar_sq, rho, sigma_sq);
  return checked_ratio(lambda_sq, lambdabar_sq * rho + 2.0 * sigma_sq);
}

double sinr_differential_asymptotic(double lambda_sq, double lambdabar_sq, double rho) {
  return sinr_differential(lambda_sq, lambdabar_sq, rho, 0.0);
}

namespace metric_power {
double interference(double alpha_abs, double beta_abs, double lambda_sq, double lambdabar_sq) {
  const double ab = alpha_abs * beta_abs;
  return ab * ab * lambda_sq * lambdabar_sq;
}
double signal(double alpha_abs, double lambda_sq) {
  const double a2 = alpha_abs * alpha_abs;
  return 0.5 * a2 * a2 * lambda_sq * lambda_sq;
}
double noise(double alpha_abs, double lambda_sq, double sigma_sq) {
  const double a2 = alpha_abs * alpha_abs;
  return 2.0 * a2 * a2 * lambda_sq * sigma_sq;
}
}  // namespace metric_power

double f44_pdf(double x) {
  if (x < 0.0) throw std::invalid_argument("F(4,4) density is defined for x >= 0");
  const double d = 1.0 + x;
  return 6.0 * x / (d * d * d * d);
}

double f44_cdf(double x) {
  if (x <= 0.0) return 0.0;
  const double t = x / (1.0 + x);
  return t * t * (3.0 - 2.0 * t);
}

double ber_floor(unsigned order, double rho) {
  check_order(order);
  if (!(rho > 0.0)) throw std::invalid_argument("error floor needs rho > 0 (finite IRR)");
  if (!(rho < 1.0)) throw std::invalid_argument("error floor needs rho < 1");
  const double s = std::sin(kPi / order);
  const double bits = std::log2(static_cast<double>(order));
  // Integrate over x = 2 rho eta, where x ~ F(4,4). erfc(z) < 1e-19 for
  // z > 6.3, which bounds the support well below 1e-16 of the peak.
  const double z_max = 6.3;
  const double x_max = 2.0 * rho * (z_max / s) * (z_max / s);
  auto integrand = [&](double x) {
    return std::erfc(std::sqrt(x / (2.0 * rho)) * s) / bits * f44_pdf(x);
  };
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, x_max, 20, 1e-9, &error);
  return value;
}

double ber_closed_form(unsigned order, double snr_eq) {
  check_order(order);
  if (snr_eq < 0.0) throw std::invalid_argument("equivalent SNR must be >= 0");
  if (std::isinf(snr_eq)) return 0.0;
  const double q = 1.0 + 1.75 * snr_eq / (std::pow(static_cast<double>(order), 1.9) + 1.0);
  return 0.2 / (q * q);
}

double equivalent_snr(double snr, double irr) {
  if (!(snr >= 0.0) || !(irr >= 0.0)) throw std::invalid_argument("SNR and IRR must be >= 0");
  if (snr == 0.0 || irr == 0.0) return 0.0;
  return 1.0 / (1.0 / snr + 1.0 / irr);
}

std::pair<double, double> floor_onset_and_ideal_snr(double irr_db) {
  if (!std::isfinite(irr_db)) throw std::invalid_argument("IRR must be finite");
  return {irr_db + 10.0, irr_db};
}

std::vector<AnalyticPoint> analytic_curve(unsigned order, double irr_db, std::span<const double> snr_db) {
  check_order(order);
  const double irr = std::isinf(irr_db) ? std::numeric_limits<double>::infinity() : db_to_linear(irr_db);
  const double floor = std::isinf(irr_db) ? 0.0 : ber_floor(order, 1.0 / irr);
  std::vector<AnalyticPoint> out;
  out.reserve(snr_db.size());
  for (const double s : snr_db) {
    AnalyticPoint p;
    p.snr_db = s;
    p.irr_db = irr_db;
    p.order = order;
    p.snr_eq = equivalent_snr(db_to_linear(s), irr);
    p.ber = ber_closed_form(order, p.snr_eq);
    p.ber_floor = floor;
    out.push_back(p);
  }
  return out;
}

}  // namespace dstbc::analysis
