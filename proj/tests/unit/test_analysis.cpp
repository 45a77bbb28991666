#include <doctest.h>

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <limits>
#include <random>

#include "dstbc/analysis.hpp"
#include "dstbc/channel.hpp"
#include "dstbc/random.hpp"
#include "test_support.hpp"

using namespace dstbc;
using namespace dstbc::analysis;

TEST_CASE("differential and coherent sinr") {
  CHECK(sinr_differential(2.0, 2.0, 0.02, 0.01) == doctest::Approx(16.6666666667));
  CHECK(sinr_coherent(2.0, 2.0, 0.02, 0.01) == doctest::Approx(33.3333333333));
  CHECK(sinr_differential(3.0, 1.0, 0.0, 0.5) == doctest::Approx(3.0 / 2.0));
  CHECK(sinr_coherent(3.0, 1.0, 0.0, 0.5) == doctest::Approx(2.0 * sinr_differential(3.0, 1.0, 0.0, 0.5)));
  CHECK(sinr_differential(3.0, 1.5, 0.1, 0.0) == doctest::Approx(sinr_differential_asymptotic(3.0, 1.5, 0.1)));
  CHECK(sinr_differential_asymptotic(3.0, 1.5, 0.1) == doctest::Approx(3.0 / (2.0 * 1.5 * 0.1)));
  CHECK(sinr_coherent(3.0, 1.5, 0.1, 0.0) == doctest::Approx(2.0 * sinr_differential_asymptotic(3.0, 1.5, 0.1)));
  CHECK_THROWS_AS((void)sinr_differential(1.0, 0.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)sinr_coherent(1.0, 1.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)sinr_differential(-1.0, 1.0, 0.1, 0.1), std::invalid_argument);
}

TEST_CASE("sinr limits and the half-noise identity") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  for (int t = 0; t < 100; ++t) {
    const double l = u(rng), lb = u(rng), rho = u(rng) / 30.0, s2 = u(rng) / 10.0;
    const double asym = sinr_differential_asymptotic(l, lb, rho);
    CHECK(std::abs(sinr_differential(l, lb, rho, 1e-10) - asym) / asym < 1e-6);
    const double lhs = sinr_coherent(l, lb, rho, s2);
    const double rhs = sinr_differential(l, lb, rho / 2.0, s2 / 2.0);
    CHECK(std::abs(lhs - l / (lb * rho + 2.0 * s2)) < 1e-12 * lhs);
    CHECK(std::abs(rhs - l / (lb * rho + 2.0 * s2)) < 1e-12 * rhs);
  }
}

TEST_CASE("metric entry powers") {
  const double a = 1.12, b = 0.15, l = 1.7, lb = 0.6, s2 = 0.01;
  CHECK(metric_power::interference(a, b, l, lb) == doctest::Approx(a * a * b * b * l * lb));
  CHECK(metric_power::signal(a, l) == doctest::Approx(0.5 * std::pow(a * a * l, 2)));
  CHECK(metric_power::noise(a, l, s2) == doctest::Approx(2.0 * std::pow(a, 4) * l * s2));
  // Signal over interference plus noise reproduces the differential SINR.
  const double rho = (b * b) / (a * a);
  const double ratio =
      metric_power::signal(a, l) / (metric_power::interference(a, b, l, lb) + metric_power::noise(a, l, s2));
  CHECK(ratio == doctest::Approx(sinr_differential(l, lb, rho, s2)));
}

TEST_CASE("F(4,4) density") {
  boost::math::quadrature::exp_sinh<double> integrator;
  const double mass = integrator.integrate([](double x) { return f44_pdf(x); });
  const double mean = integrator.integrate([](double x) { return x * f44_pdf(x); });
  CHECK(std::abs(mass - 1.0) < 1e-8);
  CHECK(std::abs(mean - 2.0) < 1e-6);
  CHECK_THROWS_AS((void)f44_pdf(-0.1), std::invalid_argument);
  CHECK(f44_pdf(0.0) == 0.0);
  for (double x : {0.1, 0.5, 1.0, 3.0, 20.0}) {
    boost::math::quadrature::exp_sinh<double> tail;
    const double upper = tail.integrate([](double t) { return f44_pdf(t); }, x, std::numeric_limits<double>::infinity());
    CHECK(std::abs(f44_cdf(x) - (1.0 - upper)) < 1e-9);
  }
  CHECK(f44_cdf(0.0) == 0.0);
  CHECK(f44_cdf(1.0) == doctest::Approx(0.5));
}

TEST_CASE("channel power ratio of independent draws follows F(4,4)") {
  FadingGrid grid;
  const auto flat = load_profile("flat", 0.0);
  const std::size_t draws = 200000;
  std::vector<double> x(draws);
  double mean = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const auto d = realize_fading(flat, grid, 1, derive_seed(7, 2 * i));
    const auto m = realize_fading(flat, grid, 1, derive_seed(7, 2 * i + 1));
    const double num = std::norm(d.taps(TxAntenna::first, 0)[0]) + std::norm(d.taps(TxAntenna::second, 0)[0]);
    const double den = std::norm(m.taps(TxAntenna::first, 0)[0]) + std::norm(m.taps(TxAntenna::second, 0)[0]);
    x[i] = num / den;
    mean += x[i];
  }
  mean /= draws;
  std::sort(x.begin(), x.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double f = f44_cdf(x[i]);
    ks = std::max({ks, std::abs(f - double(i) / draws), std::abs(f - double(i + 1) / draws)});
  }
  CHECK(ks < 0.005);
  // F(4,4) has infinite variance, so the sample mean converges slowly.
  CHECK(mean == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("error floor") {
  CHECK(ber_floor(2, 0.99) > 0.1);
  double prev = 0.0;
  for (double irr_db = 40.0; irr_db >= 0.5; irr_db -= 2.5) {
    const double v = ber_floor(8, std::pow(10.0, -irr_db / 10.0));
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS((void)ber_floor(8, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)ber_floor(8, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)ber_floor(6, 0.1), std::invalid_argument);
}

TEST_CASE("error floor matches a Monte Carlo average") {
  const double rho = std::pow(10.0, -1.744);
  const unsigned m = 8;
  std::mt19937_64 rng(42);
  std::exponential_distribution<double> e(1.0);
  const double s = std::sin(kPi / m);
  const std::size_t draws = 10'000'000;
  double acc = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double x = (e(rng) + e(rng)) / (e(rng) + e(rng));
    acc += std::erfc(std::sqrt(x / (2.0 * rho)) * s) / 3.0;
  }
  const double mc = acc / draws;
  CHECK(ber_floor(m, rho) == doctest::Approx(mc).epsilon(0.02));
  CHECK(ber_floor(m, rho) == doctest::Approx(0.016174).epsilon(1e-3));
}

TEST_CASE("closed-form BER") {
  CHECK(ber_closed_form(8, 0.0) == doctest::Approx(0.2));
  CHECK(ber_closed_form(8, 100.0) == doctest::Approx(1.081e-2).epsilon(2e-3));
  CHECK(ber_closed_form(8, 100.0) == doctest::Approx(0.2 / std::pow(1.0 + 175.0 / (std::pow(8.0, 1.9) + 1.0), 2)));
  CHECK(ber_closed_form(8, 1e12) < 1e-15);
  double prev = 1.0;
  for (double snr = 0.0; snr < 1e4; snr = snr * 1.5 + 0.1) {
    const double v = ber_closed_form(8, snr);
    CHECK(v <= prev);
    prev = v;
  }
  CHECK(equivalent_snr(100.0, std::numeric_limits<double>::infinity()) == 100.0);
  CHECK(equivalent_snr(100.0, 100.0) == doctest::Approx(50.0));
}

TEST_CASE("floor onset and ideal-equivalent SNR") {
  const auto [onset, ideal] = floor_onset_and_ideal_snr(16.8);
  CHECK(onset == doctest::Approx(26.8));
  CHECK(ideal == doctest::Approx(16.8));
  CHECK(floor_onset_and_ideal_snr(30.0) == std::pair<double, double>{40.0, 30.0});
  CHECK_THROWS_AS((void)floor_onset_and_ideal_snr(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("analytic curve") {
  const std::vector<double> grid{0, 5, 10, 15, 20, 25, 30, 35, 40};
  const auto curve = analytic_curve(8, 16.8, grid);
  REQUIRE(curve.size() == 9);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    CHECK(curve[i].ber >= 0.0);
    CHECK(curve[i].ber <= 0.5);
    if (i > 0) CHECK(curve[i].ber <= curve[i - 1].ber);
    CHECK(curve[i].ber_floor == doctest::Approx(ber_floor(8, std::pow(10.0, -1.68))));
  }
  const auto ideal = analytic_curve(8, std::numeric_limits<double>::infinity(), grid);
  CHECK(ideal.back().ber_floor == 0.0);
  CHECK(ideal.back().snr_eq == doctest::Approx(1e4));
}
