#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "dstbc/compensator.hpp"
#include "test_support.hpp"

using namespace dstbc;

namespace {

const OfdmConfig kCfg(64, 20);
const PskConstellation kPsk(8);

IqiParams random_iqi(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> k(-3.0, 3.0), ph(-10.0, 10.0);
  return derive_iqi_params(k(rng), ph(rng));
}

// The mirror companion follows the conjugated information of the mirror subcarrier.
double differential_residual(const CompensatedObservation& c, const AlamoutiMatrix& u_unit,
                             const AlamoutiMatrix& u_mirror_unit) {
  const auto r = c.s_next - c.s_k * u_unit;
  const auto rbar = c.sbar_next - c.sbar_k * u_mirror_unit.conjugate();
  return std::sqrt(r.frobenius_sq() + rbar.frobenius_sq());
}

}  // namespace

TEST_CASE("gamma_true") {
  CHECK(gamma_true(ideal_iqi()) == cplx{});
  const cplx g = gamma_true(derive_iqi_params(2.0, 8.0));
  CHECK(g.real() == doctest::Approx(0.11518).epsilon(1e-4));
  CHECK(g.imag() == doctest::Approx(0.06901).epsilon(1e-3));
  CHECK(gamma_true(derive_iqi_params(2.0, 0.0)).imag() == 0.0);
  IqiParams degenerate = ideal_iqi();
  degenerate.alpha = {};
  CHECK_THROWS_AS((void)gamma_true(degenerate), std::invalid_argument);
}

TEST_CASE("zero gamma leaves observations unchanged") {
  std::mt19937_64 rng(1);
  SubcarrierObservation obs{3, {test::cgauss(rng), test::cgauss(rng)}, {test::cgauss(rng), test::cgauss(rng)},
                            {test::cgauss(rng), test::cgauss(rng)}, {test::cgauss(rng), test::cgauss(rng)}};
  const auto c = compensate_observation(obs, cplx{});
  CHECK(c.s_k == obs.z_k);
  CHECK(c.s_next == obs.z_next);
  CHECK(c.sbar_k == obs.zbar_k);
  CHECK(c.sbar_next == obs.zbar_next);
}

TEST_CASE("true gamma restores the differential relation for any channel") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto iqi = random_iqi(rng);
    const auto stream = test::synth_stream(kCfg, kPsk, 1, iqi, 0.0, rng());
    const auto& z = stream.spectra;
    const cplx g = gamma_true(iqi);
    for (std::size_t n : kCfg.active_set()) {
      const auto obs = build_observation(z[0], z[1], z[2], z[3], n, kCfg);
      const auto u = (1.0 / std::sqrt(2.0)) * stream.truth[0][n - 1];
      const auto um = (1.0 / std::sqrt(2.0)) * stream.truth[0][mirror_index(n, 64) - 1];
      CHECK(differential_residual(compensate_observation(obs, g), u, um) < 1e-10);
      if (n == 7) {
        const cplx wrong = g + cplx(0.05, -0.03);
        CHECK(differential_residual(compensate_observation(obs, wrong), u, um) > 1e-4);
      }
    }
  }
}

TEST_CASE("residual samples") {
  std::mt19937_64 rng(3);
  const auto ideal = test::synth_stream(kCfg, kPsk, 1, ideal_iqi(), 0.0, 11);
  const auto& z = ideal.spectra;
  for (std::size_t n : kCfg.active_set()) {
    const auto obs = build_observation(z[0], z[1], z[2], z[3], n, kCfg);
    for (const auto& r : build_residuals(obs, (1.0 / std::sqrt(2.0)) * ideal.truth[0][n - 1])) {
      CHECK(std::abs(r.xi) < 1e-12);
    }
  }

  for (const auto& r : build_residuals(SubcarrierObservation{}, AlamoutiMatrix::identity())) {
    CHECK(r.xi == cplx{});
    CHECK(r.delta == cplx{});
  }

  for (int t = 0; t < 20; ++t) {
    const auto iqi = random_iqi(rng);
    const auto s = test::synth_stream(kCfg, kPsk, 1, iqi, 0.0, rng());
    const cplx g = gamma_true(iqi);
    for (std::size_t n : kCfg.active_set()) {
      const auto obs = build_observation(s.spectra[0], s.spectra[1], s.spectra[2], s.spectra[3], n, kCfg);
      const auto u = (1.0 / std::sqrt(2.0)) * s.truth[0][n - 1];
      const auto samples = build_residuals(obs, u);
      for (const auto& r : samples) CHECK(std::abs(r.xi + g * r.delta) < 1e-10);
      // Entries of Xi = Z'_{k+1} - Z'_k U, first column, second row conjugated.
      const auto xi = test::mul(test::full(obs.z_k), test::full(u));
      const auto zn = test::full(obs.z_next);
      CHECK(std::abs(samples[0].xi - (zn[0][0] - xi[0][0])) < 1e-12);
      CHECK(std::abs(samples[1].xi - std::conj(zn[1][0] - xi[1][0])) < 1e-12);
    }
  }
}

TEST_CASE("lms step") {
  CompensatorState s;
  s.gamma = {0.3, -0.1};
  s.mu = 0.1;
  const auto same = lms_step(s, cplx(1.0, 2.0), cplx{});
  CHECK(same.gamma == s.gamma);
  CHECK(same.iteration == 1);

  const cplx gt = gamma_true(derive_iqi_params(2.0, 8.0));
  CompensatorState at_truth{gt, 0.1, 0};
  const cplx delta{0.7, -0.4};
  CHECK(std::abs(lms_step(at_truth, -gt * delta, delta).gamma - gt) < 1e-15);

  CompensatorState zero{cplx{}, 0.1, 0};
  const auto one = lms_step(zero, -gt * cplx(1.0, 0.0), cplx(1.0, 0.0));
  CHECK(std::abs(one.gamma - 0.1 * gt) < 1e-15);
}

TEST_CASE("decision-directed pass without IQI keeps gamma near zero") {
  const double sigma2 = 1e-3;
  const auto s = test::synth_stream(kCfg, kPsk, 100, ideal_iqi(), sigma2, 21);
  const auto r = decision_directed_pass(s.spectra, kCfg, kPsk, CompensatorState{});
  CHECK(r.gamma_trajectory.size() == 100 * 31 * 2);
  CHECK(r.final_state.iteration == 100 * 31 * 2);
  double worst = 0.0;
  for (const auto& g : r.gamma_trajectory) worst = std::max(worst, std::abs(g));
  CHECK(worst < 0.02);
  CHECK(r.bits.size() == 100 * 62 * 2 * 3);
}

TEST_CASE("decision-directed pass converges to the true coefficient") {
  const auto iqi = derive_iqi_params(2.0, 8.0);
  const cplx gt = gamma_true(iqi);
  const double sigma2 = 1e-3;  // 30 dB
  const auto s = test::synth_stream(kCfg, kPsk, 2000, iqi, sigma2, 31);
  const auto dd = decision_directed_pass(s.spectra, kCfg, kPsk, CompensatorState{});
  CHECK(std::abs(dd.final_state.gamma - gt) < 0.02);
  const auto genie = decision_directed_pass(s.spectra, kCfg, kPsk, CompensatorState{}, CompensationMode::lms_genie,
                                            s.truth);
  CHECK(std::abs(genie.final_state.gamma - gt) < 0.02);

  auto first_within = [&](const std::vector<cplx>& traj) {
    for (std::size_t i = 0; i < traj.size(); ++i)
      if (std::abs(traj[i] - gt) < 0.03) return i;
    return traj.size();
  };
  CHECK(first_within(genie.gamma_trajectory) <= first_within(dd.gamma_trajectory));

  // Detected bits match the transmitted patterns once converged.
  std::size_t errors = 0;
  const std::size_t tail = 1000;
  for (std::size_t k = 2000 - tail; k < 2000; ++k)
    for (std::size_t n : kCfg.active_set())
      for (int i = 0; i < 2; ++i) {
        const cplx x = i == 0 ? s.truth[k][n - 1].a : s.truth[k][n - 1].b;
        errors += kPsk.nearest(x) != dd.decisions[k][n - 1].phase_index[i];
      }
  CHECK(errors < tail * 124 / 100);
}

TEST_CASE("lms reduces the residual energy over seeds") {
  const auto iqi = derive_iqi_params(2.0, 8.0);
  std::vector<double> before, after;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = test::synth_stream(kCfg, kPsk, 34, iqi, 1e-3, 500 + seed);
    // 33 block pairs give 2046 updates; the last pair is held out.
    std::span<const ComplexVector> train(s.spectra.data(), 2 * 33 + 2);
    const auto r = decision_directed_pass(train, kCfg, kPsk, CompensatorState{});
    REQUIRE(r.final_state.iteration >= 2000);
    const cplx g2000 = r.gamma_trajectory[1999];
    double e0 = 0.0, e1 = 0.0;
    for (std::size_t n : kCfg.lower_half()) {
      const auto obs = build_observation(s.spectra[66], s.spectra[67], s.spectra[68], s.spectra[69], n, kCfg);
      for (const auto& smp : build_residuals(obs, (1.0 / std::sqrt(2.0)) * s.truth[33][n - 1])) {
        e0 += std::norm(smp.xi);
        e1 += std::norm(smp.xi + g2000 * smp.delta);
      }
    }
    before.push_back(e0);
    after.push_back(e1);
  }
  std::nth_element(before.begin(), before.begin() + 50, before.end());
  std::nth_element(after.begin(), after.begin() + 50, after.end());
  CHECK(after[50] < before[50]);
}

TEST_CASE("each block pair updates gamma twice per subcarrier pair") {
  const auto s = test::synth_stream(kCfg, kPsk, 3, derive_iqi_params(1.0, 3.0), 1e-2, 5);
  DifferentialReceiver rx(kCfg, kPsk, CompensationMode::lms, CompensatorState{});
  std::vector<StbcDecision> d(64);
  rx.process(s.spectra[0], s.spectra[1], s.spectra[2], s.spectra[3], d);
  CHECK(rx.state().iteration == 62);

  DifferentialReceiver fixed(kCfg, kPsk, CompensationMode::fixed, CompensatorState{cplx(0.1, 0.0), 0.005, 0});
  fixed.process(s.spectra[0], s.spectra[1], s.spectra[2], s.spectra[3], d);
  CHECK(fixed.state().iteration == 0);
  CHECK(fixed.state().gamma == cplx(0.1, 0.0));
  CHECK_THROWS_AS(fixed.process(s.spectra[0], s.spectra[1], s.spectra[2], s.spectra[3], std::span(d).first(10)),
                  std::invalid_argument);
}

TEST_CASE("gamma trajectory csv") {
  std::ostringstream os;
  const std::vector<cplx> traj{{0.5, -0.25}, {0.125, 1.0}};
  write_gamma_trajectory_csv(os, traj);
  CHECK(os.str() == "iteration,gamma_re,gamma_im\n1,0.5,-0.25\n2,0.125,1\n");
}
