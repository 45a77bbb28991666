#include <doctest.h>

#include <random>

#include "dstbc/stbc.hpp"
#include "test_support.hpp"

using namespace dstbc;
using test::explicit_alamouti;
using test::full;
using test::Mat2;
using test::mat_diff;

namespace {

const Mat2 kTwoI{{{2.0, 0.0}, {0.0, 2.0}}};

AlamoutiMatrix random_alamouti(std::mt19937_64& rng) { return {test::cgauss(rng), test::cgauss(rng)}; }

}  // namespace

TEST_CASE("alamouti encoding") {
  const auto u11 = alamouti_encode(1.0, 1.0);
  CHECK(mat_diff(full(u11), Mat2{{{1.0, 1.0}, {-1.0, 1.0}}}) == 0.0);
  const auto u1j = alamouti_encode(1.0, cplx(0, 1));
  CHECK(mat_diff(full(u1j), Mat2{{{1.0, cplx(0, 1)}, {cplx(0, 1), 1.0}}}) == 0.0);
  CHECK_THROWS_AS((void)alamouti_encode(1.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)alamouti_encode(1.0, 0.0), std::invalid_argument);

  PskConstellation psk(8);
  for (const auto& x1 : psk.points()) {
    for (const auto& x2 : psk.points()) {
      const auto u = full(alamouti_encode(x1, x2));
      CHECK(mat_diff(test::mul(u, test::herm(u)), kTwoI) < 1e-12);
    }
  }
}

TEST_CASE("matrix operations agree with plain 2x2 arithmetic") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_alamouti(rng), y = random_alamouti(rng);
    const cplx g = test::cgauss(rng);
    CHECK(mat_diff(full(x * y), test::mul(full(x), full(y))) < 1e-12);
    CHECK(mat_diff(full(x.hermitian()), test::herm(full(x))) == 0.0);
    const Mat2 fx = full(x);
    CHECK(mat_diff(full(x.conjugate()), Mat2{{{std::conj(fx[0][0]), std::conj(fx[0][1])},
                                               {std::conj(fx[1][0]), std::conj(fx[1][1])}}}) == 0.0);
    const Mat2 d{{{g, 0.0}, {0.0, std::conj(g)}}};
    CHECK(mat_diff(full(x.row_scaled(g)), test::mul(d, full(x))) < 1e-12);
    const Mat2 xxh = test::mul(fx, test::herm(fx));
    CHECK(mat_diff(xxh, Mat2{{{x.gain(), 0.0}, {0.0, x.gain()}}}) < 1e-12);
    CHECK(x.trace_real() == doctest::Approx((fx[0][0] + fx[1][1]).real()));
  }
}

TEST_CASE("differential encoding") {
  PskConstellation psk(8);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<unsigned> idx(0, 7);
  const auto u = alamouti_encode(psk.point(idx(rng)), psk.point(idx(rng)));
  CHECK(differential_encode(AlamoutiMatrix::identity(), u) == u);
  const auto s = random_alamouti(rng);
  CHECK(differential_encode(s, AlamoutiMatrix::identity()) == s);

  const double r = 1.0 / std::sqrt(2.0);
  const auto s1 = r * alamouti_encode(1.0, 1.0);
  const auto s2 = differential_encode(s1, alamouti_encode(1.0, cplx(0, 1)));
  const Mat2 want = test::mul(test::mul(Mat2{{{1.0, 0.0}, {0.0, 1.0}}}, full(s1)), explicit_alamouti(1.0, cplx(0, 1)));
  CHECK(mat_diff(full(s2), want) < 1e-12);
}

TEST_CASE("raw differential chain grows as 2^K, normalized chain stays unitary") {
  PskConstellation psk(8);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<unsigned> idx(0, 7);
  auto s = AlamoutiMatrix::identity();
  auto sn = AlamoutiMatrix::identity();
  for (int k = 1; k <= 20; ++k) {
    const auto u = alamouti_encode(psk.point(idx(rng)), psk.point(idx(rng)));
    s = differential_encode(s, u);
    sn = differential_encode(sn, (1.0 / std::sqrt(2.0)) * u);
    const double scale = std::ldexp(1.0, k);
    const Mat2 ssh = test::mul(full(s), test::herm(full(s)));
    CHECK(mat_diff(ssh, Mat2{{{scale, 0.0}, {0.0, scale}}}) < 1e-9 * scale);
    CHECK(sn.gain() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("ml differential detection") {
  PskConstellation psk(8);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<unsigned> idx(0, 7);
  for (int t = 0; t < 200; ++t) {
    const unsigned i1 = idx(rng), i2 = idx(rng);
    const auto u = alamouti_encode(psk.point(i1), psk.point(i2));
    const auto lam = random_alamouti(rng);
    const auto sk = random_alamouti(rng);
    const auto d = ml_differential_detect(lam * sk, lam * sk * u, psk);
    CHECK(d.phase_index == std::array<unsigned, 2>{i1, i2});
    CHECK(d.info == u);
    CHECK(ml_differential_detect(AlamoutiMatrix::identity(), u, psk).phase_index == std::array<unsigned, 2>{i1, i2});
  }
}

TEST_CASE("detectors agree with exhaustive search on noisy instances") {
  PskConstellation psk(8);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<unsigned> idx(0, 7);
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto u = alamouti_encode(psk.point(idx(rng)), psk.point(idx(rng)));
    const auto lam = random_alamouti(rng);
    const auto sk = random_alamouti(rng);
    const AlamoutiMatrix noise1{test::cgauss(rng, 0.3), test::cgauss(rng, 0.3)};
    const AlamoutiMatrix noise2{test::cgauss(rng, 0.3), test::cgauss(rng, 0.3)};
    const auto zk = lam * sk + noise1;
    const auto zn = lam * sk * u + noise2;

    const auto d = ml_differential_detect(zk, zn, psk);
    mismatches += d.phase_index != test::exhaustive_search(test::mul(test::herm(full(zk)), full(zn)), psk);

    const auto zc = lam * u + noise1;
    const auto c = coherent_detect(zc, lam, psk);
    mismatches += c.phase_index != test::exhaustive_search(test::mul(test::herm(full(lam)), full(zc)), psk);
  }
  CHECK(mismatches == 0);
}

TEST_CASE("ml detection is invariant to a common complex scale") {
  PskConstellation psk(8);
  std::mt19937_64 rng(6);
  for (int t = 0; t < 200; ++t) {
    const auto zk = random_alamouti(rng), zn = random_alamouti(rng);
    const cplx c = test::cgauss(rng);
    const AlamoutiMatrix cz_k{c * zk.a, c * zk.b}, cz_n{c * zn.a, c * zn.b};
    CHECK(ml_differential_detect(zk, zn, psk).phase_index == ml_differential_detect(cz_k, cz_n, psk).phase_index);
  }
}

TEST_CASE("ties resolve to the smallest index pair") {
  PskConstellation psk(8);
  const auto d = decide_alamouti(AlamoutiMatrix{}, psk);
  CHECK(d.phase_index == std::array<unsigned, 2>{0, 0});
  CHECK(test::exhaustive_search(Mat2{}, psk) == std::array<unsigned, 2>{0, 0});
}

TEST_CASE("coherent detection") {
  PskConstellation psk(8);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<unsigned> idx(0, 7);
  for (int t = 0; t < 200; ++t) {
    const unsigned i1 = idx(rng), i2 = idx(rng);
    const auto u = alamouti_encode(psk.point(i1), psk.point(i2));
    const auto lam = random_alamouti(rng);
    CHECK(coherent_detect(lam * u, lam, psk).phase_index == std::array<unsigned, 2>{i1, i2});
    const AlamoutiMatrix tiny{cplx(1e-6, -1e-6), cplx(-1e-6, 0.0)};
    CHECK(coherent_detect(u + tiny, AlamoutiMatrix::identity(), psk).phase_index == std::array<unsigned, 2>{i1, i2});
  }
}
