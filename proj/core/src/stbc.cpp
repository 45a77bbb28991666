#include "dstbc/stbc.hpp"

#include <cmath>
#include <stdexcept>

namespace dstbc {

AlamoutiMatrix alamouti_encode(cplx x1, cplx x2) {
  if (std::abs(std::abs(x1) - 1.0) > 1e-9 || std::abs(std::abs(x2) - 1.0) > 1e-9) {
    throw std::invalid_argument("Alamouti encoding needs unit-modulus symbols");
  }
  return {x1, x2};
}

namespace {

unsigned best_point(cplx p, const PskConstellation& psk) noexcept {
  const auto& pts = psk.points();
  unsigned best = 0;
  double best_v = (std::conj(pts[0]) * p).real();
  for (unsigned g = 1; g < pts.size(); ++g) {
    const double v = (std::conj(pts[g]) * p).real();
    if (v > best_v) {
      best_v = v;
      best = g;
    }
  }
  return best;
}

}  // namespace

StbcDecision decide_alamouti(const AlamoutiMatrix& metric, const PskConstellation& psk) noexcept {
  StbcDecision d;
  d.phase_index = {best_point(metric.a, psk), best_point(metric.b, psk)};
  d.info = {psk.point(d.phase_index[0]), psk.point(d.phase_index[1])};
  return d;
}

}  // namespace dstbc
