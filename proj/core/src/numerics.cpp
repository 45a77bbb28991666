#include "dstbc/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dstbc {

namespace {

constexpr std::size_t kDirectLimit = 8;

unsigned log2_exact(std::size_t n) {
  unsigned k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

}  // namespace

Dft::Dft(std::size_t n) : n_(n), scale_(0.0) {
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("DFT length must be a power of two, got " + std::to_string(n));
  }
  scale_ = 1.0 / std::sqrt(static_cast<double>(n));
  if (n <= kDirectLimit) return;

  twiddle_.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    twiddle_[k] = std::polar(1.0, -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
  }
  const unsigned bits = log2_exact(n);
  bitrev_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t r = 0;
    for (unsigned b = 0; b < bits; ++b) {
      if (i & (std::size_t{1} << b)) r |= 1u << (bits - 1 - b);
    }
    bitrev_[i] = r;
  }
}

void Dft::forward(std::span<cplx> x) const { transform(x, false); }
void Dft::inverse(std::span<cplx> x) const { transform(x, true); }

void Dft::direct(std::span<cplx> x, bool inverse) const {
  // Literal matrix product; kept in the same evaluation order as the definition.
  cplx out[kDirectLimit];
  const double n = static_cast<double>(n_);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t m = 0; m < n_; ++m) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < n_; ++k) {
      const cplx entry =
          std::exp(cplx(0.0, sign * 2.0 * kPi * static_cast<double>(m * k) / n)) / std::sqrt(n);
      acc += entry * x[k];
    }
    out[m] = acc;
  }
  for (std::size_t m = 0; m < n_; ++m) x[m] = out[m];
}

void Dft::transform(std::span<cplx> x, bool inverse) const {
  if (x.size() != n_) {
    throw std::invalid_argument("DFT plan of length " + std::to_string(n_) +
                                " applied to vector of length " + std::to_string(x.size()));
  }
  if (n_ <= kDirectLimit) {
    direct(x, inverse);
    return;
  }

  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j = bitrev_[i];
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        cplx w = twiddle_[k * stride];
        if (inverse) w = std::conj(w);
        const cplx u = x[start + k];
        const cplx v = w * x[start + k + half];
        x[start + k] = u + v;
        x[start + k + half] = u - v;
      }
    }
  }
  for (auto& v : x) v *= scale_;
}

ComplexVector dft(std::span<const cplx> x) {
  Dft plan(x.size());
  ComplexVector out(x.begin(), x.end());
  plan.forward(out);
  return out;
}

ComplexVector idft(std::span<const cplx> x) {
  Dft plan(x.size());
  ComplexVector out(x.begin(), x.end());
  plan.inverse(out);
  return out;
}

PskConstellation::PskConstellation(unsigned order) : order_(order), bits_(0) {
  if (order != 2 && order != 4 && order != 8 && order != 16) {
    throw std::invalid_argument("unsupported PSK order " + std::to_string(order) +
                                " (expected 2, 4, 8 or 16)");
  }
  bits_ = log2_exact(order);
  points_.resize(order);
  for (unsigned g = 0; g < order; ++g) {
    points_[g] = std::polar(1.0, 2.0 * kPi * g / order);
  }
  // Exact values on the axes keep BPSK/QPSK decisions symmetric.
  for (auto& p : points_) {
    if (std::abs(p.real()) < 1e-15) p.real(0.0);
    if (std::abs(p.imag()) < 1e-15) p.imag(0.0);
  }
}

unsigned PskConstellation::nearest(cplx r) const noexcept {
  unsigned best = 0;
  double best_d = std::norm(r - points_[0]);
  for (unsigned g = 1; g < order_; ++g) {
    const double d = std::norm(r - points_[g]);
    if (d < best_d) {
      best_d = d;
      best = g;
    }
  }
  return best;
}

ComplexVector psk_modulate(std::span<const std::uint8_t> bits, unsigned order) {
  const PskConstellation psk(order);
  const unsigned k = psk.bits_per_symbol();
  if (bits.size() % k != 0) {
    throw std::invalid_argument("bit count " + std::to_string(bits.size()) +
                                " is not a multiple of log2(M) = " + std::to_string(k));
  }
  ComplexVector out;
  out.reserve(bits.size() / k);
  for (std::size_t i = 0; i < bits.size(); i += k) {
    unsigned pattern = 0;
    for (unsigned b = 0; b < k; ++b) pattern = (pattern << 1) | (bits[i + b] & 1u);
    out.push_back(psk.point(psk.phase_index_of(pattern)));
  }
  return out;
}

BitVector psk_demodulate(std::span<const cplx> symbols, unsigned order) {
  const PskConstellation psk(order);
  const unsigned k = psk.bits_per_symbol();
  BitVector out;
  out.reserve(symbols.size() * k);
  for (const cplx& s : symbols) {
    const unsigned pattern = psk.pattern_of(psk.nearest(s));
    for (unsigned b = k; b-- > 0;) out.push_back(static_cast<std::uint8_t>((pattern >> b) & 1u));
  }
  return out;
}

}  // namespace dstbc
