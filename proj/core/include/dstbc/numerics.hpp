#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dstbc {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;
using BitVector = std::vector<std::uint8_t>;

inline constexpr double kPi = 3.14159265358979323846;

[[nodiscard]] constexpr bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

/// Unitary N-point DFT plan, [F]_{m,n} = exp(-j 2 pi m n / N) / sqrt(N).
///
/// Transforms of length <= 8 are evaluated by the direct matrix product so
/// they agree exactly with the matrix definition; longer transforms use an
/// iterative radix-2 FFT with a precomputed twiddle table. `forward` and
/// `inverse` operate in place and never allocate.
class Dft {
 public:
  explicit Dft(std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }

  void forward(std::span<cplx> x) const;  // x <- F x
  void inverse(std::span<cplx> x) const;  // x <- F^H x

 private:
  void transform(std::span<cplx> x, bool inverse) const;
  void direct(std::span<cplx> x, bool inverse) const;

  std::size_t n_;
  double scale_;
  std::vector<cplx> twiddle_;       // exp(-j 2 pi k / N), k < N/2
  std::vector<std::uint32_t> bitrev_;
};

[[nodiscard]] ComplexVector dft(std::span<const cplx> x);
[[nodiscard]] ComplexVector idft(std::span<const cplx> x);

/// Binary-reflected Gray code and its inverse.
[[nodiscard]] constexpr unsigned gray_encode(unsigned b) noexcept { return b ^ (b >> 1); }
[[nodiscard]] constexpr unsigned gray_decode(unsigned g) noexcept {
  unsigned b = g;
  for (unsigned s = g >> 1; s != 0; s >>= 1) b ^= s;
  return b;
}

/// Gray-mapped M-PSK, M in {2, 4, 8, 16}.
///
/// The point exp(j 2 pi k / M) carries the bit pattern gray(k) (first bit
/// most significant), so neighbouring points differ in exactly one bit.
class PskConstellation {
 public:
  explicit PskConstellation(unsigned order);

  [[nodiscard]] unsigned order() const noexcept { return order_; }
  [[nodiscard]] unsigned bits_per_symbol() const noexcept { return bits_; }
  [[nodiscard]] const std::vector<cplx>& points() const noexcept { return points_; }
  [[nodiscard]] cplx point(unsigned phase_index) const { return points_.at(phase_index); }

  [[nodiscard]] unsigned phase_index_of(unsigned pattern) const noexcept { return gray_decode(pattern); }
  [[nodiscard]] unsigned pattern_of(unsigned phase_index) const noexcept { return gray_encode(phase_index); }

  /// Nearest point by Euclidean distance; ties go to the smaller phase index.
  [[nodiscard]] unsigned nearest(cplx r) const noexcept;

 private:
  unsigned order_;
  unsigned bits_;
  std::vector<cplx> points_;
};

[[nodiscard]] ComplexVector psk_modulate(std::span<const std::uint8_t> bits, unsigned order);
[[nodiscard]] BitVector psk_demodulate(std::span<const cplx> symbols, unsigned order);

}  // namespace dstbc
