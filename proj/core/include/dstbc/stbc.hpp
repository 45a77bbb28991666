#pragma once

#include <array>

#include "dstbc/numerics.hpp"

namespace dstbc {

/// 2x2 matrix with Alamouti structure [[a, b], [-b*, a*]].
///
/// The set is closed under addition, products, Hermitian transpose and left
/// multiplication by diag(g, g*), so every matrix in the receive chain
/// (channel, transmit blocks, observations, residuals) is stored as (a, b).
struct AlamoutiMatrix {
  cplx a{};
  cplx b{};

  [[nodiscard]] static constexpr AlamoutiMatrix identity() noexcept { return {cplx{1.0, 0.0}, cplx{}}; }

  /// Entry [row][col], 0-based.
  [[nodiscard]] cplx at(int row, int col) const noexcept {
    if (row == 0) return col == 0 ? a : b;
    return col == 0 ? -std::conj(b) : std::conj(a);
  }

  [[nodiscard]] AlamoutiMatrix hermitian() const noexcept { return {std::conj(a), -b}; }
  /// Elementwise complex conjugate; still an Alamouti matrix with (a*, b*).
  [[nodiscard]] AlamoutiMatrix conjugate() const noexcept { return {std::conj(a), std::conj(b)}; }
  /// diag(g, g*) * M.
  [[nodiscard]] AlamoutiMatrix row_scaled(cplx g) const noexcept { return {g * a, g * b}; }

  /// |a|^2 + |b|^2; M M^H = gain() I.
  [[nodiscard]] double gain() const noexcept { return std::norm(a) + std::norm(b); }
  [[nodiscard]] double trace_real() const noexcept { return 2.0 * a.real(); }
  [[nodiscard]] double frobenius_sq() const noexcept { return 2.0 * gain(); }

  friend AlamoutiMatrix operator*(const AlamoutiMatrix& x, const AlamoutiMatrix& y) noexcept {
    return {x.a * y.a - x.b * std::conj(y.b), x.a * y.b + x.b * std::conj(y.a)};
  }
  friend AlamoutiMatrix operator*(double s, const AlamoutiMatrix& x) noexcept { return {s * x.a, s * x.b}; }
  friend AlamoutiMatrix operator+(const AlamoutiMatrix& x, const AlamoutiMatrix& y) noexcept {
    return {x.a + y.a, x.b + y.b};
  }
  friend AlamoutiMatrix operator-(const AlamoutiMatrix& x, const AlamoutiMatrix& y) noexcept {
    return {x.a - y.a, x.b - y.b};
  }
  friend bool operator==(const AlamoutiMatrix&, const AlamoutiMatrix&) = default;
};

/// U = [u1 | u2] with u1 = [x1, -x2*]^T and u2 = [x2, x1*]^T.
/// Throws unless |x1| = |x2| = 1 within 1e-9.
[[nodiscard]] AlamoutiMatrix alamouti_encode(cplx x1, cplx x2);

/// S_{k+1} = S_k U_{k+1}.
[[nodiscard]] inline AlamoutiMatrix differential_encode(const AlamoutiMatrix& s_k,
                                                        const AlamoutiMatrix& u_next) noexcept {
  return s_k * u_next;
}

/// A detected information matrix together with the phase indices of (x1, x2).
struct StbcDecision {
  std::array<unsigned, 2> phase_index{};
  AlamoutiMatrix info{};

  friend bool operator==(const StbcDecision&, const StbcDecision&) = default;
};

/// arg max over the M^2 PSK-pair candidates U of Re tr(U^H P).
///
/// Re tr(U^H P) = 2 (Re{x1* p_a} + Re{x2* p_b}), so the pair decouples into two
/// independent PSK decisions. Ties resolve to the smallest (index1, index2).
[[nodiscard]] StbcDecision decide_alamouti(const AlamoutiMatrix& metric, const PskConstellation& psk) noexcept;

/// ML differential detection from two consecutive observation blocks.
[[nodiscard]] inline StbcDecision ml_differential_detect(const AlamoutiMatrix& z_k, const AlamoutiMatrix& z_next,
                                                         const PskConstellation& psk) noexcept {
  return decide_alamouti(z_k.hermitian() * z_next, psk);
}

/// Coherent detection with known channel matrix `lambda`.
[[nodiscard]] inline StbcDecision coherent_detect(const AlamoutiMatrix& z_obs, const AlamoutiMatrix& lambda,
                                                  const PskConstellation& psk) noexcept {
  return decide_alamouti(lambda.hermitian() * z_obs, psk);
}

}  // namespace dstbc
