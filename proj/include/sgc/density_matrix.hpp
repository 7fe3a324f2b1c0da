#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace sgc {

using complex = std::complex<double>;
using Matrix4c = Eigen::Matrix<complex, 4, 4>;
using RealVector16 = Eigen::Matrix<double, 16, 1>;
using RealMatrix16 = Eigen::Matrix<double, 16, 16>;

inline constexpr int kLevels = 4;

/// Upper-triangle pairs (0-based) in vectorization order: 12, 13, 14, 23, 24, 34.
inline constexpr std::array<std::pair<int, int>, 6> kCoherencePairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Index of Re(rho_ij) in the real vectorization for i < j; Im follows at +1.
constexpr int coherence_slot(int i, int j) {
  for (int k = 0; k < 6; ++k) {
    if (kCoherencePairs[k].first == i && kCoherencePairs[k].second == j) return 4 + 2 * k;
  }
  return -1;
}

/// 4x4 complex density matrix of the atom (levels |1>..|4> are indices 0..3).
/// Also used for time derivatives, which share the shape and Hermiticity but
/// have zero rather than unit trace.
class DensityMatrix {
 public:
  DensityMatrix() : m_(Matrix4c::Zero()) {}
  explicit DensityMatrix(const Matrix4c& m) : m_(m) {}

  static DensityMatrix ground_state() { return population(0); }

  /// All population in `level` (0-based).
  static DensityMatrix population(int level) {
    DensityMatrix rho;
    rho.m_(level, level) = 1.0;
    return rho;
  }

  complex operator()(int i, int j) const { return m_(i, j); }
  complex& operator()(int i, int j) { return m_(i, j); }

  const Matrix4c& matrix() const { return m_; }

  complex trace() const { return m_.trace(); }

  double hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

  bool is_hermitian(double tol = 1e-12) const { return hermiticity_error() <= tol; }

  bool has_unit_trace(double tol = 1e-10) const { return std::abs(trace() - 1.0) < tol; }

  /// Real populations inside [-tol, 1 + tol].
  bool populations_in_range(double tol = 1e-8) const {
    for (int i = 0; i < kLevels; ++i) {
      const complex v = m_(i, i);
      if (std::abs(v.imag()) > tol || v.real() < -tol || v.real() > 1.0 + tol) return false;
    }
    return true;
  }

  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }

  double max_abs_difference(const DensityMatrix& other) const {
    return (m_ - other.m_).cwiseAbs().maxCoeff();
  }

  DensityMatrix& operator+=(const DensityMatrix& o) {
    m_ += o.m_;
    return *this;
  }
  friend DensityMatrix operator+(DensityMatrix a, const DensityMatrix& b) { return a += b; }
  friend DensityMatrix operator-(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(a.m_ - b.m_);
  }
  friend DensityMatrix operator*(double s, const DensityMatrix& a) { return DensityMatrix(s * a.m_); }

 private:
  Matrix4c m_;
};

/// (rho11, rho22, rho33, rho44, Re rho12, Im rho12, ..., Re rho34, Im rho34).
/// Only the diagonal real parts and the upper triangle are read.
inline RealVector16 vectorize(const DensityMatrix& rho) {
  RealVector16 x;
  for (int i = 0; i < kLevels; ++i) x[i] = rho(i, i).real();
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kCoherencePairs[k];
    x[4 + 2 * k] = rho(i, j).real();
    x[5 + 2 * k] = rho(i, j).imag();
  }
  return x;
}

/// Inverse of vectorize; the result is Hermitian by construction.
inline DensityMatrix unvectorize(const RealVector16& x) {
  Matrix4c m = Matrix4c::Zero();
  for (int i = 0; i < kLevels; ++i) m(i, i) = x[i];
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kCoherencePairs[k];
    m(i, j) = complex(x[4 + 2 * k], x[5 + 2 * k]);
    m(j, i) = std::conj(m(i, j));
  }
  return DensityMatrix(m);
}

}  // namespace sgc
