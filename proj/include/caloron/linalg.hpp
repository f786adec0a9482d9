#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace caloron {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;
using Vec3 = Eigen::Vector3d;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

namespace pauli {

inline const Mat2& tau(int a) {
  static const std::array<Mat2, 3> t = [] {
    std::array<Mat2, 3> m;
    m[0] << 0, 1, 1, 0;
    m[1] << 0, -I, I, 0;
    m[2] << 1, 0, 0, -1;
    return m;
  }();
  return t[a];
}

// i tau_a, a basis of su(2)
inline Mat2 itau(int a) { return I * tau(a); }

// v . (i tau)
inline Mat2 dot_itau(const Vec3& v) {
  Mat2 m;
  m << I * v.z(), I * v.x() + v.y(), I * v.x() - v.y(), -I * v.z();
  return m;
}

}  // namespace pauli

inline int levi_civita(int i, int j, int k) {
  return (i - j) * (j - k) * (k - i) / 2;
}

// Norm induced by <X,Y> = -tr(XY) on anti-hermitian matrices.
template <class M>
double knorm2(const M& x) {
  return x.squaredNorm();
}

template <class M>
double killing(const M& x, const M& y) {
  return -(x * y).trace().real();
}

template <class M>
M commutator(const M& a, const M& b) {
  return a * b - b * a;
}

// exp of an anti-hermitian matrix via the spectral decomposition of -iX.
inline Mat expm_skew(const Mat& x) {
  Eigen::SelfAdjointEigenSolver<Mat> es(-I * x);
  Eigen::VectorXcd ph(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < ph.size(); ++k) ph(k) = std::exp(I * es.eigenvalues()(k));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

inline Mat embed_block(const Mat2& m, int n, int i, int j) {
  Mat out = Mat::Zero(n, n);
  out(i, i) = m(0, 0);
  out(i, j) = m(0, 1);
  out(j, i) = m(1, 0);
  out(j, j) = m(1, 1);
  return out;
}

inline Mat diag_i(const std::vector<double>& mu) {
  Mat out = Mat::Zero(mu.size(), mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) out(k, k) = I * mu[k];
  return out;
}

// Eigenphases in (-pi, pi], ascending.
inline std::vector<double> eigenphases(const Mat& u) {
  Eigen::ComplexEigenSolver<Mat> es(u);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) out.push_back(std::arg(es.eigenvalues()(k)));
  std::sort(out.begin(), out.end());
  return out;
}

// Wrap to (-pi, pi].
inline double wrap_phase(double a) {
  double w = std::remainder(a, 2.0 * pi);
  return w <= -pi ? w + 2.0 * pi : w;
}

// Distance between two multisets of phases on the circle, greedy matching.
inline double phase_set_distance(std::vector<double> a, std::vector<double> b) {
  double worst = 0.0;
  for (double x : a) {
    std::size_t best = 0;
    double bd = 1e300;
    for (std::size_t k = 0; k < b.size(); ++k) {
      double d = std::abs(wrap_phase(x - b[k]));
      if (d < bd) bd = d, best = k;
    }
    worst = std::max(worst, bd);
    b.erase(b.begin() + static_cast<long>(best));
  }
  return worst;
}

}  // namespace caloron
