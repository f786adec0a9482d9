#pragma once

// SU(2) building blocks: the BPS monopole, its hedgehog framing, Dirac
// monopoles and the rotation map producing the charge -1 caloron.

#include "caloron/errors.hpp"
#include "caloron/linalg.hpp"
#include "caloron/numerics.hpp"
#include "caloron/sampler.hpp"

#include <array>
#include <cmath>
#include <memory>

namespace caloron {

struct Su2Field {
  std::array<Mat2, 4> a;  // dx1, dx2, dx3, dt
};

enum class Patch { north, south };

inline Patch patch_for(const Vec3& y) { return y.z() < 0.0 ? Patch::south : Patch::north; }

// ---------------------------------------------------------------- BPS monopole

/// Radial profiles of the BPS monopole of mass v:
/// Phi = eta(r) x.(i tau),  A_i = kappa(r) (e_i x x).(i tau).
struct BpsProfile {
  double eta;
  double kappa;
};

inline BpsProfile bps_profile(double v, double r) {
  const double z = 2.0 * v * r;
  if (z < 1e-2) {
    const double z2 = z * z;
    return {2.0 * v * v * (1.0 / 3.0 - z2 / 45.0 + 2.0 * z2 * z2 / 945.0),
            -2.0 * v * v * (1.0 / 6.0 - 7.0 * z2 / 360.0 + 31.0 * z2 * z2 / 15120.0)};
  }
  const double h = v / std::tanh(z) - 0.5 / r;
  const double k = 1.0 - z / std::sinh(z);
  return {h / r, -0.5 * k / (r * r)};
}

/// Norm of the Higgs field, |Phi| / |i tau_3| = v coth(2vr) - 1/(2r).
inline double bps_higgs_magnitude(double v, double r) { return bps_profile(v, r).eta * r; }

class BpsMonopole {
 public:
  BpsMonopole(double v, const Vec3& center) : v_(v), c_(center) {
    require(v > 0.0 && std::isfinite(v), ErrorKind::invalid_input, "BPS mass must be positive");
  }
  double mass() const { return v_; }
  const Vec3& center() const { return c_; }

  Mat2 higgs(const Vec3& x) const {
    Vec3 y = x - c_;
    return bps_profile(v_, y.norm()).eta * pauli::dot_itau(y);
  }

  std::array<Mat2, 3> gauge(const Vec3& x) const {
    Vec3 y = x - c_;
    double k = bps_profile(v_, y.norm()).kappa;
    std::array<Mat2, 3> a;
    for (int i = 0; i < 3; ++i) a[i] = k * pauli::dot_itau(Vec3::Unit(i).cross(y));
    return a;
  }

 private:
  double v_;
  Vec3 c_;
};

inline BpsMonopole bps_pair(double v, const Vec3& center = Vec3::Zero()) { return BpsMonopole(v, center); }

/// Pointwise residual |F_A - *d_A Phi| using second-order central differences.
inline double bogomolny_residual(const BpsMonopole& m, const Vec3& x, double h) {
  std::array<std::array<Mat2, 3>, 3> dA;
  std::array<Mat2, 3> dPhi;
  for (int i = 0; i < 3; ++i) {
    Vec3 e = h * Vec3::Unit(i);
    auto ap = m.gauge(x + e), am = m.gauge(x - e);
    for (int j = 0; j < 3; ++j) dA[i][j] = (ap[j] - am[j]) / (2.0 * h);
    dPhi[i] = (m.higgs(x + e) - m.higgs(x - e)) / (2.0 * h);
  }
  auto A = m.gauge(x);
  Mat2 phi = m.higgs(x);
  double res = 0.0;
  for (int a = 0; a < 3; ++a) {
    int b = (a + 1) % 3, c = (a + 2) % 3;
    Mat2 B = dA[b][c] - dA[c][b] + commutator(A[b], A[c]);
    Mat2 D = dPhi[a] + commutator(A[a], phi);
    res += knorm2(Mat2(B - D));
  }
  return std::sqrt(res);
}

// ---------------------------------------------------------------- framings

struct Framing {
  Mat2 f;
  std::array<Mat2, 3> df;
};

/// Gauge transformation with f^{-1} (x.i tau) f = |x| i tau_3. The north
/// patch is singular on the negative z-axis, the south patch on the positive
/// one; they differ by exp(-phi i tau_3).
inline Framing hedgehog_framing_full(const Vec3& y, Patch patch = Patch::north) {
  const double r = y.norm();
  const double s = patch == Patch::north ? 1.0 : -1.0;
  const double q = r + s * y.z();
  if (r == 0.0 || q <= 1e-14 * r)
    fail(ErrorKind::singular_point, patch == Patch::north ? "north framing undefined at theta = pi"
                                                          : "south framing undefined at theta = 0");
  const cplx w(y.x(), y.y());
  const double a = std::sqrt(q / (2.0 * r));
  const double m = 1.0 / std::sqrt(2.0 * r * q);
  const cplx b = w * m;
  Framing out;
  if (patch == Patch::north)
    out.f << a, -std::conj(b), b, a;
  else
    out.f << std::conj(b), -a, a, b;
  for (int i = 0; i < 3; ++i) {
    const double dr = y(i) / r;
    const double dq = dr + (i == 2 ? s : 0.0);
    const double da = (dq / (2.0 * r) - q * dr / (2.0 * r * r)) / (2.0 * a);
    const cplx dw = i == 0 ? cplx(1, 0) : (i == 1 ? cplx(0, 1) : cplx(0, 0));
    const cplx db = dw * m - w * m * m * m * (dr * q + r * dq);
    if (patch == Patch::north)
      out.df[i] << da, -std::conj(db), db, da;
    else
      out.df[i] << std::conj(db), -da, da, db;
  }
  return out;
}

inline Mat2 hedgehog_framing(const Vec3& y, Patch patch = Patch::north) {
  return hedgehog_framing_full(y, patch).f;
}

/// Scalar 1-form of the unit Dirac potential (1/2)(+-1 - cos theta) d phi.
inline Vec3 dirac_potential(const Vec3& y, Patch patch) {
  const double r = y.norm();
  const double s = patch == Patch::north ? 1.0 : -1.0;
  const double q = r + s * y.z();
  if (r == 0.0 || q <= 1e-14 * r) fail(ErrorKind::singular_point, "Dirac potential evaluated on its string");
  return s * Vec3(-y.y(), y.x(), 0.0) / (2.0 * r * q);
}

/// Dirac monopole of charge gamma (a Cartan element) at p.
struct DiracMonopole {
  Vec3 p;
  Mat gamma;

  std::array<Mat, 3> potential(const Vec3& x, Patch patch) const {
    Vec3 c = dirac_potential(x - p, patch);
    return {c.x() * gamma, c.y() * gamma, c.z() * gamma};
  }
  Mat higgs(const Vec3& x) const {
    double r = (x - p).norm();
    if (r == 0.0) fail(ErrorKind::singular_point, "Dirac monopole evaluated at its centre");
    return -gamma / (2.0 * r);
  }
  const Mat& flux() const { return gamma; }
};

inline DiracMonopole dirac_monopole(const Vec3& p, const Mat& gamma) { return DiracMonopole{p, gamma}; }

// ---------------------------------------------------------------- calorons

/// A^+ = A_BPS + eps Phi_BPS dt with v = omega'/eps, at y relative to the centre.
inline Su2Field bps_plus_field(double v, double eps, const Vec3& y) {
  BpsProfile p = bps_profile(v, y.norm());
  Su2Field out;
  for (int i = 0; i < 3; ++i) out.a[i] = p.kappa * pauli::dot_itau(Vec3::Unit(i).cross(y));
  out.a[3] = eps * p.eta * pauli::dot_itau(y);
  return out;
}

inline Su2Field gauge_transform(const Su2Field& in, const Framing& g) {
  Su2Field out;
  Mat2 gi = g.f.adjoint();
  for (int i = 0; i < 3; ++i) out.a[i] = gi * in.a[i] * g.f + gi * g.df[i];
  out.a[3] = gi * in.a[3] * g.f;
  return out;
}

/// A^+ in the abelian gauge of the given patch.
inline Su2Field bps_plus_framed(double v, double eps, const Vec3& y, Patch patch) {
  return gauge_transform(bps_plus_field(v, eps, y), hedgehog_framing_full(y, patch));
}

/// Model at infinity A_infty(omega2, k) for k = +-1 in the given patch.
inline Su2Field su2_model(double omega2, int k, double eps, const Vec3& y, Patch patch) {
  Vec3 c = k * dirac_potential(y, patch);
  Su2Field out;
  for (int i = 0; i < 3; ++i) out.a[i] = c(i) * pauli::itau(2);
  out.a[3] = (omega2 - k * eps / (2.0 * y.norm())) * pauli::itau(2);
  return out;
}

/// exp(-t/2 Phi_hat) with Phi_hat interpolated radially to zero inside core_radius.
class RotationGauge {
 public:
  explicit RotationGauge(double core_radius) : rc_(core_radius) {
    require(core_radius > 0.0, ErrorKind::invalid_input, "core radius must be positive");
  }
  double core_radius() const { return rc_; }

  double profile(double r) const { return smoothstep(r / rc_); }

  Mat2 g(const Vec3& y, double t) const {
    double r = y.norm();
    if (r == 0.0) return Mat2::Identity();
    double beta = 0.5 * t * profile(r);
    return std::cos(beta) * Mat2::Identity() - std::sin(beta) * pauli::dot_itau(y / r);
  }

  /// g^{-1} dg along dx1, dx2, dx3, dt.
  std::array<Mat2, 4> maurer_cartan(const Vec3& y, double t) const {
    std::array<Mat2, 4> out;
    double r = y.norm();
    if (r == 0.0) {
      for (auto& m : out) m.setZero();
      return out;
    }
    Vec3 n = y / r;
    double s = profile(r), ds = smoothstep_deriv(r / rc_) / rc_;
    double beta = 0.5 * t * s, cb = std::cos(beta), sb = std::sin(beta);
    Mat2 N = pauli::dot_itau(n);
    Mat2 gi = cb * Mat2::Identity() + sb * N;
    for (int i = 0; i < 3; ++i) {
      double dbeta = 0.5 * t * ds * n(i);
      Mat2 dN = pauli::dot_itau((Vec3::Unit(i) - n(i) * n) / r);
      Mat2 dg = -sb * dbeta * Mat2::Identity() - cb * dbeta * N - sb * dN;
      out[i] = gi * dg;
    }
    out[3] = -0.5 * s * N;
    return out;
  }

 private:
  double rc_;
};

inline RotationGauge rotation_gauge(double omega, double eps, double core_radius) {
  require(omega > 0.0 && omega < 0.5, ErrorKind::invalid_input, "holonomy parameter must lie in (0, 1/2)");
  require(eps > 0.0, ErrorKind::invalid_input, "epsilon must be positive");
  return RotationGauge(core_radius);
}

/// Mass of the BPS monopole inside the rotated caloron with parameter omega.
inline double rotated_inner_mass(double omega, double eps) { return (0.5 - omega) / eps; }

/// A^- = g^* A^+ on R^3 x R (t is not reduced modulo 2 pi).
inline Su2Field rotated_field(double omega, double eps, const RotationGauge& g, const Vec3& y, double t) {
  Su2Field p = bps_plus_field(rotated_inner_mass(omega, eps), eps, y);
  Mat2 gm = g.g(y, t), gi = gm.adjoint();
  auto mc = g.maurer_cartan(y, t);
  Su2Field out;
  for (int k = 0; k < 4; ++k) out.a[k] = gi * p.a[k] * gm + mc[k];
  return out;
}

/// A^- in the abelian gauge of the given patch: the framed A^+ followed by
/// the Weyl flip exp(-t/2 i tau_3) i tau_2.
inline Su2Field rotated_framed(double omega, double eps, const Vec3& y, double t, Patch patch) {
  Su2Field p = bps_plus_framed(rotated_inner_mass(omega, eps), eps, y, patch);
  const cplx e = std::exp(-0.5 * I * t);
  Mat2 u, ui;
  u << 0, e, -std::conj(e), 0;
  ui = u.adjoint();
  Su2Field out;
  for (int k = 0; k < 4; ++k) out.a[k] = ui * p.a[k] * u;
  out.a[3] += 0.5 * pauli::itau(2);
  return out;
}

// ---------------------------------------------------------------- samplers

inline Mat to_mat(const Mat2& m) { return Mat(m); }

inline FieldSample to_sample(const Su2Field& f) {
  FieldSample s;
  for (int k = 0; k < 4; ++k) s.a[k] = f.a[k];
  return s;
}

class BpsCaloronSampler : public ConnectionSampler {
 public:
  BpsCaloronSampler(double omega, double eps, const Vec3& center) : w_(omega), eps_(eps), c_(center) {
    require(omega > 0.0 && omega < 0.5, ErrorKind::invalid_input, "holonomy parameter must lie in (0, 1/2)");
    require(eps > 0.0, ErrorKind::invalid_input, "epsilon must be positive");
  }
  int dim() const override { return 2; }
  double epsilon() const override { return eps_; }
  double mass() const { return w_ / eps_; }
  FieldSample sample(const Vec3& x, double, const Chart&) const override {
    return to_sample(bps_plus_field(mass(), eps_, x - c_));
  }
  std::vector<QuadratureCenter> centers() const override { return {{c_, 1.0 / mass(), 0.0, 0.0}}; }
  Mat asymptotic_charge() const override { return pauli::itau(2); }

 private:
  double w_, eps_;
  Vec3 c_;
};

class RotatedBpsSampler : public ConnectionSampler {
 public:
  RotatedBpsSampler(double omega, double eps, const Vec3& center, double core_radius)
      : w_(omega), eps_(eps), c_(center), g_(core_radius) {
    require(omega > 0.0 && omega < 0.5, ErrorKind::invalid_input, "holonomy parameter must lie in (0, 1/2)");
    require(eps > 0.0, ErrorKind::invalid_input, "epsilon must be positive");
  }
  int dim() const override { return 2; }
  double epsilon() const override { return eps_; }
  bool static_in_t() const override { return false; }
  const RotationGauge& gauge() const { return g_; }
  FieldSample sample(const Vec3& x, double t, const Chart&) const override {
    return to_sample(rotated_field(w_, eps_, g_, x - c_, t));
  }
  std::vector<QuadratureCenter> centers() const override {
    return {{c_, 1.0 / rotated_inner_mass(w_, eps_), 0.0, 0.0}};
  }
  Mat asymptotic_charge() const override { return -pauli::itau(2); }

 private:
  double w_, eps_;
  Vec3 c_;
  RotationGauge g_;
};

/// Either fundamental SU(2) caloron in its abelian gauge, two patches.
class FramedSu2Sampler : public ConnectionSampler {
 public:
  FramedSu2Sampler(int charge, double omega, double eps, const Vec3& center)
      : k_(charge), w_(omega), eps_(eps), c_(center) {
    require(charge == 1 || charge == -1, ErrorKind::invalid_input, "fundamental charge is +-1");
    require(omega > 0.0 && omega < 0.5, ErrorKind::invalid_input, "holonomy parameter must lie in (0, 1/2)");
  }
  int dim() const override { return 2; }
  double epsilon() const override { return eps_; }
  bool static_in_t() const override { return k_ == 1; }
  Chart chart_at(const Vec3& x) const override {
    Chart c;
    if (patch_for(x - c_) == Patch::south) c.south = 1;
    return c;
  }
  FieldSample sample(const Vec3& x, double t, const Chart& c) const override {
    Patch p = (c.south & 1) ? Patch::south : Patch::north;
    Vec3 y = x - c_;
    return to_sample(k_ == 1 ? bps_plus_framed(w_ / eps_, eps_, y, p) : rotated_framed(w_, eps_, y, t, p));
  }
  std::vector<QuadratureCenter> centers() const override {
    double v = k_ == 1 ? w_ / eps_ : rotated_inner_mass(w_, eps_);
    return {{c_, 1.0 / v, 0.0, 0.0}};
  }
  Mat asymptotic_charge() const override { return k_ * pauli::itau(2); }

 private:
  int k_;
  double w_, eps_;
  Vec3 c_;
};

inline std::shared_ptr<BpsCaloronSampler> bps_caloron_plus(double omega, double eps,
                                                           const Vec3& center = Vec3::Zero()) {
  return std::make_shared<BpsCaloronSampler>(omega, eps, center);
}

/// Rotated caloron with the default interpolation core 1/(2 v).
inline std::shared_ptr<RotatedBpsSampler> rotated_bps(double omega, double eps, const Vec3& center = Vec3::Zero()) {
  require(omega > 0.0 && omega < 0.5, ErrorKind::invalid_input, "holonomy parameter must lie in (0, 1/2)");
  require(eps > 0.0, ErrorKind::invalid_input, "epsilon must be positive");
  return std::make_shared<RotatedBpsSampler>(omega, eps, center, 0.5 / rotated_inner_mass(omega, eps));
}

}  // namespace caloron
