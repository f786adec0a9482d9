#pragma once

// Fundamental SU(n) calorons, the singular abelian background and the glued
// approximate caloron.

#include "caloron/errors.hpp"
#include "caloron/linalg.hpp"
#include "caloron/numerics.hpp"
#include "caloron/rootsys.hpp"
#include "caloron/sampler.hpp"
#include "caloron/su2_blocks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace caloron {

struct ConstituentSpec {
  int mu = 1;
  Vec3 position = Vec3::Zero();
  double phase = 0.0;
};

struct CaloronSpec {
  double epsilon = 0.1;
  Series series = Series::A;
  int rank = 1;
  std::vector<double> omega;  // ambient coordinates of the Cartan element
  std::vector<ConstituentSpec> constituents;
  std::optional<double> gluing_c;  // default: half the slowest BPS decay rate
};

// ---------------------------------------------------------------- gluing radius

/// Solution of R = eps^-1 exp(-c R / eps).
inline double gluing_radius(double eps, double c) {
  require(eps > 0.0 && c > 0.0, ErrorKind::invalid_input, "epsilon and c must be positive");
  return eps * lambert_w0(c / (eps * eps)) / c;
}

/// eps times the exponential decay rate of a_BPS for constituent mu.
inline double bps_decay_constant(const RootDatum& d, int mu, const std::vector<double>& omega) {
  double a = pair(d.root(mu), omega);
  return mu == 0 ? 1.0 + a : a;
}

// ---------------------------------------------------------------- helpers on Cartan vectors

inline std::vector<double> axpy(const std::vector<double>& x, double a, const std::vector<double>& y) {
  std::vector<double> out(x);
  for (std::size_t k = 0; k < x.size(); ++k) out[k] += a * y[k];
  return out;
}

inline Mat cartan_matrix(const std::vector<double>& xi) { return diag_i(xi); }

/// Cartan vector of a diagonal su(n) element.
inline std::vector<double> cartan_vector(const Mat& m) {
  std::vector<double> out;
  for (Eigen::Index k = 0; k < m.rows(); ++k) out.push_back(m(k, k).imag());
  return out;
}

// ---------------------------------------------------------------- fundamental calorons

/// Data of the fundamental caloron A_mu(omega) embedded in SU(n).
struct FundamentalData {
  int mu = 1;
  int n = 2;
  int row_i = 0, row_j = 1;
  double eps = 0.1;
  double omega2 = 0.25;              // su(2) holonomy parameter
  double inner_mass = 0;             // mass of the BPS monopole used
  std::vector<double> omega_prime;   // component in ker alpha_mu
  std::vector<double> coroot;        // alpha_mu^v
  double phase = 0.0;
  std::optional<RotationGauge> rotation;

  Mat embed(const Mat2& m) const { return embed_block(m, n, row_i, row_j); }

  /// Smooth gauge around the centre; y relative to the centre.
  FieldSample core(const Vec3& y, double t) const {
    Su2Field f = mu == 0 ? rotated_field(omega2, eps, *rotation, y, t) : bps_plus_field(inner_mass, eps, y);
    FieldSample s;
    for (int k = 0; k < 4; ++k) s.a[k] = embed(f.a[k]);
    s.a[3] += cartan_matrix(omega_prime);
    return s;
  }

  Su2Field framed_su2(const Vec3& y, double t, Patch p) const {
    Su2Field f = mu == 0 ? rotated_framed(omega2, eps, y, t, p) : bps_plus_framed(inner_mass, eps, y, p);
    if (phase != 0.0) {
      const cplx e = std::exp(-I * phase);
      for (auto& m : f.a) {
        m(0, 1) *= e;
        m(1, 0) *= std::conj(e);
      }
    }
    return f;
  }

  /// Abelian gauge; equals A_infty(omega, alpha_mu^v) + psi^* a_BPS.
  FieldSample framed(const Vec3& y, double t, Patch p) const {
    Su2Field f = framed_su2(y, t, p);
    FieldSample s;
    for (int k = 0; k < 4; ++k) s.a[k] = embed(f.a[k]);
    s.a[3] += cartan_matrix(omega_prime);
    return s;
  }

  /// psi^* a_BPS alone.
  FieldSample a_bps(const Vec3& y, double t, Patch p) const {
    Su2Field f = framed_su2(y, t, p);
    Su2Field m = su2_model(omega2, mu == 0 ? -1 : 1, eps, y, p);
    FieldSample s;
    for (int k = 0; k < 4; ++k) s.a[k] = embed(Mat2(f.a[k] - m.a[k]));
    return s;
  }
};

inline FundamentalData fundamental_data(const RootDatum& d, int mu, const std::vector<double>& omega, double eps,
                                        double phase = 0.0) {
  require_type_a(d, "field construction");
  require(eps > 0.0, ErrorKind::invalid_input, "epsilon must be positive");
  AlcoveReport ar = alcove_check(d, omega);
  if (!ar.inside) fail(ErrorKind::not_in_alcove, "holonomy parameter is not in the open alcove");
  Su2Embedding e = su2_embedding(d, mu);
  FundamentalData f;
  f.mu = mu;
  f.n = d.rank + 1;
  f.row_i = e.row_i;
  f.row_j = e.row_j;
  f.eps = eps;
  f.phase = phase;
  f.coroot = to_double(d.coroot(mu));
  const double a = pair(d.root(mu), omega);
  f.omega_prime = axpy(omega, -0.5 * a, f.coroot);
  if (mu == 0) {
    f.omega2 = -0.5 * a;
    f.inner_mass = rotated_inner_mass(f.omega2, eps);
    f.rotation.emplace(0.5 / f.inner_mass);
  } else {
    f.omega2 = 0.5 * a;
    f.inner_mass = f.omega2 / eps;
  }
  return f;
}

/// A_mu(omega) at a point, in its smooth gauge or (framed) in the abelian gauge.
class FundamentalSampler : public ConnectionSampler {
 public:
  FundamentalSampler(FundamentalData f, const Vec3& center, bool framed)
      : f_(std::move(f)), c_(center), framed_(framed) {}
  int dim() const override { return f_.n; }
  double epsilon() const override { return f_.eps; }
  bool static_in_t() const override { return f_.mu != 0; }
  Chart chart_at(const Vec3& x) const override {
    Chart c;
    if (framed_ && patch_for(x - c_) == Patch::south) c.south = 1;
    return c;
  }
  FieldSample sample(const Vec3& x, double t, const Chart& c) const override {
    Vec3 y = x - c_;
    if (!framed_) return f_.core(y, t);
    return f_.framed(y, t, (c.south & 1) ? Patch::south : Patch::north);
  }
  std::vector<QuadratureCenter> centers() const override { return {{c_, 1.0 / f_.inner_mass, 0.0, 0.0}}; }
  Mat asymptotic_charge() const override { return cartan_matrix(f_.coroot); }
  const FundamentalData& data() const { return f_; }

 private:
  FundamentalData f_;
  Vec3 c_;
  bool framed_;
};

inline std::shared_ptr<FundamentalSampler> fundamental_caloron(const RootDatum& d, int mu,
                                                               const std::vector<double>& omega, double eps,
                                                               const Vec3& center = Vec3::Zero(),
                                                               bool framed = false) {
  return std::make_shared<FundamentalSampler>(fundamental_data(d, mu, omega, eps), center, framed);
}

/// Cartan vector of eps Phi in the abelian gauge; lies on the segment from
/// omega to the facet alpha_mu = 0 (alpha_0 = -1 for mu = 0).
inline std::vector<double> framed_higgs_cartan(const FundamentalData& f, const Vec3& y) {
  return cartan_vector(f.framed(y, 0.0, patch_for(y)).a[3]);
}

// ---------------------------------------------------------------- validated spec

struct Assembly {
  CaloronSpec spec;
  RootDatum datum;
  std::vector<long> charge;       // coroot coefficients of gamma_m
  std::vector<long> counts;       // n_mu, mu = 0..rk
  double c = 1.0;
  double R = std::numeric_limits<double>::infinity();
  double d_min = std::numeric_limits<double>::infinity();
  double d_max = 0.0;
  std::vector<std::vector<double>> local_omega;  // omega^i_mu per constituent
  std::vector<FundamentalData> blocks;
};

inline std::vector<double> local_holonomy_shift(const RootDatum& d, const CaloronSpec& s, std::size_t k) {
  std::vector<double> w = s.omega;
  for (std::size_t j = 0; j < s.constituents.size(); ++j) {
    if (j == k) continue;
    double dist = (s.constituents[j].position - s.constituents[k].position).norm();
    if (dist == 0.0) fail(ErrorKind::invalid_input, "two constituents share a position");
    w = axpy(w, -s.epsilon / (2.0 * dist), to_double(d.coroot(s.constituents[j].mu)));
  }
  return w;
}

inline std::vector<double> local_holonomy_shift(const CaloronSpec& s, std::size_t k) {
  return local_holonomy_shift(build_root_datum(s.series, s.rank), s, k);
}

inline Assembly assemble(const CaloronSpec& s, bool require_gluing = true) {
  Assembly a;
  a.spec = s;
  a.datum = build_root_datum(s.series, s.rank);
  const RootDatum& d = a.datum;
  require(s.epsilon > 0.0 && std::isfinite(s.epsilon), ErrorKind::invalid_input, "epsilon must be positive");
  AlcoveReport ar = alcove_check(d, s.omega);
  if (!ar.in_h) fail(ErrorKind::invalid_input, "omega is not in the Cartan subalgebra");
  if (!ar.inside) fail(ErrorKind::not_in_alcove, "omega is not in the open alcove");

  a.counts.assign(d.rank + 1, 0);
  for (auto& c : s.constituents) {
    require(c.mu >= 0 && c.mu <= d.rank, ErrorKind::invalid_input, "constituent root index out of range");
    a.counts[c.mu] += 1;
  }
  a.charge = charge_of(d, a.counts);

  for (std::size_t i = 0; i < s.constituents.size(); ++i) {
    a.d_max = std::max(a.d_max, s.constituents[i].position.norm());
    for (std::size_t j = i + 1; j < s.constituents.size(); ++j)
      a.d_min = std::min(a.d_min, (s.constituents[i].position - s.constituents[j].position).norm());
  }
  if (a.d_min == 0.0) fail(ErrorKind::invalid_input, "two constituents share a position");

  if (s.gluing_c) {
    a.c = *s.gluing_c;
  } else if (!s.constituents.empty()) {
    a.c = std::numeric_limits<double>::infinity();
    for (auto& c : s.constituents) a.c = std::min(a.c, 0.5 * bps_decay_constant(d, c.mu, s.omega));
  }
  require(a.c > 0.0, ErrorKind::invalid_input, "gluing constant must be positive");
  a.R = gluing_radius(s.epsilon, a.c);
  if (require_gluing && s.constituents.size() > 1 && a.R >= 0.5 * a.d_min)
    fail(ErrorKind::gluing_infeasible, "gluing radius " + std::to_string(a.R) + " exceeds half the minimal separation " +
                                           std::to_string(0.5 * a.d_min) + "; decrease epsilon");

  for (std::size_t k = 0; k < s.constituents.size(); ++k) {
    a.local_omega.push_back(local_holonomy_shift(d, s, k));
    if (require_gluing) {
      if (!alcove_check(d, a.local_omega.back()).inside)
        fail(ErrorKind::not_in_alcove, "local holonomy of constituent " + std::to_string(k) +
                                           " leaves the alcove; decrease epsilon");
      a.blocks.push_back(
          fundamental_data(d, s.constituents[k].mu, a.local_omega.back(), s.epsilon, s.constituents[k].phase));
    }
  }
  return a;
}

// ---------------------------------------------------------------- singular caloron

namespace detail {

struct AbelianBackground {
  int n = 2;
  double eps = 0.1;
  std::vector<double> omega;
  std::vector<Vec3> points;
  std::vector<std::vector<double>> coroots;

  Chart chart_at(const Vec3& x) const {
    Chart c;
    for (std::size_t k = 0; k < points.size(); ++k)
      if (x.z() < points[k].z()) c.south |= (std::uint64_t{1} << k);
    return c;
  }

  static Patch patch(const Chart& c, std::size_t k) {
    return (c.south >> k) & 1 ? Patch::south : Patch::north;
  }

  /// eps Phi_sing as a Cartan vector.
  std::vector<double> higgs(const Vec3& x) const {
    std::vector<double> at = omega;
    for (std::size_t k = 0; k < points.size(); ++k) at = axpy(at, -eps / (2.0 * (x - points[k]).norm()), coroots[k]);
    return at;
  }

  /// A_sing, optionally leaving out constituent `skip`.
  FieldSample eval(const Vec3& x, const Chart& c, long skip = -1) const {
    std::array<std::vector<double>, 3> ai;
    for (auto& v : ai) v.assign(n, 0.0);
    std::vector<double> at = omega;
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (static_cast<long>(k) == skip) continue;
      Vec3 y = x - points[k];
      Vec3 pot = dirac_potential(y, patch(c, k));
      double r = y.norm();
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < 3; ++i) ai[i][j] += pot(i) * coroots[k][j];
        at[j] -= eps * coroots[k][j] / (2.0 * r);
      }
    }
    FieldSample s;
    for (int i = 0; i < 3; ++i) s.a[i] = diag_i(ai[i]);
    s.a[3] = diag_i(at);
    return s;
  }
};

inline AbelianBackground background_of(const Assembly& a) {
  AbelianBackground b;
  b.n = a.datum.rank + 1;
  b.eps = a.spec.epsilon;
  b.omega = a.spec.omega;
  for (auto& c : a.spec.constituents) {
    b.points.push_back(c.position);
    b.coroots.push_back(to_double(a.datum.coroot(c.mu)));
  }
  return b;
}

inline Mat total_charge(const Assembly& a) {
  std::vector<double> g(a.datum.rank + 1, 0.0);
  for (auto& c : a.spec.constituents) g = axpy(g, 1.0, to_double(a.datum.coroot(c.mu)));
  return diag_i(g);
}

}  // namespace detail

/// Sum of Dirac monopoles on the flat background omega.
class SingularCaloronSampler : public ConnectionSampler {
 public:
  explicit SingularCaloronSampler(Assembly a) : a_(std::move(a)), bg_(detail::background_of(a_)) {}
  int dim() const override { return bg_.n; }
  double epsilon() const override { return bg_.eps; }
  Chart chart_at(const Vec3& x) const override { return bg_.chart_at(x); }
  FieldSample sample(const Vec3& x, double, const Chart& c) const override { return bg_.eval(x, c); }
  std::vector<QuadratureCenter> centers() const override {
    std::vector<QuadratureCenter> out;
    for (auto& p : bg_.points) out.push_back({p, bg_.eps, 0.0, 0.0});
    return out;
  }
  Mat asymptotic_charge() const override { return detail::total_charge(a_); }
  const Assembly& assembly() const { return a_; }

  /// eps Phi_sing as a Cartan vector.
  std::vector<double> higgs_cartan(const Vec3& x) const { return bg_.higgs(x); }

 private:
  Assembly a_;
  detail::AbelianBackground bg_;
};

inline std::shared_ptr<SingularCaloronSampler> singular_caloron(const CaloronSpec& s) {
  return std::make_shared<SingularCaloronSampler>(assemble(s, false));
}

// ---------------------------------------------------------------- approximate caloron

struct AnnulusTerms {
  int constituent = -1;
  double r = 0;
  double a_bps = 0;    // |psi^* a_BPS|
  double a_local = 0;  // |a^i_mu|
};

class ApproximateCaloronSampler : public ConnectionSampler {
 public:
  explicit ApproximateCaloronSampler(Assembly a) : a_(std::move(a)), bg_(detail::background_of(a_)) {
    for (auto& b : a_.blocks)
      if (b.mu == 0) static_ = false;
  }

  int dim() const override { return bg_.n; }
  double epsilon() const override { return bg_.eps; }
  bool static_in_t() const override { return static_; }
  const Assembly& assembly() const { return a_; }
  double gluing_radius() const { return a_.R; }

  /// Constituent whose gluing ball contains x, or -1.
  int nearest_within(const Vec3& x, double radius) const {
    for (std::size_t k = 0; k < bg_.points.size(); ++k)
      if ((x - bg_.points[k]).norm() < radius) return static_cast<int>(k);
    return -1;
  }

  Chart chart_at(const Vec3& x) const override {
    int k = nearest_within(x, 0.25 * a_.R);
    if (k >= 0) return Chart{k, 0};
    return bg_.chart_at(x);
  }

  FieldSample sample(const Vec3& x, double t, const Chart& c) const override {
    if (c.core >= 0) return a_.blocks[c.core].core(x - bg_.points[c.core], t);
    FieldSample s = bg_.eval(x, c);
    int k = nearest_within(x, a_.R);
    if (k < 0) return s;
    Vec3 y = x - bg_.points[k];
    double chi = 1.0 - smoothstep(2.0 * y.norm() / a_.R - 1.0);
    if (chi == 0.0) return s;
    FieldSample f = block_in_background_gauge(k, y, t, c);
    for (int m = 0; m < 4; ++m) s.a[m] = (1.0 - chi) * s.a[m] + chi * f.a[m];
    return s;
  }

  /// Framed block k gauge transformed by exp(C.y), C the constant potential of
  /// the other constituents at p_k, so that it differs from A_sing by O(r).
  FieldSample block_in_background_gauge(int k, const Vec3& y, double t, const Chart& c) const {
    FieldSample f = a_.blocks[k].framed(y, t, detail::AbelianBackground::patch(c, k));
    FieldSample at_center = bg_.eval(bg_.points[k], c, k);
    std::vector<double> theta(bg_.n, 0.0);
    for (int m = 0; m < 3; ++m) theta = axpy(theta, y(m), cartan_vector(at_center.a[m]));
    Eigen::VectorXcd g(bg_.n);
    for (int j = 0; j < bg_.n; ++j) g(j) = std::exp(I * theta[j]);
    for (int m = 0; m < 4; ++m) {
      Mat conj = g.conjugate().asDiagonal() * f.a[m] * g.asDiagonal();
      f.a[m] = m < 3 ? Mat(conj + at_center.a[m]) : conj;
    }
    return f;
  }

  std::vector<QuadratureCenter> centers() const override {
    std::vector<QuadratureCenter> out;
    for (std::size_t k = 0; k < bg_.points.size(); ++k)
      out.push_back({bg_.points[k], 1.0 / a_.blocks[k].inner_mass, 0.5 * a_.R, a_.R});
    return out;
  }
  Mat asymptotic_charge() const override { return detail::total_charge(a_); }

  /// Sizes entering the pointwise bound on F^+ over the annulus.
  AnnulusTerms annulus_terms(const Vec3& x, double t) const {
    AnnulusTerms out;
    int k = nearest_within(x, a_.R);
    if (k < 0) return out;
    Chart c = bg_.chart_at(x);
    Vec3 y = x - bg_.points[k];
    Patch p = detail::AbelianBackground::patch(c, k);
    FieldSample ab = a_.blocks[k].a_bps(y, t, p);
    // a^i = A_sing - A_infty(omega^i, alpha^v) = background without constituent k, shifted
    FieldSample al = bg_.eval(x, c, k);
    al.a[3] -= cartan_matrix(a_.local_omega[k]);
    // the constant part of the spatial potential at the centre is pure gauge
    FieldSample at_center = bg_.eval(bg_.points[k], c, k);
    for (int m = 0; m < 3; ++m) al.a[m] -= at_center.a[m];
    auto norm4 = [&](const FieldSample& f) {
      double s = 0;
      for (int m = 0; m < 3; ++m) s += knorm2(f.a[m]);
      return std::sqrt(s + knorm2(f.a[3]) / (bg_.eps * bg_.eps));
    };
    out.constituent = k;
    out.r = y.norm();
    out.a_bps = norm4(ab);
    out.a_local = norm4(al);
    return out;
  }

 private:
  Assembly a_;
  detail::AbelianBackground bg_;
  bool static_ = true;
};

inline std::shared_ptr<ApproximateCaloronSampler> approximate_caloron(const CaloronSpec& s) {
  return std::make_shared<ApproximateCaloronSampler>(assemble(s, true));
}

/// Unit vector along which the Cartan-valued dipole moment of the constituents
/// is smallest; the far-field holonomy there is monopole-like to O(|x|^-3).
inline Vec3 far_field_direction(const Assembly& a) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  for (int j = 0; j <= a.datum.rank; ++j) {
    Vec3 dj = Vec3::Zero();
    for (auto& c : a.spec.constituents) dj += to_double(a.datum.coroot(c.mu))[j] * c.position;
    m += dj * dj.transpose();
  }
  if (m.norm() == 0.0) return Vec3::UnitZ();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
  return es.eigenvectors().col(0).normalized();
}

/// Holonomy eigenphases of the model A_infty(omega, gamma_m) at distance r.
inline std::vector<double> model_phases(const Assembly& a, double r) {
  std::vector<double> xi = a.spec.omega;
  for (auto& c : a.spec.constituents) xi = axpy(xi, -a.spec.epsilon / (2.0 * r), to_double(a.datum.coroot(c.mu)));
  std::vector<double> ph;
  for (double x : xi) ph.push_back(wrap_phase(2.0 * pi * x));
  std::sort(ph.begin(), ph.end());
  return ph;
}

// ---------------------------------------------------------------- alcove containment

struct Containment {
  double sigma = 0;       // smallest alcove margin of eps Phi_sing over the samples
  double c_factor = 0;    // samples satisfy r >= c_factor * eps
  std::size_t samples = 0;
};

/// Radius factor c with (1/2c)|alpha_nu(alpha_mu^v)| <= sigma_infty / 2.
inline double containment_factor(const RootDatum& d, const std::vector<double>& omega) {
  int cmax = 0;
  for (auto& row : d.extended_cartan)
    for (int v : row) cmax = std::max(cmax, std::abs(v));
  return cmax / alcove_check(d, omega).min_margin;
}

inline Containment alcove_containment(const CaloronSpec& s, int refine = 0, std::optional<double> c_factor = {}) {
  SingularCaloronSampler sing(assemble(s, false));
  const RootDatum& d = sing.assembly().datum;
  Containment out;
  out.c_factor = c_factor ? *c_factor : containment_factor(d, s.omega);
  const double r0 = out.c_factor * s.epsilon;
  double sigma = 1e300;
  auto probe = [&](const Vec3& x) {
    for (auto& c : s.constituents)
      if ((x - c.position).norm() < r0 * (1.0 - 1e-12)) return;
    sigma = std::min(sigma, alcove_check(d, sing.higgs_cartan(x)).min_margin);
    ++out.samples;
  };
  // box around the constituents
  Vec3 lo = Vec3::Constant(1e300), hi = Vec3::Constant(-1e300);
  for (auto& c : s.constituents) {
    lo = lo.cwiseMin(c.position);
    hi = hi.cwiseMax(c.position);
  }
  if (s.constituents.empty()) lo = hi = Vec3::Zero();
  lo.array() -= 2.0;
  hi.array() += 2.0;
  const int nb = 12 << refine;
  for (int i = 0; i <= nb; ++i)
    for (int j = 0; j <= nb; ++j)
      for (int k = 0; k <= nb; ++k)
        probe(lo + Vec3(i * (hi.x() - lo.x()), j * (hi.y() - lo.y()), k * (hi.z() - lo.z())) / nb);
  // shells where the minimum is attained
  const int nt = 8 << refine, np = 16 << refine;
  const Rule& gt = gauss_legendre(nt);
  for (auto& c : s.constituents)
    for (double f : {1.0, 1.25, 1.5, 2.0, 3.0, 5.0})
      for (int it = 0; it < nt; ++it)
        for (int ip = 0; ip < np; ++ip) {
          double ct = gt.x[it], st = std::sqrt(1 - ct * ct), ph = 2 * pi * (ip + 0.5) / np;
          probe(c.position + f * r0 * Vec3(st * std::cos(ph), st * std::sin(ph), ct));
        }
  out.sigma = sigma;
  return out;
}

}  // namespace caloron
