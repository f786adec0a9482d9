#pragma once

// Curvature, self-dual splitting, integrals and holonomies of sampled
// connections on R^3 x S^1 with metric g = g_R3 + eps^2 dt^2.

#include "caloron/errors.hpp"
#include "caloron/linalg.hpp"
#include "caloron/numerics.hpp"
#include "caloron/sampler.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace caloron {

/// Curvature in the orthonormal frame e0 = eps dt, e_a = dx^a:
/// E_a = F(e0, e_a), B_a = F(e_b, e_c) with (a,b,c) cyclic.
struct Curvature {
  std::array<Mat, 3> E, B;

  /// Coefficients on the self-dual forms e0^e_a + e_b^e_c (vanish on calorons).
  std::array<Mat, 3> plus() const {
    std::array<Mat, 3> p;
    for (int a = 0; a < 3; ++a) p[a] = 0.5 * (E[a] + B[a]);
    return p;
  }
  std::array<Mat, 3> minus() const {
    std::array<Mat, 3> m;
    for (int a = 0; a < 3; ++a) m[a] = 0.5 * (B[a] - E[a]);
    return m;
  }
  double norm2() const {
    double s = 0;
    for (int a = 0; a < 3; ++a) s += knorm2(E[a]) + knorm2(B[a]);
    return s;
  }
  // the self-dual forms have norm^2 2
  double plus_norm2() const {
    double s = 0;
    for (int a = 0; a < 3; ++a) s += 0.5 * knorm2(Mat(E[a] + B[a]));
    return s;
  }
  double minus_norm2() const {
    double s = 0;
    for (int a = 0; a < 3; ++a) s += 0.5 * knorm2(Mat(B[a] - E[a]));
    return s;
  }
  /// Density of -Tr(F^F) for the orientation in which calorons count positively.
  double topological_density() const {
    double s = 0;
    for (int a = 0; a < 3; ++a) s += 2.0 * (E[a] * B[a]).trace().real();
    return s;
  }
};

/// From coordinate components F_ta = F(d_t, d_a) and F_bc, (a,b,c) cyclic.
inline Curvature curvature_from_components(const std::array<Mat, 3>& f_ta, const std::array<Mat, 3>& f_bc,
                                           double eps) {
  Curvature c;
  for (int a = 0; a < 3; ++a) {
    c.E[a] = f_ta[a] / eps;
    c.B[a] = f_bc[a];
  }
  return c;
}

struct SdSplit {
  Curvature plus, minus;
};

inline SdSplit sd_split(const Curvature& f) {
  SdSplit s;
  auto p = f.plus();
  auto m = f.minus();
  for (int a = 0; a < 3; ++a) {
    s.plus.E[a] = p[a];
    s.plus.B[a] = p[a];
    s.minus.E[a] = -m[a];
    s.minus.B[a] = m[a];
  }
  return s;
}

/// Pointwise inner product of two curvature 2-forms.
inline double inner(const Curvature& x, const Curvature& y) {
  double s = 0;
  for (int a = 0; a < 3; ++a) s += killing(x.E[a], y.E[a]) + killing(x.B[a], y.B[a]);
  return s;
}

struct StepSizes {
  double rel = 1e-3;  // spatial step relative to the local length scale
  double t = 2e-3;
};

/// Local length scale used to size finite-difference stencils.
inline double local_scale(const ConnectionSampler& s, const Vec3& x) {
  double l = 1e300;
  for (auto& c : s.centers()) l = std::min(l, std::max((x - c.position).norm(), c.core_scale));
  return l == 1e300 ? 1.0 : l;
}

inline Curvature curvature_at(const ConnectionSampler& s, const Vec3& x, double t, double h, double ht) {
  const Chart chart = s.chart_at(x);
  const FieldSample c = s.sample(x, t, chart);
  const int n = s.dim();
  const bool stat = s.static_in_t();
  std::array<std::array<Mat, 4>, 4> d;  // d[mu][nu] = partial_mu A_nu
  for (int mu = 0; mu < 4; ++mu) {
    if (mu == 3 && stat) {
      for (int nu = 0; nu < 4; ++nu) d[mu][nu] = Mat::Zero(n, n);
      continue;
    }
    const double step = mu == 3 ? ht : h;
    auto at = [&](double k) {
      Vec3 y = x;
      double tt = t;
      if (mu == 3)
        tt += k * step;
      else
        y(mu) += k * step;
      return s.sample(y, tt, chart);
    };
    FieldSample p1 = at(1), m1 = at(-1), p2 = at(2), m2 = at(-2);
    for (int nu = 0; nu < 4; ++nu)
      d[mu][nu] = (8.0 * (p1.a[nu] - m1.a[nu]) - (p2.a[nu] - m2.a[nu])) / (12.0 * step);
  }
  auto F = [&](int mu, int nu) -> Mat { return d[mu][nu] - d[nu][mu] + commutator(c.a[mu], c.a[nu]); };
  Curvature out;
  const double eps = s.epsilon();
  for (int a = 0; a < 3; ++a) {
    int b = (a + 1) % 3, cc = (a + 2) % 3;
    out.B[a] = F(b, cc);
    out.E[a] = F(3, a) / eps;
  }
  return out;
}

inline Curvature curvature_at(const ConnectionSampler& s, const Vec3& x, double t, const StepSizes& st = {}) {
  return curvature_at(s, x, t, st.rel * local_scale(s, x), st.t);
}

// ---------------------------------------------------------------- quadrature

struct GridConfig {
  std::string name = "desk";
  int gl_order = 6;          // nodes per radial panel
  int n_theta = 12;
  int n_phi = 16;
  int n_t = 8;               // only for t-dependent samplers
  double first_edge = 1.0 / 16.0;  // first radial edge in units of the core scale
  double r_max_core = 60.0;  // outer radius in core scales ...
  double r_max_extent = 12.0;  // ... or in units of the constituent spread, whichever is larger
  StepSizes steps{};
};

inline GridConfig grid_preset(const std::string& name) {
  GridConfig g;
  if (name == "desk") return g;
  if (name == "fine") {
    g.name = "fine";
    g.gl_order = 8;
    g.n_theta = 16;
    g.n_phi = 24;
    g.n_t = 16;
    g.r_max_core = 100.0;
    g.r_max_extent = 20.0;
    return g;
  }
  if (name == "coarse") {
    g.name = "coarse";
    g.gl_order = 5;
    g.n_theta = 8;
    g.n_phi = 8;
    g.n_t = 4;
    return g;
  }
  fail(ErrorKind::invalid_input, "unknown grid preset '" + name + "'");
}

struct QuadNode {
  Vec3 x;
  double w;       // spatial weight including the partition of unity
  bool annulus;   // inside some gluing annulus
};

inline double outer_radius(const std::vector<QuadratureCenter>& cs, const GridConfig& g) {
  double core = 0, spread = 0;
  for (auto& c : cs) {
    core = std::max(core, c.core_scale);
    spread = std::max(spread, c.position.norm());
  }
  return std::max(g.r_max_core * core, g.r_max_extent * std::max(spread, core));
}

/// Spherical grids around each centre glued with the weights r_k^-4 / sum r_j^-4.
inline std::vector<QuadNode> quadrature_nodes(const std::vector<QuadratureCenter>& cs, const GridConfig& g) {
  std::vector<QuadNode> nodes;
  const double rmax = outer_radius(cs, g);
  const Rule& gr = gauss_legendre(g.gl_order);
  const Rule& gt = gauss_legendre(g.n_theta);
  auto in_annulus = [&](const Vec3& x) {
    for (auto& c : cs)
      if (c.annulus_outer > 0) {
        double r = (x - c.position).norm();
        if (r >= c.annulus_inner && r <= c.annulus_outer) return true;
      }
    return false;
  };
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const auto& c = cs[k];
    std::vector<double> edges{0.0};
    for (double e = g.first_edge * c.core_scale; e < rmax; e *= 2.0) edges.push_back(e);
    edges.push_back(rmax);
    if (c.annulus_outer > 0) {
      edges.push_back(c.annulus_inner);
      edges.push_back(c.annulus_outer);
      // resolve the annulus on the core scale
      for (double e = c.annulus_inner; e < c.annulus_outer; e += 0.5 * c.core_scale) edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, b); }),
                edges.end());
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
      double a = edges[p], b = edges[p + 1];
      for (int i = 0; i < g.gl_order; ++i) {
        double r = 0.5 * (a + b) + 0.5 * (b - a) * gr.x[i];
        double wr = 0.5 * (b - a) * gr.w[i] * r * r;
        for (int it = 0; it < g.n_theta; ++it) {
          double ct = gt.x[it], st = std::sqrt(1.0 - ct * ct);
          for (int ip = 0; ip < g.n_phi; ++ip) {
            double ph = 2.0 * pi * (ip + 0.5) / g.n_phi;
            Vec3 x = c.position + r * Vec3(st * std::cos(ph), st * std::sin(ph), ct);
            double wk = 1.0;
            if (cs.size() > 1) {
              double own = std::pow(r, -4), tot = 0;
              for (auto& o : cs) tot += std::pow((x - o.position).norm(), -4);
              wk = own / tot;
            }
            nodes.push_back({x, wr * gt.w[it] * (2.0 * pi / g.n_phi) * wk, in_annulus(x)});
          }
        }
      }
    }
  }
  return nodes;
}

struct Integrals {
  double energy = 0;          // (1/8pi^2) ||F||^2
  double topological = 0;     // (1/8pi^2) int -Tr F^F
  double sd_error_sq = 0;     // ||F^+||^2
  double sd_error_annulus_sq = 0;
  double tail = 0;            // analytic tail beyond the outer radius (included above)
  double r_max = 0;
  std::size_t nodes = 0;
};

/// One pass over the grid computing the energy, the topological charge and the
/// self-dual error. Sums are taken in a fixed order.
inline Integrals integrate_fields(const ConnectionSampler& s, const GridConfig& g) {
  auto cs = s.centers();
  auto nodes = quadrature_nodes(cs, g);
  const int nt = s.static_in_t() ? 1 : g.n_t;
  const double eps = s.epsilon();
  std::vector<double> e(nodes.size()), q(nodes.size()), p(nodes.size()), pa(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    double se = 0, sq = 0, sp = 0;
    for (int j = 0; j < nt; ++j) {
      double t = 2.0 * pi * j / nt;
      Curvature F = curvature_at(s, nodes[i].x, t, g.steps);
      se += F.norm2();
      sq += F.topological_density();
      sp += F.plus_norm2();
    }
    double w = nodes[i].w * eps * (2.0 * pi / nt);
    e[i] = w * se;
    q[i] = w * sq;
    p[i] = w * sp;
    pa[i] = nodes[i].annulus ? p[i] : 0.0;
  });
  Integrals out;
  out.nodes = nodes.size();
  out.r_max = outer_radius(cs, g);
  const double c8 = 1.0 / (8.0 * pi * pi);
  out.tail = eps * knorm2(s.asymptotic_charge()) / (2.0 * out.r_max);
  out.energy = c8 * pairwise_sum(e) + out.tail;
  out.topological = c8 * pairwise_sum(q) + out.tail;
  out.sd_error_sq = pairwise_sum(p);
  out.sd_error_annulus_sq = pairwise_sum(pa);
  return out;
}

inline double integrate_energy(const ConnectionSampler& s, const GridConfig& g = {}) {
  return integrate_fields(s, g).energy;
}

inline double tr_f_wedge_f(const ConnectionSampler& s, const GridConfig& g = {}) {
  return integrate_fields(s, g).topological;
}

struct SdError {
  double total_sq = 0;
  double annulus_sq = 0;
  double annulus_fraction() const { return total_sq > 0 ? annulus_sq / total_sq : 1.0; }
};

inline SdError sd_error_l2(const ConnectionSampler& s, const GridConfig& g = {}) {
  Integrals i = integrate_fields(s, g);
  return {i.sd_error_sq, i.sd_error_annulus_sq};
}

struct FieldReport {
  double ym_energy = 0;      // tail-corrected
  double ym_energy_raw = 0;
  double topological = 0;
  double energy_formula = 0;
  double sd_error_l2_sq = 0;
  double sd_error_annulus_sq = 0;
  std::vector<long> recovered_charge;
  double charge_residual = 0;
  Vec3 holonomy_point = Vec3::Zero();
  std::vector<double> holonomy_eigenphases;
  std::vector<double> holonomy_expected;
  std::string grid;
  std::size_t nodes = 0;
  double r_max = 0;
  double tail = 0;
};

// ---------------------------------------------------------------- holonomy

/// Path-ordered exponential of A_t around {x} x S^1 (fourth-order Magnus).
/// Eigenphases equal 2 pi * weights of eps Phi for static abelian fields.
inline Mat circle_holonomy(const ConnectionSampler& s, const Vec3& x, int n_steps = 64) {
  require(n_steps > 0, ErrorKind::invalid_input, "need a positive number of steps");
  const Chart chart = s.chart_at(x);
  const double h = 2.0 * pi / n_steps;
  const double c1 = 0.5 - std::sqrt(3.0) / 6.0, c2 = 0.5 + std::sqrt(3.0) / 6.0;
  Mat u = Mat::Identity(s.dim(), s.dim());
  for (int k = 0; k < n_steps; ++k) {
    double t0 = k * h;
    Mat a1 = s.sample(x, t0 + c1 * h, chart).a[3];
    Mat a2 = s.sample(x, t0 + c2 * h, chart).a[3];
    Mat omega = 0.5 * h * (a1 + a2) + (std::sqrt(3.0) / 12.0) * h * h * commutator(a2, a1);
    u = expm_skew(omega) * u;
  }
  return u;
}

inline std::vector<double> holonomy_phases(const ConnectionSampler& s, const Vec3& x, int n_steps = 64) {
  return eigenphases(circle_holonomy(s, x, n_steps));
}

// ---------------------------------------------------------------- magnetic charge

struct MagneticCharge {
  std::vector<double> diagonal_flux;  // (1/2pi) flux of each diagonal entry
  std::vector<double> coefficients;   // in simple coroots of su(n)
  std::vector<long> rounded;
  double residual = 0;
};

/// (1/2pi) of the flux of the diagonal part of F through a sphere in the
/// abelian region, expressed in simple coroots.
inline MagneticCharge magnetic_charge(const ConnectionSampler& s, double radius, const Vec3& center = Vec3::Zero(),
                                      int n_theta = 24, int n_phi = 32, double max_residual = 0.1) {
  const int n = s.dim();
  const Rule& gt = gauss_legendre(n_theta);
  std::vector<std::vector<double>> parts(n, std::vector<double>(static_cast<std::size_t>(n_theta) * n_phi));
  std::vector<std::size_t> idx(parts[0].size());
  parallel_for(parts[0].size(), [&](std::size_t id) {
    int it = static_cast<int>(id) / n_phi, ip = static_cast<int>(id) % n_phi;
    double ct = gt.x[it], st = std::sqrt(1.0 - ct * ct), ph = 2.0 * pi * (ip + 0.5) / n_phi;
    Vec3 nrm(st * std::cos(ph), st * std::sin(ph), ct);
    Curvature F = curvature_at(s, center + radius * nrm, 0.0);
    Mat bn = nrm.x() * F.B[0] + nrm.y() * F.B[1] + nrm.z() * F.B[2];
    double w = gt.w[it] * (2.0 * pi / n_phi) * radius * radius / (2.0 * pi);
    for (int j = 0; j < n; ++j) parts[j][id] = w * bn(j, j).imag();
  });
  MagneticCharge m;
  for (int j = 0; j < n; ++j) m.diagonal_flux.push_back(pairwise_sum(parts[j]));
  double acc = 0, trace = 0;
  for (int j = 0; j + 1 < n; ++j) {
    acc += m.diagonal_flux[j];
    m.coefficients.push_back(acc);
    m.rounded.push_back(std::lround(acc));
    m.residual = std::max(m.residual, std::abs(acc - std::round(acc)));
  }
  for (double f : m.diagonal_flux) trace += f;
  m.residual = std::max(m.residual, std::abs(trace));
  if (m.residual > max_residual)
    fail(ErrorKind::abelianization,
         "magnetic flux is not close to a coroot lattice point (residual " + std::to_string(m.residual) + ")");
  return m;
}

}  // namespace caloron
