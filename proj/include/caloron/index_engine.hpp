#pragma once

// Closed-form energies, dimensions and indices. Everything here is exact.

#include "caloron/errors.hpp"
#include "caloron/rootsys.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace caloron {

inline long floor_of(const Rational& q) {
  long n = static_cast<long>(q.numerator()), d = static_cast<long>(q.denominator());
  return n >= 0 ? n / d : -((-n + d - 1) / d);
}

inline Rational frac_of(const Rational& q) { return q - Rational(floor_of(q)); }

inline Rational killing_norm2(const RootDatum& d, const RVec& x) { return d.killing_scale * dot(x, x); }

inline void require_decomposition(const RootDatum& d, const std::vector<long>& n) {
  if (static_cast<int>(n.size()) != d.rank + 1)
    fail(ErrorKind::invalid_input, "charge decomposition needs rank+1 entries");
}

// ---------------------------------------------------------------- energy and dimension

inline Rational energy_formula(const RootDatum& d, const RVec& omega, const std::vector<long>& n) {
  require_decomposition(d, n);
  if (!in_open_alcove(d, omega)) fail(ErrorKind::not_in_alcove, "omega is not in the open alcove");
  Rational e = Rational(n[0]) * (Rational(1) + dot(d.lowest_root, omega));
  for (int mu = 1; mu <= d.rank; ++mu)
    e += Rational(1, 2) * killing_norm2(d, d.simple_coroots[mu - 1]) * Rational(n[mu]) *
         dot(d.simple_roots[mu - 1], omega);
  return e;
}

inline double energy_formula(const RootDatum& d, const std::vector<double>& omega, const std::vector<long>& n) {
  require_decomposition(d, n);
  AlcoveReport a = alcove_check(d, omega);
  if (!a.inside) fail(ErrorKind::not_in_alcove, "omega is not in the open alcove");
  double e = n[0] * a.margins[0];
  for (int mu = 1; mu <= d.rank; ++mu)
    e += 0.5 * to_double(killing_norm2(d, d.simple_coroots[mu - 1])) * n[mu] * a.margins[mu];
  return e;
}

/// 4 (n_0 + ... + n_rk); the moduli space is empty unless every n_mu >= 0.
inline long moduli_dimension(const std::vector<long>& n) {
  for (long v : n)
    if (v < 0) fail(ErrorKind::invalid_input, "negative constituent count: the moduli space is empty");
  return 4 * std::accumulate(n.begin(), n.end(), 0L);
}

// ---------------------------------------------------------------- Dynkin indices

/// 2 (1 - rho(alpha_0^v)).
inline Rational dynkin_index_adjoint_formula(const RootDatum& d) {
  return Rational(2) * (Rational(1) - dot(d.rho, d.lowest_coroot));
}

/// sum over positive roots of alpha(theta^v)^2.
inline Rational dynkin_index_adjoint_bruteforce(const RootDatum& d) {
  RVec theta_v = scaled(d.lowest_coroot, -1);
  Rational s = 0;
  for (auto& a : d.positive_roots) {
    Rational p = dot(a, theta_v);
    s += p * p;
  }
  return s;
}

/// (1/2) sum over weights of w(theta^v)^2.
inline Rational dynkin_index(const RootDatum& d, const WeightList& rep) {
  RVec theta_v = scaled(d.lowest_coroot, -1);
  Rational s = 0;
  for (auto& w : rep.weights) {
    Rational p = dot(w, theta_v);
    s += p * p;
  }
  return s / 2;
}

inline RVec positive_root_of(const RootDatum& d, int mu) {
  return mu == 0 ? scaled(d.lowest_root, -1) : d.simple_roots[mu - 1];
}

/// Dynkin index of su(2) -> u(p_mu), p_mu the complement of the mu-th su(2).
inline Rational dynkin_index_su2(const RootDatum& d, int mu) {
  if (mu < 0 || mu > d.rank) fail(ErrorKind::invalid_input, "root index out of range");
  const RVec& cv = d.coroot(mu);
  const RVec abs_root = positive_root_of(d, mu);
  Rational s = 0;
  for (auto& a : d.positive_roots) {
    if (a == abs_root) continue;
    Rational p = dot(a, cv);
    s += p * p;
  }
  return s;
}

/// (1/2) ind_D(Ad) |alpha_mu^v|^2 - 4.
inline Rational dynkin_index_su2_closed(const RootDatum& d, int mu) {
  return Rational(1, 2) * dynkin_index_adjoint_formula(d) * killing_norm2(d, d.coroot(mu)) - Rational(4);
}

// ---------------------------------------------------------------- transverse index

struct IndexReport {
  std::string type;
  int mu = 0;
  RVec omega;
  Rational chern_term;
  Rational boundary_term;
  Rational boundary_closed;
  long total_index = 0;
};

inline IndexReport transverse_index(const RootDatum& d, int mu, const RVec& omega) {
  if (mu < 0 || mu > d.rank) fail(ErrorKind::invalid_input, "root index out of range");
  if (!in_open_alcove(d, omega)) fail(ErrorKind::not_in_alcove, "omega is not in the open alcove");
  IndexReport r;
  r.type = d.type_string();
  r.mu = mu;
  r.omega = omega;
  const RVec& cv = d.coroot(mu);
  const Rational a_mu = dot(d.root(mu), omega);
  const int n0 = mu == 0 ? 1 : 0;
  const Rational sign = mu == 0 ? Rational(-1) : Rational(1);
  const Rational ind = dynkin_index_su2(d, mu);
  r.chern_term = ind * (Rational(n0) + a_mu);

  const RVec abs_root = positive_root_of(d, mu);
  Rational b = 0;
  for (auto& a : d.positive_roots)
    if (a != abs_root) b += (Rational(1, 2) - dot(a, omega)) * dot(a, cv);
  r.boundary_term = Rational(2) * b;
  r.boundary_closed = Rational(2) * (dot(d.rho, cv) - sign) - dynkin_index_su2_closed(d, mu) * a_mu;

  Rational total = r.chern_term + r.boundary_term;
  if (total.denominator() != std::int64_t{1}) fail(ErrorKind::numerical, "non-integral transverse index");
  r.total_index = static_cast<long>(total.numerator());
  return r;
}

// ---------------------------------------------------------------- twisted Dirac index

/// Index of the Dirac operator twisted by rep and shifted by i s id.
inline long twisted_dirac_index(const RootDatum& d, const WeightList& rep, const RVec& omega,
                                const std::vector<long>& gamma, long n0, const Rational& s) {
  if (!(s > Rational(0) && s < Rational(1))) fail(ErrorKind::invalid_input, "s must lie in (0,1)");
  RVec g = charge_vector(d, gamma);
  Rational total = Rational(n0) * dynkin_index(d, rep);
  for (auto& w : rep.weights) {
    Rational wo = dot(w, omega), wg = dot(w, g);
    Rational sw = Rational(1) - frac_of(wo);
    if (sw == s) {
      std::string name;
      for (auto& c : w) name += (name.empty() ? "" : ",") + std::to_string(c.numerator()) +
                                (c.denominator() == std::int64_t{1} ? "" : "/" + std::to_string(c.denominator()));
      fail(ErrorKind::resonance, "s coincides with s_w for weight (" + name + ")");
    }
    total += Rational(floor_of(wo)) * wg;
    if (sw < s) total += wg;
  }
  if (total.denominator() != std::int64_t{1}) fail(ErrorKind::numerical, "non-integral twisted index");
  return static_cast<long>(total.numerator());
}

/// Adjoint case: 2 sum n_mu + sum_{alpha>0} (delta+ - delta-) alpha(gamma_m).
inline long twisted_dirac_index_adjoint(const RootDatum& d, const RVec& omega, const std::vector<long>& n,
                                        const Rational& s) {
  require_decomposition(d, n);
  if (!in_open_alcove(d, omega)) fail(ErrorKind::not_in_alcove, "omega is not in the open alcove");
  if (!(s > Rational(0) && s < Rational(1))) fail(ErrorKind::invalid_input, "s must lie in (0,1)");
  RVec g = charge_vector(d, charge_of(d, n));
  Rational total = Rational(2 * std::accumulate(n.begin(), n.end(), 0L));
  for (auto& a : d.positive_roots) {
    Rational ao = dot(a, omega);
    Rational sp = Rational(1) - ao, sm = ao;
    if (s == sp || s == sm) fail(ErrorKind::resonance, "s coincides with a root threshold");
    Rational ag = dot(a, g);
    if (s > sp) total += ag;
    if (s > sm) total -= ag;
  }
  return static_cast<long>(total.numerator());
}

/// Jump points s_w in (0,1], sorted, without duplicates.
inline std::vector<Rational> twisted_thresholds(const WeightList& rep, const RVec& omega) {
  std::vector<Rational> out;
  for (auto& w : rep.weights) out.push_back(Rational(1) - frac_of(dot(w, omega)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace caloron
