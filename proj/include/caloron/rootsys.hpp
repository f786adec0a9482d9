#pragma once

// Root data of compact simple Lie algebras in the standard orthogonal models,
// with exact rational arithmetic.

#include "caloron/errors.hpp"
#include "caloron/linalg.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace caloron {

using Rational = boost::rational<std::int64_t>;
using RVec = std::vector<Rational>;
using RMat = std::vector<RVec>;

enum class Series { A, B, C, D, E, F, G };

inline char series_letter(Series s) { return "ABCDEFG"[static_cast<int>(s)]; }

inline Series series_from_letter(char c) {
  if (c < 'A' || c > 'G') fail(ErrorKind::invalid_input, std::string("unknown series '") + c + "'");
  return static_cast<Series>(c - 'A');
}

inline Rational dot(const RVec& a, const RVec& b) {
  Rational s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline RVec scaled(const RVec& a, Rational c) {
  RVec out(a);
  for (auto& x : out) x *= c;
  return out;
}

inline RVec added(const RVec& a, const RVec& b, Rational cb = 1) {
  RVec out(a);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += cb * b[k];
  return out;
}

inline double to_double(Rational r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::vector<double> to_double(const RVec& v) {
  std::vector<double> out;
  for (auto& x : v) out.push_back(to_double(x));
  return out;
}

inline double pair(const RVec& root, const std::vector<double>& xi) {
  double s = 0;
  for (std::size_t k = 0; k < root.size(); ++k) s += to_double(root[k]) * xi[k];
  return s;
}

inline RVec coroot_of(const RVec& a) { return scaled(a, Rational(2) / dot(a, a)); }

// Gauss-Jordan inverse over the rationals.
inline RMat inverse(RMat m) {
  const std::size_t n = m.size();
  RMat inv(n, RVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == Rational(0)) ++p;
    if (p == n) fail(ErrorKind::numerical, "singular rational matrix");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Rational d = m[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      m[c][k] /= d;
      inv[c][k] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == Rational(0)) continue;
      Rational f = m[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

struct RootDatum {
  Series series = Series::A;
  int rank = 0;
  int ambient_dim = 0;
  RMat simple_roots;        // alpha_1 .. alpha_rk
  RMat simple_coroots;      // alpha_1^v .. alpha_rk^v
  RMat positive_roots;      // ordered by height, then lexicographically
  RVec lowest_root;         // alpha_0
  RVec lowest_coroot;       // alpha_0^v
  std::vector<int> marks;   // alpha_0^v = -sum m_mu alpha_mu^v
  RMat fundamental_coweights;
  RVec rho;                 // half sum of positive roots
  Rational killing_scale;   // <x,y> = killing_scale * (x . y)
  std::vector<std::vector<int>> extended_cartan;  // [mu][nu] = alpha_nu(alpha_mu^v), index 0 is alpha_0

  std::string type_string() const { return std::string(1, series_letter(series)) + std::to_string(rank); }
  int dimension() const { return rank + 2 * static_cast<int>(positive_roots.size()); }

  // alpha_mu for mu in 0..rk
  const RVec& root(int mu) const { return mu == 0 ? lowest_root : simple_roots[mu - 1]; }
  const RVec& coroot(int mu) const { return mu == 0 ? lowest_coroot : simple_coroots[mu - 1]; }

  Rational killing(const RVec& x, const RVec& y) const { return killing_scale * dot(x, y); }
  double killing(const std::vector<double>& x, const std::vector<double>& y) const {
    double s = 0;
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
    return to_double(killing_scale) * s;
  }
};

namespace detail {

inline RVec unit(int dim, int i, Rational c = 1) {
  RVec v(dim, Rational(0));
  v[i] = c;
  return v;
}

inline RMat simple_roots_for(Series s, int n, int& dim) {
  RMat a;
  auto ee = [&](int i, int j) {  // e_i - e_j, 0-based
    RVec v(dim, Rational(0));
    v[i] = 1;
    v[j] = -1;
    return v;
  };
  switch (s) {
    case Series::A:
      dim = n + 1;
      for (int i = 0; i < n; ++i) a.push_back(ee(i, i + 1));
      break;
    case Series::B:
    case Series::C:
    case Series::D:
      dim = n;
      for (int i = 0; i + 1 < n; ++i) a.push_back(ee(i, i + 1));
      if (s == Series::B) a.push_back(unit(dim, n - 1));
      if (s == Series::C) a.push_back(unit(dim, n - 1, 2));
      if (s == Series::D) {
        RVec v(dim, Rational(0));
        v[n - 2] = 1;
        v[n - 1] = 1;
        a.push_back(v);
      }
      break;
    case Series::E: {
      dim = 8;
      Rational h(1, 2);
      a.push_back(RVec{h, -h, -h, -h, -h, -h, -h, h});
      RVec v2(8, Rational(0));
      v2[0] = 1;
      v2[1] = 1;
      a.push_back(v2);
      for (int i = 0; i < 6; ++i) a.push_back(ee(i + 1, i));
      a.resize(n);
      break;
    }
    case Series::F: {
      dim = 4;
      Rational h(1, 2);
      a.push_back(ee(1, 2));
      a.push_back(ee(2, 3));
      a.push_back(unit(dim, 3));
      a.push_back(RVec{h, -h, -h, -h});
      break;
    }
    case Series::G:
      dim = 3;
      a.push_back(RVec{1, -1, 0});
      a.push_back(RVec{-2, 1, 1});
      break;
  }
  return a;
}

}  // namespace detail

inline bool is_valid_type(Series s, int n) {
  switch (s) {
    case Series::A: return n >= 1;
    case Series::B: return n >= 2;
    case Series::C: return n >= 3;
    case Series::D: return n >= 4;
    case Series::E: return n >= 6 && n <= 8;
    case Series::F: return n == 4;
    case Series::G: return n == 2;
  }
  return false;
}

inline RootDatum build_root_datum(Series s, int rank) {
  if (!is_valid_type(s, rank))
    fail(ErrorKind::invalid_input,
         std::string("no simple Lie algebra of type ") + series_letter(s) + std::to_string(rank));
  RootDatum d;
  d.series = s;
  d.rank = rank;
  d.simple_roots = detail::simple_roots_for(s, rank, d.ambient_dim);
  for (auto& a : d.simple_roots) d.simple_coroots.push_back(coroot_of(a));

  // Cartan matrix C[i][j] = alpha_j(alpha_i^v)
  RMat cm(rank, RVec(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) cm[i][j] = dot(d.simple_roots[j], d.simple_coroots[i]);
  RMat cinv = inverse(cm);
  // fundamental coweights: alpha_i(w_j^v) = delta_ij
  for (int j = 0; j < rank; ++j) {
    RVec w(d.ambient_dim, Rational(0));
    for (int l = 0; l < rank; ++l) w = added(w, d.simple_coroots[l], cinv[j][l]);
    d.fundamental_coweights.push_back(w);
  }

  // Weyl closure of the simple roots
  std::set<RVec> roots(d.simple_roots.begin(), d.simple_roots.end());
  std::vector<RVec> frontier(d.simple_roots.begin(), d.simple_roots.end());
  while (!frontier.empty()) {
    std::vector<RVec> next;
    for (auto& b : frontier)
      for (int i = 0; i < rank; ++i) {
        RVec r = added(b, d.simple_roots[i], -dot(b, d.simple_coroots[i]));
        if (roots.insert(r).second) next.push_back(r);
      }
    frontier.swap(next);
  }

  auto height = [&](const RVec& b) {
    Rational h = 0;
    for (auto& w : d.fundamental_coweights) h += dot(b, w);
    return h;
  };
  std::vector<std::pair<Rational, RVec>> pos;
  for (auto& r : roots)
    if (height(r) > Rational(0)) pos.emplace_back(height(r), r);
  std::sort(pos.begin(), pos.end());
  for (auto& p : pos) d.positive_roots.push_back(p.second);

  const RVec& theta = d.positive_roots.back();
  d.lowest_root = scaled(theta, -1);
  d.lowest_coroot = coroot_of(d.lowest_root);
  RVec theta_v = scaled(d.lowest_coroot, -1);
  // theta^v = sum m_mu alpha_mu^v, m_mu = alpha_mu-coweight pairing in coroot coords
  RMat gram(rank, RVec(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) gram[i][j] = dot(d.simple_coroots[i], d.simple_coroots[j]);
  RMat ginv = inverse(gram);
  for (int i = 0; i < rank; ++i) {
    Rational m = 0;
    for (int j = 0; j < rank; ++j) m += ginv[i][j] * dot(d.simple_coroots[j], theta_v);
    if (m.denominator() != std::int64_t{1}) fail(ErrorKind::numerical, "non-integral mark");
    d.marks.push_back(static_cast<int>(m.numerator()));
  }

  d.rho = RVec(d.ambient_dim, Rational(0));
  for (auto& r : d.positive_roots) d.rho = added(d.rho, r, Rational(1, 2));
  d.killing_scale = dot(theta, theta) / 2;

  d.extended_cartan.assign(rank + 1, std::vector<int>(rank + 1));
  for (int mu = 0; mu <= rank; ++mu)
    for (int nu = 0; nu <= rank; ++nu) {
      Rational c = dot(d.root(nu), d.coroot(mu));
      d.extended_cartan[mu][nu] = static_cast<int>(c.numerator());
    }
  return d;
}

inline std::pair<Series, int> parse_type(const std::string& t) {
  if (t.size() < 2) fail(ErrorKind::invalid_input, "bad group type '" + t + "'");
  Series s = series_from_letter(t[0]);
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(t.substr(1), &used);
    if (used != t.size() - 1) throw std::invalid_argument(t);
  } catch (const std::exception&) {
    fail(ErrorKind::invalid_input, "bad group type '" + t + "'");
  }
  return {s, n};
}

inline RootDatum build_root_datum(const std::string& type) {
  auto [s, n] = parse_type(type);
  return build_root_datum(s, n);
}

// Every valid type up to the given rank.
inline std::vector<RootDatum> all_root_data(int max_rank) {
  std::vector<RootDatum> out;
  for (int s = 0; s < 7; ++s)
    for (int n = 1; n <= max_rank; ++n)
      if (is_valid_type(static_cast<Series>(s), n)) out.push_back(build_root_datum(static_cast<Series>(s), n));
  return out;
}

// ---------------------------------------------------------------- alcove

struct AlcoveReport {
  bool in_h = true;
  bool inside = false;
  double min_margin = 0;
  int worst = -1;
  std::vector<double> margins;  // [0] = 1 + alpha_0(xi), [mu] = alpha_mu(xi)
};

inline std::vector<double> project_to_h(const RootDatum& d, const std::vector<double>& xi) {
  std::vector<double> out(d.ambient_dim, 0.0);
  for (int j = 0; j < d.rank; ++j) {
    double c = pair(d.simple_roots[j], xi);
    for (int k = 0; k < d.ambient_dim; ++k) out[k] += c * to_double(d.fundamental_coweights[j][k]);
  }
  return out;
}

inline AlcoveReport alcove_check(const RootDatum& d, const std::vector<double>& xi, double margin = 0.0) {
  if (static_cast<int>(xi.size()) != d.ambient_dim)
    fail(ErrorKind::invalid_input, "Cartan vector has " + std::to_string(xi.size()) + " coordinates, expected " +
                                       std::to_string(d.ambient_dim));
  AlcoveReport r;
  auto p = project_to_h(d, xi);
  double off = 0, scale = 1;
  for (int k = 0; k < d.ambient_dim; ++k) {
    off += (xi[k] - p[k]) * (xi[k] - p[k]);
    scale += xi[k] * xi[k];
  }
  r.in_h = off <= 1e-18 * scale;
  r.margins.push_back(1.0 + pair(d.lowest_root, xi));
  for (int mu = 1; mu <= d.rank; ++mu) r.margins.push_back(pair(d.simple_roots[mu - 1], xi));
  r.min_margin = r.margins[0];
  r.worst = 0;
  for (int mu = 1; mu <= d.rank; ++mu)
    if (r.margins[mu] < r.min_margin) r.min_margin = r.margins[mu], r.worst = mu;
  r.inside = r.in_h && r.min_margin > margin;
  return r;
}

// Exact test for the open alcove.
inline bool in_open_alcove(const RootDatum& d, const RVec& xi) {
  if (Rational(1) + dot(d.lowest_root, xi) <= Rational(0)) return false;
  for (auto& a : d.simple_roots)
    if (dot(a, xi) <= Rational(0)) return false;
  // must lie in h
  RVec p(d.ambient_dim, Rational(0));
  for (int j = 0; j < d.rank; ++j) p = added(p, d.fundamental_coweights[j], dot(d.simple_roots[j], xi));
  return p == xi;
}

// Point of the alcove with barycentric weights b_0..b_rk (positive, summing to 1).
inline RVec alcove_point(const RootDatum& d, const RVec& b) {
  if (static_cast<int>(b.size()) != d.rank + 1) fail(ErrorKind::invalid_input, "need rank+1 barycentric weights");
  RVec w(d.ambient_dim, Rational(0));
  // vertices w_mu^v / a_mu with theta = sum a_mu alpha_mu
  for (int mu = 1; mu <= d.rank; ++mu) {
    const RVec& cw = d.fundamental_coweights[mu - 1];
    w = added(w, cw, b[mu] / -dot(d.lowest_root, cw));
  }
  return w;
}

inline RVec alcove_barycenter(const RootDatum& d) {
  return alcove_point(d, RVec(d.rank + 1, Rational(1, d.rank + 1)));
}

// ---------------------------------------------------------------- charges

// n_mu with gamma_m = sum_{mu>=0} n_mu alpha_mu^v and given n_0.
inline std::vector<long> decompose_charge(const RootDatum& d, const std::vector<long>& gamma, long n0) {
  if (static_cast<int>(gamma.size()) != d.rank) fail(ErrorKind::invalid_input, "charge needs rank coefficients");
  if (n0 < 0) fail(ErrorKind::invalid_input, "n0 must be non-negative");
  std::vector<long> n{n0};
  for (int mu = 1; mu <= d.rank; ++mu) {
    long v = gamma[mu - 1] + n0 * d.marks[mu - 1];
    if (v < 0)
      fail(ErrorKind::invalid_input, "charge needs a negative number of constituents of type " + std::to_string(mu));
    n.push_back(v);
  }
  return n;
}

// Coroot-coordinate charge of a constituent multiset.
inline std::vector<long> charge_of(const RootDatum& d, const std::vector<long>& n) {
  std::vector<long> g;
  for (int mu = 1; mu <= d.rank; ++mu) g.push_back(n[mu] - n[0] * d.marks[mu - 1]);
  return g;
}

inline RVec charge_vector(const RootDatum& d, const std::vector<long>& gamma) {
  RVec v(d.ambient_dim, Rational(0));
  for (int mu = 1; mu <= d.rank; ++mu) v = added(v, d.simple_coroots[mu - 1], Rational(gamma[mu - 1]));
  return v;
}

inline long dynkin_index_adjoint(const RootDatum& d) {
  Rational v = 2 * (Rational(1) - dot(d.rho, d.lowest_coroot));
  return static_cast<long>(v.numerator());
}

// ---------------------------------------------------------------- su(2) embeddings

struct Su2Embedding {
  int mu = 0;
  RVec root;            // alpha_mu
  RVec image_coroot;    // rho_mu(i tau_3); equals alpha_mu^v for mu>=1, -alpha_0^v for mu=0
  int complement_dim = 0;
  int row_i = -1, row_j = -1;  // 2x2 block in the defining representation (type A)
};

inline Su2Embedding su2_embedding(const RootDatum& d, int mu) {
  if (mu < 0 || mu > d.rank) fail(ErrorKind::invalid_input, "root index out of range");
  Su2Embedding e;
  e.mu = mu;
  e.root = d.root(mu);
  e.image_coroot = mu == 0 ? scaled(d.lowest_coroot, -1) : d.simple_coroots[mu - 1];
  e.complement_dim = d.dimension() - d.rank - 2;
  if (d.series == Series::A) {
    const int n = d.rank + 1;
    if (mu == 0) {
      e.row_i = 0;
      e.row_j = n - 1;
    } else {
      e.row_i = mu - 1;
      e.row_j = mu;
    }
  }
  return e;
}

inline std::array<Mat, 3> su2_embedding_matrices(const RootDatum& d, int mu) {
  if (d.series != Series::A)
    fail(ErrorKind::unsupported, "explicit embedding matrices are only provided for type A");
  Su2Embedding e = su2_embedding(d, mu);
  std::array<Mat, 3> out;
  for (int a = 0; a < 3; ++a) out[a] = embed_block(pauli::itau(a), d.rank + 1, e.row_i, e.row_j);
  return out;
}

inline void require_type_a(const RootDatum& d, const std::string& what) {
  if (d.series != Series::A) fail(ErrorKind::unsupported, what + " is implemented for SU(n) only");
}

// ---------------------------------------------------------------- weights

struct WeightList {
  std::string name;
  RMat weights;
};

inline WeightList adjoint_weights(const RootDatum& d) {
  WeightList w{"adjoint", {}};
  for (auto& r : d.positive_roots) {
    w.weights.push_back(r);
    w.weights.push_back(scaled(r, -1));
  }
  for (int k = 0; k < d.rank; ++k) w.weights.push_back(RVec(d.ambient_dim, Rational(0)));
  return w;
}

inline WeightList defining_weights(const RootDatum& d) {
  require_type_a(d, "the defining representation");
  WeightList w{"defining", {}};
  const int n = d.rank + 1;
  for (int i = 0; i < n; ++i) {
    RVec v(n, Rational(-1, n));
    v[i] += 1;
    w.weights.push_back(v);
  }
  return w;
}

// Closed under the simple reflections (as a multiset).
inline bool is_weyl_invariant(const RootDatum& d, const WeightList& w) {
  std::multiset<RVec> ref(w.weights.begin(), w.weights.end());
  for (auto& cv : d.simple_coroots) {
    std::multiset<RVec> img;
    const RVec& a = d.simple_roots[&cv - d.simple_coroots.data()];
    for (auto& x : w.weights) img.insert(added(x, a, -dot(x, cv)));
    if (img != ref) return false;
  }
  return true;
}

}  // namespace caloron
