#pragma once

// Command implementations behind the `caloron` executable. Each returns the
// process exit code: 0 pass, 1 check failure, 2 input error.

#include "caloron/assembler.hpp"
#include "caloron/errors.hpp"
#include "caloron/fieldcalc.hpp"
#include "caloron/index_engine.hpp"
#include "caloron/io.hpp"
#include "caloron/rootsys.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace caloron {

enum ExitCode : int { exit_pass = 0, exit_check_failure = 1, exit_input_error = 2 };

inline int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::abelianization:
    case ErrorKind::numerical:
    case ErrorKind::singular_point: return exit_check_failure;
    default: return exit_input_error;
  }
}

struct RunConfig {
  std::string spec_path;
  std::string out_path;
  std::string grid = "desk";
  std::optional<double> fd_step;  // relative to the local length scale
  std::uint64_t seed = 1;
  std::vector<double> epsilons;
};

inline GridConfig grid_for(const RunConfig& c) {
  GridConfig g = grid_preset(c.grid);
  if (c.fd_step) {
    if (!(*c.fd_step > 0.0 && *c.fd_step < 0.1))
      fail(ErrorKind::invalid_input, "--fd-step must lie in (0, 0.1) (relative to the local length scale)");
    g.steps.rel = *c.fd_step;
  }
  return g;
}

// ---------------------------------------------------------------- verify suite

struct Check {
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool pass = false;
  std::string detail;
};

struct VerifyResult {
  CaloronSpec spec;
  FieldReport report;
  std::vector<Check> checks;
  bool passed() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline constexpr double charge_tolerance = 0.05;
inline constexpr double holonomy_tolerance = 1e-4;
inline constexpr double energy_tolerance = 0.02;
inline constexpr double annulus_fraction_min = 0.95;
inline constexpr double fplus_lemma_constant = 4.0;

struct LemmaProbe {
  double max_ratio = 0;     // |F^+| / (max|a|/r + max|a|^2)
  double max_fplus = 0;
  std::size_t samples = 0;
};

/// Pointwise self-dual error against the annulus bound at random annulus points.
inline LemmaProbe probe_fplus_bound(const ApproximateCaloronSampler& s, std::uint64_t seed, int per_center = 48) {
  LemmaProbe out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double R = s.gluing_radius();
  auto cs = s.centers();
  for (auto& c : cs)
    for (int k = 0; k < per_center; ++k) {
      double r = R * (0.5 + 0.5 * u(rng)), ct = 2.0 * u(rng) - 1.0, ph = 2.0 * pi * u(rng), t = 2.0 * pi * u(rng);
      double st = std::sqrt(1.0 - ct * ct);
      Vec3 x = c.position + r * Vec3(st * std::cos(ph), st * std::sin(ph), ct);
      double fp = std::sqrt(curvature_at(s, x, t).plus_norm2());
      AnnulusTerms a = s.annulus_terms(x, t);
      double m = std::max(a.a_bps, a.a_local);
      double bound = m / a.r + m * m;
      out.max_fplus = std::max(out.max_fplus, fp);
      out.max_ratio = std::max(out.max_ratio, fp / bound);
      ++out.samples;
    }
  return out;
}

inline double charge_radius(const Assembly& a) { return a.d_max + 1.0 + 2.0 * a.R; }

inline double holonomy_radius(const Assembly& a) { return 10.0 * std::max(a.d_max, 1.0); }

inline VerifyResult run_verify(const CaloronSpec& spec, const GridConfig& grid, std::uint64_t seed) {
  VerifyResult v;
  v.spec = spec;
  auto s = approximate_caloron(spec);
  const Assembly& a = s->assembly();
  FieldReport& r = v.report;
  r.grid = grid.name;
  r.energy_formula = energy_formula(a.datum, spec.omega, a.counts);
  auto add = [&](std::string name, double value, double tol, bool pass, std::string detail = {}) {
    v.checks.push_back({std::move(name), value, tol, pass, std::move(detail)});
  };

  if (!spec.constituents.empty()) {
    Integrals I = integrate_fields(*s, grid);
    r.ym_energy = I.energy;
    r.ym_energy_raw = I.energy - I.tail;
    r.topological = I.topological;
    r.sd_error_l2_sq = I.sd_error_sq;
    r.sd_error_annulus_sq = I.sd_error_annulus_sq;
    r.nodes = I.nodes;
    r.r_max = I.r_max;
    r.tail = I.tail;
  }

  // magnetic charge
  try {
    MagneticCharge m = magnetic_charge(*s, charge_radius(a));
    r.recovered_charge = m.rounded;
    r.charge_residual = m.residual;
    add("magnetic_charge", m.residual, charge_tolerance, m.residual < charge_tolerance && m.rounded == a.charge);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::abelianization) throw;
    add("magnetic_charge", 1.0, charge_tolerance, false, e.what());
  }

  // holonomy at large distance
  const double rh = holonomy_radius(a);
  r.holonomy_point = rh * far_field_direction(a);
  r.holonomy_eigenphases = holonomy_phases(*s, r.holonomy_point);
  r.holonomy_expected = model_phases(a, rh);
  double dh = phase_set_distance(r.holonomy_eigenphases, r.holonomy_expected);
  add("holonomy", dh, holonomy_tolerance, dh <= holonomy_tolerance);

  if (!spec.constituents.empty()) {
    double scale = std::max(r.energy_formula, 1e-12);
    double de = std::abs(r.ym_energy - r.energy_formula) / scale;
    add("energy", de, energy_tolerance, de <= energy_tolerance);
    double dq = std::abs(r.topological - r.energy_formula) / scale;
    add("topological_charge", dq, energy_tolerance, dq <= energy_tolerance);
    double frac = r.sd_error_l2_sq > 0 ? r.sd_error_annulus_sq / r.sd_error_l2_sq : 1.0;
    add("sd_error_on_annuli", frac, annulus_fraction_min, frac >= annulus_fraction_min);
    LemmaProbe lp = probe_fplus_bound(*s, seed);
    add("fplus_annulus_bound", lp.max_ratio, fplus_lemma_constant, lp.max_ratio <= fplus_lemma_constant);
    Containment c = alcove_containment(spec);
    add("alcove_containment", c.sigma, 0.0, c.sigma > 0.0);
  }
  return v;
}

inline json to_json(const VerifyResult& v) {
  json checks = json::array();
  for (auto& c : v.checks) {
    json j{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(j);
  }
  return json{{"spec", to_json(v.spec)}, {"report", to_json(v.report)}, {"checks", checks}, {"pass", v.passed()}};
}

// ---------------------------------------------------------------- sweep

struct SweepRow {
  double epsilon = 0;
  double R = 0;
  double sd_error_l2_sq = 0;
  double sd_error_annulus_sq = 0;
  double energy = 0;
  double energy_formula = 0;
  double charge_residual = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double slope_corrected = 0;  // d log(|F+|^2 / |ln eps|^3) / d log eps
  double slope_adjusted = 0;   // d log |F+|^2 / d log(eps |ln eps|^{3/4})
  double min_annulus_fraction = 1;
};

inline void validate_epsilons(const std::vector<double>& eps) {
  std::set<double> distinct(eps.begin(), eps.end());
  if (distinct.size() < 3) fail(ErrorKind::invalid_input, "a sweep needs at least three distinct epsilon values");
  for (double e : eps)
    if (!(e > 0.0 && e < 1.0)) fail(ErrorKind::invalid_input, "epsilon values must lie in (0,1)");
  if (*distinct.rbegin() < 2.0 * *distinct.begin())
    fail(ErrorKind::invalid_input, "epsilon values must span at least a factor of two");
}

inline SweepResult run_sweep(CaloronSpec spec, const std::vector<double>& eps, const GridConfig& grid) {
  validate_epsilons(eps);
  SweepResult out;
  std::vector<double> lx, ly, la;
  for (double e : eps) {
    spec.epsilon = e;
    auto s = approximate_caloron(spec);
    const Assembly& a = s->assembly();
    Integrals I = integrate_fields(*s, grid);
    SweepRow row;
    row.epsilon = e;
    row.R = a.R;
    row.sd_error_l2_sq = I.sd_error_sq;
    row.sd_error_annulus_sq = I.sd_error_annulus_sq;
    row.energy = I.energy;
    row.energy_formula = energy_formula(a.datum, spec.omega, a.counts);
    row.charge_residual = magnetic_charge(*s, charge_radius(a)).residual;
    out.rows.push_back(row);
    const double L = std::abs(std::log(e));
    lx.push_back(std::log(e));
    ly.push_back(std::log(I.sd_error_sq / (L * L * L)));
    la.push_back(std::log(e * std::pow(L, 0.75)));
    if (I.sd_error_sq > 0)
      out.min_annulus_fraction = std::min(out.min_annulus_fraction, I.sd_error_annulus_sq / I.sd_error_sq);
  }
  out.slope_corrected = fit_slope(lx, ly);
  std::vector<double> lraw;
  for (auto& r : out.rows) lraw.push_back(std::log(r.sd_error_l2_sq));
  out.slope_adjusted = fit_slope(la, lraw);
  return out;
}

inline void write_sweep_csv(const SweepResult& s, std::ostream& os) {
  os << "epsilon,R,sd_error_l2_sq,energy,energy_formula,charge_residual\n";
  os << std::setprecision(12);
  for (auto& r : s.rows)
    os << r.epsilon << ',' << r.R << ',' << r.sd_error_l2_sq << ',' << r.energy << ',' << r.energy_formula << ','
       << r.charge_residual << '\n';
}

// ---------------------------------------------------------------- index

/// Interior rational point of the alcove with barycentric weights k_mu / sum k.
inline RVec random_alcove_point(const RootDatum& d, std::mt19937_64& rng, int max_weight = 20) {
  std::uniform_int_distribution<int> u(1, max_weight);
  std::vector<int> k(d.rank + 1);
  int total = 0;
  for (auto& x : k) total += (x = u(rng));
  RVec b;
  for (int x : k) b.push_back(Rational(x, total));
  return alcove_point(d, b);
}

inline void write_index_sweep_csv(int max_rank, int samples, std::uint64_t seed, std::ostream& os) {
  std::mt19937_64 rng(seed);
  os << "series,rank,mu,omega,chern,boundary,total\n";
  for (auto& d : all_root_data(max_rank)) {
    std::vector<RVec> omegas{alcove_barycenter(d)};
    for (int k = 0; k < samples; ++k) omegas.push_back(random_alcove_point(d, rng));
    for (auto& w : omegas)
      for (int mu = 0; mu <= d.rank; ++mu) {
        IndexReport r = transverse_index(d, mu, w);
        std::string ws;
        for (auto& q : w) ws += (ws.empty() ? "" : " ") + rational_string(q);
        os << series_letter(d.series) << ',' << d.rank << ',' << mu << ',' << ws << ','
           << rational_string(r.chern_term) << ',' << rational_string(r.boundary_term) << ',' << r.total_index
           << '\n';
      }
  }
}

// ---------------------------------------------------------------- commands

namespace detail {

template <class F>
int guarded(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.kind() == ErrorKind::gluing_infeasible || e.kind() == ErrorKind::not_in_alcove)
      err << "hint: reduce epsilon or move constituents apart\n";
    return exit_code_for(e);
  }
}

inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) fail(ErrorKind::invalid_input, "cannot write '" + path + "'");
  f << text;
}

}  // namespace detail

inline int cmd_roots(const std::string& type, const std::string& out_path, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::emit(out_path, to_json(build_root_datum(type)).dump(2) + "\n", out);
    return exit_pass;
  });
}

inline int cmd_construct(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    CaloronSpec spec = load_spec(c.spec_path);
    Assembly a = assemble(spec);
    json j;
    j["spec"] = to_json(spec);
    j["charge"] = a.charge;
    j["constituent_counts"] = a.counts;
    j["gluing_constant"] = a.c;
    j["gluing_radius"] = a.R;
    j["min_separation"] = a.d_min == std::numeric_limits<double>::infinity() ? json(nullptr) : json(a.d_min);
    j["local_holonomy"] = a.local_omega;
    j["energy_formula"] = energy_formula(a.datum, spec.omega, a.counts);
    j["moduli_dimension"] = moduli_dimension(a.counts);
    detail::emit(c.out_path, j.dump(2) + "\n", out);
    return exit_pass;
  });
}

inline int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    CaloronSpec spec = load_spec(c.spec_path);
    VerifyResult v = run_verify(spec, grid_for(c), c.seed);
    for (auto& ch : v.checks)
      out << (ch.pass ? "PASS " : "FAIL ") << ch.name << " value=" << ch.value << " tol=" << ch.tolerance << '\n';
    if (!c.out_path.empty()) detail::emit(c.out_path, to_json(v).dump(2) + "\n", out);
    return v.passed() ? exit_pass : exit_check_failure;
  });
}

inline int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    validate_epsilons(c.epsilons);
    CaloronSpec spec = load_spec(c.spec_path);
    SweepResult s = run_sweep(spec, c.epsilons, grid_for(c));
    std::ostringstream csv;
    write_sweep_csv(s, csv);
    detail::emit(c.out_path, csv.str(), out);
    out << "# slope " << s.slope_corrected << " (log |F+|^2/|ln eps|^3 against log eps)\n";
    out << "# slope_adjusted_abscissa " << s.slope_adjusted << '\n';
    out << "# min_annulus_fraction " << s.min_annulus_fraction << '\n';
    return exit_pass;
  });
}

struct IndexConfig {
  std::string type = "A1";
  int mu = 0;
  std::string omega;  // comma separated rationals; barycenter if empty
  bool sweep = false;
  int max_rank = 8;
  int samples = 10;
  std::uint64_t seed = 1;
  std::string out_path;
};

inline int cmd_index(const IndexConfig& c, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (c.sweep) {
      std::ostringstream csv;
      write_index_sweep_csv(c.max_rank, c.samples, c.seed, csv);
      detail::emit(c.out_path, csv.str(), out);
      return exit_pass;
    }
    RootDatum d = build_root_datum(c.type);
    RVec w = c.omega.empty() ? alcove_barycenter(d) : parse_rational_list(c.omega);
    if (static_cast<int>(w.size()) != d.ambient_dim)
      fail(ErrorKind::invalid_input, "--omega needs " + std::to_string(d.ambient_dim) + " ambient coordinates");
    IndexReport r = transverse_index(d, c.mu, w);
    detail::emit(c.out_path, to_json(r).dump(2) + "\n", out);
    return r.total_index == 0 ? exit_pass : exit_check_failure;
  });
}

}  // namespace caloron
