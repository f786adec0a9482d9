// Acceptance gate: one PASS/FAIL line per criterion, tolerances fixed here.

#include "caloron/assembler.hpp"
#include "caloron/cli.hpp"
#include "caloron/fieldcalc.hpp"
#include "caloron/index_engine.hpp"
#include "caloron/su2_blocks.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace caloron;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = f();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %2d %-22s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.summary.c_str(), secs);
  std::fflush(stdout);
}

template <class... T>
std::string fmt(const char* f, T... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Vec3 random_direction(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  double ct = 2 * u(rng) - 1, st = std::sqrt(1 - ct * ct), ph = 2 * pi * u(rng);
  return Vec3(st * std::cos(ph), st * std::sin(ph), ct);
}

RVec random_interior(const RootDatum& d, std::mt19937_64& rng, int lo = 1, int hi = 16) {
  std::uniform_int_distribution<int> u(lo, hi);
  std::vector<Rational> b;
  int total = 0;
  std::vector<int> k(d.rank + 1);
  for (int& x : k) total += (x = u(rng));
  for (int x : k) b.push_back(Rational(x, total));
  return alcove_point(d, b);
}

// Random spec with constituents at least 2 apart.
CaloronSpec random_spec(int rank, double eps, std::mt19937_64& rng) {
  RootDatum d = build_root_datum(Series::A, rank);
  CaloronSpec s;
  s.epsilon = eps;
  s.rank = rank;
  s.omega = to_double(random_interior(d, rng, 6, 12));
  std::uniform_int_distribution<int> count(2, 4), mu(0, rank);
  std::uniform_real_distribution<double> box(-3.0, 3.0);
  int n = count(rng);
  while (static_cast<int>(s.constituents.size()) < n) {
    Vec3 p(box(rng), box(rng), box(rng));
    bool ok = true;
    for (auto& c : s.constituents) ok = ok && (c.position - p).norm() > 2.0;
    if (ok) s.constituents.push_back({mu(rng), p, 0.0});
  }
  return s;
}

Outcome bogomolny() {
  const double tol_factor = 10.0, min_ratio = 50.0;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> ur(0.3, 4.0);
  BpsMonopole m = bps_pair(1.0);
  double worst = 0, min_r = 1e300;
  for (int k = 0; k < 100; ++k) {
    Vec3 x = ur(rng) * random_direction(rng);
    double r2 = bogomolny_residual(m, x, 1e-2), r3 = bogomolny_residual(m, x, 1e-3);
    worst = std::max({worst, r2 / (tol_factor * 1e-4), r3 / (tol_factor * 1e-6)});
    min_r = std::min(min_r, r2 / r3);
  }
  return {worst < 1.0 && min_r >= min_ratio,
          fmt("max residual/(10h^2)=%.3g min ratio=%.1f (need <1, >=%.0f)", worst, min_r, min_ratio)};
}

Outcome asymptotics() {
  const double min_rate = 3.5;
  double worst = 1e300;
  for (double w : {0.1, 0.25, 0.4}) {
    const double eps = 1.0, v = w / eps;
    Vec3 dir = Vec3(0.3, 0.5, 0.81).normalized();
    std::vector<double> rs, logs;
    for (double r = 2.0 / v; r <= 6.0 / v + 1e-12; r += 0.25 / v) {
      Mat2 phi = bps_plus_framed(v, eps, r * dir, Patch::north).a[3] / eps;
      rs.push_back(r);
      logs.push_back(std::log(std::sqrt(knorm2(Mat2(phi - (v - 0.5 / r) * pauli::itau(2))))));
    }
    worst = std::min(worst, -fit_slope(rs, logs) / v);
  }
  return {worst >= min_rate, fmt("min fitted rate/v=%.3f (need >=%.1f)", worst, min_rate)};
}

Outcome energy() {
  const double rel = 0.01;
  RootDatum d = build_root_datum("A1");
  std::vector<double> w{0.25, -0.25};
  double e_plus = integrate_energy(*bps_caloron_plus(0.25, 1.0), grid_preset("desk"));
  double e_minus = integrate_energy(*rotated_bps(0.25, 1.0), grid_preset("desk"));
  double f_plus = energy_formula(d, w, {0, 1}), f_minus = energy_formula(d, w, {1, 0});
  double dev = std::max(std::abs(e_plus / f_plus - 1), std::abs(e_minus / f_minus - 1));
  return {dev <= rel, fmt("E+=%.5f E-=%.5f formula=%.3f,%.3f max rel dev=%.2e (need <=%.0e)", e_plus, e_minus, f_plus,
                          f_minus, dev, rel)};
}

Outcome error_scaling() {
  const double target = 4.0, band = 0.5, min_fraction = annulus_fraction_min;
  CaloronSpec s;
  s.rank = 1;
  s.omega = {0.25, -0.25};
  s.constituents = {{1, Vec3::Zero(), 0.0}};
  SweepResult r = run_sweep(s, {0.1, 0.05, 0.025}, grid_preset("desk"));
  bool ok = std::abs(r.slope_corrected - target) <= band && r.min_annulus_fraction >= min_fraction;
  std::string rows;
  for (auto& row : r.rows) rows += fmt(" |F+|^2(%.3g)=%.3e", row.epsilon, row.sd_error_l2_sq);
  return {ok, fmt("slope=%.3f (need %.1f+-%.1f) adjusted-abscissa slope=%.3f annulus fraction=%.4f (need >=%.2f)",
                  r.slope_corrected, target, band, r.slope_adjusted, r.min_annulus_fraction, min_fraction) +
                  rows};
}

Outcome containment() {
  const double stability = 0.10;
  CaloronSpec s;
  s.epsilon = 0.02;
  s.rank = 2;
  s.omega = {1.0 / 3, 0.0, -1.0 / 3};
  s.constituents = {{0, Vec3(1, 0, 0), 0.0}, {1, Vec3(-0.5, 0.866, 0), 0.3}, {2, Vec3(-0.5, -0.866, 0.2), 1.0}};
  Containment a = alcove_containment(s, 0), b = alcove_containment(s, 1);
  double drift = std::abs(b.sigma / a.sigma - 1);
  return {a.sigma > 0 && b.sigma > 0 && drift <= stability,
          fmt("sigma=%.5f refined=%.5f c=%.1f samples=%zu,%zu drift=%.2e (need sigma>0, drift<=%.2f)", a.sigma,
              b.sigma, a.c_factor, a.samples, b.samples, drift, stability)};
}

Outcome charge_and_holonomy() {
  std::mt19937_64 rng(606);
  double worst_res = 0, worst_hol = 0;
  bool exact = true;
  for (int rank : {1, 2})
    for (int k = 0; k < 5; ++k) {
      CaloronSpec s = random_spec(rank, 0.01, rng);
      auto a = approximate_caloron(s);
      const Assembly& as = a->assembly();
      MagneticCharge m = magnetic_charge(*a, charge_radius(as), Vec3::Zero(), 24, 32, 1.0);
      exact = exact && m.rounded == as.charge;
      worst_res = std::max(worst_res, m.residual);
      double r = holonomy_radius(as);
      Vec3 x = r * far_field_direction(as);
      worst_hol = std::max(worst_hol, phase_set_distance(holonomy_phases(*a, x), model_phases(as, r)));
    }
  return {exact && worst_res < charge_tolerance && worst_hol < holonomy_tolerance,
          fmt("10 specs: charges exact=%s max residual=%.2e (need <%.2f) max phase error=%.2e (need <%.0e)",
              exact ? "yes" : "no", worst_res, charge_tolerance, worst_hol, holonomy_tolerance)};
}

Outcome index_vanishing() {
  std::mt19937_64 rng(707);
  long cases = 0, nonzero = 0;
  for (auto& d : all_root_data(8))
    for (int k = 0; k < 10; ++k) {
      RVec w = random_interior(d, rng);
      for (int mu = 0; mu <= d.rank; ++mu) {
        IndexReport r = transverse_index(d, mu, w);
        ++cases;
        if (r.total_index != 0 || r.boundary_term != r.boundary_closed) ++nonzero;
      }
    }
  return {nonzero == 0, fmt("%ld (type, mu, omega) cases, %ld nonzero (need 0)", cases, nonzero)};
}

Outcome dynkin() {
  long types = 0, mismatches = 0;
  for (auto& d : all_root_data(8)) {
    ++types;
    if (dynkin_index_adjoint_formula(d) != dynkin_index_adjoint_bruteforce(d)) ++mismatches;
    if (dynkin_index(d, adjoint_weights(d)) != dynkin_index_adjoint_formula(d)) ++mismatches;
    for (int mu = 0; mu <= d.rank; ++mu)
      if (dynkin_index_su2(d, mu) != dynkin_index_su2_closed(d, mu)) ++mismatches;
  }
  return {mismatches == 0, fmt("%ld types, %ld mismatches (need 0)", types, mismatches)};
}

Outcome dimension() {
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<int> rank(1, 8);
  std::uniform_int_distribution<long> count(0, 20);
  long bad = 0;
  for (int k = 0; k < 1000; ++k) {
    std::vector<long> n(rank(rng) + 1);
    long sum = 0;
    for (long& v : n) sum += (v = count(rng));
    if (moduli_dimension(n) != 4 * sum) ++bad;
  }
  long plus = moduli_dimension({0, 1}), minus = moduli_dimension({1, 0});
  return {bad == 0 && plus == 4 && minus == 4,
          fmt("1000 decompositions, %ld wrong; fundamental SU(2) data -> %ld, %ld (need 4)", bad, plus, minus)};
}

Outcome twisted() {
  RootDatum d = build_root_datum("A2");
  WeightList adj = adjoint_weights(d);
  std::mt19937_64 rng(1010);
  std::uniform_int_distribution<long> un(0, 4);
  std::uniform_int_distribution<int> us(1, 96);
  long mismatches = 0, jumps = 0, bad_jumps = 0;
  for (int checked = 0; checked < 100;) {
    RVec w = random_interior(d, rng);
    std::vector<long> n{un(rng), un(rng), un(rng)};
    std::vector<long> gamma = charge_of(d, n);
    Rational s(us(rng), 97);
    auto th = twisted_thresholds(adj, w);
    if (std::find(th.begin(), th.end(), s) != th.end()) continue;
    if (twisted_dirac_index(d, adj, w, gamma, n[0], s) != twisted_dirac_index_adjoint(d, w, n, s)) ++mismatches;
    ++checked;
    RVec g = charge_vector(d, gamma);
    for (auto& sw : th) {
      if (sw >= Rational(1)) continue;
      Rational delta(1, 1000000), jump = 0;
      for (auto& x : adj.weights)
        if (Rational(1) - frac_of(dot(x, w)) == sw) jump += dot(x, g);
      long step = twisted_dirac_index(d, adj, w, gamma, n[0], sw + delta) -
                  twisted_dirac_index(d, adj, w, gamma, n[0], sw - delta);
      ++jumps;
      if (Rational(step) != jump) ++bad_jumps;
    }
  }
  return {mismatches == 0 && bad_jumps == 0,
          fmt("100 A2 inputs, %ld mismatches; %ld jumps, %ld wrong (need 0)", mismatches, jumps, bad_jumps)};
}

}  // namespace

int main() {
  criterion(1, "bogomolny_residual", bogomolny);
  criterion(2, "bps_asymptotics", asymptotics);
  criterion(3, "fundamental_energy", energy);
  criterion(4, "sd_error_scaling", error_scaling);
  criterion(5, "alcove_containment", containment);
  criterion(6, "charge_and_holonomy", charge_and_holonomy);
  criterion(7, "index_vanishing", index_vanishing);
  criterion(8, "dynkin_identities", dynkin);
  criterion(9, "moduli_dimension", dimension);
  criterion(10, "twisted_index", twisted);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
