#include "caloron/assembler.hpp"
#include "caloron/fieldcalc.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace caloron;

namespace {

// Root of R - exp(-c R / eps) / eps by bisection.
double radius_oracle(double eps, double c) {
  long double lo = 0, hi = 1.0L / eps;
  for (int k = 0; k < 200; ++k) {
    long double mid = 0.5L * (lo + hi);
    if (mid - std::exp(-c * mid / eps) / eps > 0)
      hi = mid;
    else
      lo = mid;
  }
  return static_cast<double>(0.5L * (lo + hi));
}

CaloronSpec su2_spec(double eps, std::vector<ConstituentSpec> cs) {
  CaloronSpec s;
  s.epsilon = eps;
  s.rank = 1;
  s.omega = {0.25, -0.25};
  s.constituents = std::move(cs);
  return s;
}

CaloronSpec su3_spec(double eps) {
  CaloronSpec s;
  s.epsilon = eps;
  s.rank = 2;
  s.omega = {1.0 / 3, 0.0, -1.0 / 3};
  s.constituents = {{0, Vec3(1, 0, 0), 0.0}, {1, Vec3(-0.5, 0.866, 0), 0.3}, {2, Vec3(-0.5, -0.866, 0.2), 1.0}};
  return s;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::numerical;
}

}  // namespace

TEST(GluingRadius, MatchesTheBisectionOracle) {
  for (double eps : {0.3, 0.1, 0.03, 1e-3})
    for (double c : {0.1, 0.25, 1.0, 3.0}) {
      double r = gluing_radius(eps, c);
      EXPECT_NEAR(r, radius_oracle(eps, c), 1e-12 * r) << eps << ' ' << c;
      EXPECT_NEAR(r * eps, std::exp(-c * r / eps), 1e-12);
    }
  EXPECT_THROW(gluing_radius(0.0, 1.0), Error);
  EXPECT_THROW(gluing_radius(0.1, -1.0), Error);
}

TEST(GluingRadius, FrozenValue) {
  // W(100) / 10
  EXPECT_NEAR(gluing_radius(0.1, 1.0), 0.33856301, 1e-8);
}

TEST(GluingRadius, ApproachesTwoOverCTimesEpsLogEps) {
  for (double c : {0.25, 1.0}) {
    double prev = 1e300;
    for (double eps : {1e-2, 1e-4, 1e-8, 1e-16}) {
      double ratio = gluing_radius(eps, c) / (eps * std::abs(std::log(eps)));
      double gap = std::abs(ratio - 2.0 / c);
      EXPECT_LT(gap, prev);
      prev = gap;
    }
    EXPECT_LT(prev, 0.1 * 2.0 / c);
  }
}

TEST(Assemble, AutomaticGluingConstantIsHalfTheSlowestDecay) {
  EXPECT_DOUBLE_EQ(assemble(su2_spec(0.1, {{1, Vec3::Zero(), 0}})).c, 0.25);
  Assembly a = assemble(su3_spec(0.02));
  EXPECT_NEAR(a.c, 1.0 / 6, 1e-15);
  EXPECT_EQ(a.counts, (std::vector<long>{1, 1, 1}));
  EXPECT_EQ(a.charge, (std::vector<long>{0, 0}));
  CaloronSpec fixed = su3_spec(0.02);
  fixed.gluing_c = 1.0;
  EXPECT_DOUBLE_EQ(assemble(fixed).c, 1.0);
  EXPECT_DOUBLE_EQ(assemble(fixed).R, gluing_radius(0.02, 1.0));
}

TEST(Assemble, RejectsInvalidSpecs) {
  EXPECT_EQ(kind_of([] { assemble(su2_spec(0.1, {{1, Vec3::Zero(), 0}, {0, Vec3(0.5, 0, 0), 0}})); }),
            ErrorKind::gluing_infeasible);
  try {
    assemble(su2_spec(0.1, {{1, Vec3::Zero(), 0}, {0, Vec3(0.5, 0, 0), 0}}));
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("decrease epsilon"), std::string::npos);
  }
  EXPECT_EQ(kind_of([] { assemble(su2_spec(0.1, {{2, Vec3::Zero(), 0}})); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([] { assemble(su2_spec(0.1, {{1, Vec3::Zero(), 0}, {0, Vec3::Zero(), 0}})); }),
            ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([] { assemble(su2_spec(-0.1, {})); }), ErrorKind::invalid_input);
  CaloronSpec out = su2_spec(0.1, {});
  out.omega = {0.6, -0.6};
  EXPECT_EQ(kind_of([&] { assemble(out); }), ErrorKind::not_in_alcove);
  out.omega = {0.3, 0.1};
  EXPECT_EQ(kind_of([&] { assemble(out); }), ErrorKind::invalid_input);
  CaloronSpec b2 = su2_spec(0.1, {});
  b2.series = Series::B;
  b2.rank = 2;
  b2.omega = to_double(alcove_barycenter(build_root_datum("B2")));
  b2.constituents = {{1, Vec3::Zero(), 0}};
  EXPECT_EQ(kind_of([&] { assemble(b2); }), ErrorKind::unsupported);
}

TEST(Assemble, LocalHolonomyIsShiftedByTheOtherConstituents) {
  CaloronSpec s = su3_spec(0.02);
  RootDatum d = build_root_datum("A2");
  Assembly a = assemble(s);
  for (std::size_t k = 0; k < 3; ++k) {
    std::vector<double> expected = s.omega;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j == k) continue;
      double dist = (s.constituents[j].position - s.constituents[k].position).norm();
      std::vector<double> cv = to_double(d.coroot(s.constituents[j].mu));
      for (int m = 0; m < 3; ++m) expected[m] -= s.epsilon * cv[m] / (2 * dist);
    }
    for (int m = 0; m < 3; ++m) EXPECT_NEAR(a.local_omega[k][m], expected[m], 1e-15);
    EXPECT_TRUE(alcove_check(d, a.local_omega[k]).inside);
  }
}

TEST(Fundamental, FramedHiggsLiesOnTheFacetLine) {
  RootDatum d = build_root_datum("A2");
  std::vector<double> w{1.0 / 3, 0.0, -1.0 / 3};
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int mu = 0; mu <= 2; ++mu) {
    FundamentalData f = fundamental_data(d, mu, w, 0.1);
    for (int k = 0; k < 5; ++k) {
      Vec3 y(u(rng), u(rng), u(rng));
      std::vector<double> h = framed_higgs_cartan(f, y), v(3);
      for (int m = 0; m < 3; ++m) v[m] = h[m] - f.omega_prime[m];
      double along = 0, cc = 0;
      for (int m = 0; m < 3; ++m) along += v[m] * f.coroot[m], cc += f.coroot[m] * f.coroot[m];
      for (int m = 0; m < 3; ++m) EXPECT_NEAR(v[m], along / cc * f.coroot[m], 1e-12) << mu;
    }
  }
}

TEST(Fundamental, EnergyIsTheRootPairing) {
  RootDatum d = build_root_datum("A2");
  std::vector<double> w{0.3, 0.05, -0.35};
  for (int mu = 0; mu <= 2; ++mu) {
    auto s = fundamental_caloron(d, mu, w, 1.0, Vec3::Zero());
    double expected = bps_decay_constant(d, mu, w);
    EXPECT_NEAR(integrate_energy(*s, grid_preset("desk")), expected, 5e-3 * expected) << mu;
  }
}

TEST(ApproximateCaloron, ChartsDifferByTheDiracStringGauge) {
  CaloronSpec s = su3_spec(0.02);
  auto a = approximate_caloron(s);
  RootDatum d = build_root_datum("A2");
  const Vec3 x(0.1, 0.4, 1.3);
  Chart north = a->chart_at(x);
  ASSERT_EQ(north.core, -1);
  for (std::size_t k = 0; k < 3; ++k) {
    ASSERT_EQ((north.south >> k) & 1, 0u);
    Chart south = north;
    south.south |= std::uint64_t{1} << k;
    FieldSample fn = a->sample(x, 0.0, north), fs = a->sample(x, 0.0, south);
    Vec3 y = x - s.constituents[k].position;
    Vec3 grad_phi = Vec3(-y.y(), y.x(), 0) / (y.x() * y.x() + y.y() * y.y());
    Mat g = diag_i(to_double(d.coroot(s.constituents[k].mu)));
    for (int i = 0; i < 3; ++i) EXPECT_LT((fn.a[i] - fs.a[i] - grad_phi(i) * g).norm(), 1e-13);
    EXPECT_LT((fn.a[3] - fs.a[3]).norm(), 1e-15);
  }
}

TEST(ApproximateCaloron, SelfDualPartIsConfinedToTheAnnuli) {
  CaloronSpec s = su3_spec(0.02);
  auto a = approximate_caloron(s);
  const double R = a->gluing_radius();
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t k = 0; k < 3; ++k)
    for (double f : {0.1, 0.3, 0.45, 1.2, 2.0}) {
      double ct = 2 * u(rng) - 1, st = std::sqrt(1 - ct * ct), ph = 2 * pi * u(rng);
      Vec3 x = s.constituents[k].position + f * R * Vec3(st * std::cos(ph), st * std::sin(ph), ct);
      Curvature F = curvature_at(*a, x, 0.7);
      EXPECT_LT(F.plus_norm2(), 1e-10 * F.norm2()) << k << ' ' << f;
    }
}

TEST(ApproximateCaloron, CurvatureIsContinuousAcrossTheCoreChart) {
  CaloronSpec s = su3_spec(0.02);
  auto a = approximate_caloron(s);
  const double R = a->gluing_radius();
  const Vec3 dir = Vec3(0.3, -0.2, 0.9).normalized();
  for (std::size_t k = 0; k < 3; ++k) {
    Vec3 in = s.constituents[k].position + 0.25 * R * (1 - 1e-6) * dir;
    Vec3 out = s.constituents[k].position + 0.25 * R * (1 + 1e-6) * dir;
    ASSERT_GE(a->chart_at(in).core, 0);
    ASSERT_EQ(a->chart_at(out).core, -1);
    double fi = curvature_at(*a, in, 1.1).norm2(), fo = curvature_at(*a, out, 1.1).norm2();
    EXPECT_NEAR(fi, fo, 1e-4 * fi);
  }
}

TEST(ApproximateCaloron, LocalTermVanishesForOneConstituentAndGrowsLinearly) {
  auto one = approximate_caloron(su2_spec(0.05, {{1, Vec3::Zero(), 0}}));
  const double R1 = one->gluing_radius();
  AnnulusTerms t = one->annulus_terms(Vec3(0.3, 0.4, 0.5).normalized() * 0.7 * R1, 0.0);
  EXPECT_EQ(t.constituent, 0);
  EXPECT_LT(t.a_local, 1e-15);
  EXPECT_GT(t.a_bps, 0.0);

  auto two = approximate_caloron(su2_spec(0.05, {{1, Vec3::Zero(), 0}, {0, Vec3(4, 0, 0), 0}}));
  const double R = two->gluing_radius();
  const Vec3 dir = Vec3(0.1, 0.7, 0.2).normalized();
  AnnulusTerms lo = two->annulus_terms(0.5 * R * dir, 0.0), hi = two->annulus_terms(R * (1 - 1e-9) * dir, 0.0);
  EXPECT_NEAR(hi.a_local / lo.a_local, 2.0, 0.2);
  EXPECT_LT(hi.a_bps, lo.a_bps);
}

TEST(Containment, SingularHiggsStaysInTheAlcove) {
  RootDatum d = build_root_datum("A2");
  CaloronSpec s = su3_spec(0.02);
  double sigma_inf = alcove_check(d, s.omega).min_margin;
  Containment c = alcove_containment(s);
  EXPECT_GE(c.sigma, 0.5 * sigma_inf);
  EXPECT_GT(c.samples, 1000u);
  EXPECT_DOUBLE_EQ(c.c_factor, containment_factor(d, s.omega));
  // deep inside the Dirac cores the margin is lost
  Containment close = alcove_containment(s, 0, 0.05);
  EXPECT_LT(close.sigma, c.sigma);
}

TEST(FarField, DirectionIsTransverseToACollinearDipole) {
  Assembly one = assemble(su2_spec(0.05, {{1, Vec3::Zero(), 0}}));
  EXPECT_TRUE(far_field_direction(one).isApprox(Vec3::UnitZ()));
  Assembly two = assemble(su2_spec(0.05, {{1, Vec3(-1, 0, 0), 0}, {0, Vec3(2, 0, 0), 0}}));
  EXPECT_LT(std::abs(far_field_direction(two).x()), 1e-12);
}

TEST(FarField, ModelPhasesMatchTheHolonomyOfTheApproximateCaloron) {
  CaloronSpec s = su2_spec(0.05, {{1, Vec3::Zero(), 0}});
  auto a = approximate_caloron(s);
  const double r = 30.0;
  std::vector<double> m = model_phases(a->assembly(), r);
  const double x = 2 * pi * (0.25 - 0.05 / (2 * r));
  EXPECT_NEAR(m[0], -x, 1e-14);
  EXPECT_NEAR(m[1], x, 1e-14);
  EXPECT_LT(phase_set_distance(holonomy_phases(*a, r * Vec3(0.6, 0, 0.8)), m), 1e-10);
}
