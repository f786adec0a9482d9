#include "caloron/rootsys.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace caloron;

namespace {

struct TypeData {
  int dimension;
  int coxeter;       // 1 + sum of root marks
  int dual_coxeter;  // 1 + sum of coroot marks
};

// Standard tables, independent of the root construction.
TypeData table(Series s, int n) {
  switch (s) {
    case Series::A: return {n * (n + 2), n + 1, n + 1};
    case Series::B: return {n * (2 * n + 1), 2 * n, 2 * n - 1};
    case Series::C: return {n * (2 * n + 1), 2 * n, n + 1};
    case Series::D: return {n * (2 * n - 1), 2 * n - 2, 2 * n - 2};
    case Series::E: return n == 6 ? TypeData{78, 12, 12} : n == 7 ? TypeData{133, 18, 18} : TypeData{248, 30, 30};
    case Series::F: return {52, 12, 9};
    case Series::G: return {14, 6, 4};
  }
  return {};
}

RVec theta_coroot(const RootDatum& d) { return scaled(d.lowest_coroot, -1); }

}  // namespace

TEST(RootDatum, DimensionAndCoxeterNumbersMatchTables) {
  for (auto& d : all_root_data(8)) {
    SCOPED_TRACE(d.type_string());
    TypeData t = table(d.series, d.rank);
    EXPECT_EQ(d.dimension(), t.dimension);
    // |R| = rank * h
    EXPECT_EQ(2 * static_cast<int>(d.positive_roots.size()), d.rank * t.coxeter);
    int comarks = 1;
    for (int m : d.marks) comarks += m;
    EXPECT_EQ(comarks, t.dual_coxeter);
  }
}

TEST(RootDatum, CartanMatricesOfRankTwo) {
  auto cartan = [](const RootDatum& d) {
    std::vector<std::vector<int>> c(d.rank, std::vector<int>(d.rank));
    for (int i = 0; i < d.rank; ++i)
      for (int j = 0; j < d.rank; ++j) c[i][j] = d.extended_cartan[i + 1][j + 1];
    return c;
  };
  using M = std::vector<std::vector<int>>;
  EXPECT_EQ(cartan(build_root_datum("A2")), (M{{2, -1}, {-1, 2}}));
  EXPECT_EQ(cartan(build_root_datum("B2")), (M{{2, -1}, {-2, 2}}));
  M g2 = cartan(build_root_datum("G2"));
  EXPECT_EQ(g2[0][0], 2);
  EXPECT_EQ(g2[0][1] * g2[1][0], 3);
}

TEST(RootDatum, ExtendedCartanHasCorootMarksAsNullVector) {
  for (auto& d : all_root_data(8)) {
    SCOPED_TRACE(d.type_string());
    for (int nu = 0; nu <= d.rank; ++nu) {
      int s = d.extended_cartan[0][nu];
      for (int mu = 1; mu <= d.rank; ++mu) s += d.marks[mu - 1] * d.extended_cartan[mu][nu];
      EXPECT_EQ(s, 0);
    }
  }
}

TEST(RootDatum, LongCorootsHaveKillingNormSquaredTwo) {
  for (auto& d : all_root_data(8)) {
    SCOPED_TRACE(d.type_string());
    RVec tv = theta_coroot(d);
    EXPECT_EQ(d.killing_scale * dot(tv, tv), Rational(2));
    Rational longest = 0;
    for (auto& a : d.positive_roots) longest = std::max(longest, dot(a, a));
    EXPECT_EQ(dot(d.lowest_root, d.lowest_root), longest);
  }
}

TEST(RootDatum, RhoPairsToOneWithSimpleCoroots) {
  for (auto& d : all_root_data(8))
    for (auto& cv : d.simple_coroots) EXPECT_EQ(dot(d.rho, cv), Rational(1)) << d.type_string();
}

TEST(RootDatum, FundamentalCoweightsAreDual) {
  for (auto& d : all_root_data(6))
    for (int i = 0; i < d.rank; ++i)
      for (int j = 0; j < d.rank; ++j)
        EXPECT_EQ(dot(d.simple_roots[i], d.fundamental_coweights[j]), Rational(i == j ? 1 : 0));
}

TEST(RootDatum, PositiveRootsAreNonNegativeCombinations) {
  for (auto& d : all_root_data(8))
    for (auto& a : d.positive_roots)
      for (auto& w : d.fundamental_coweights) {
        Rational c = dot(a, w);
        EXPECT_GE(c, Rational(0));
        EXPECT_EQ(c.denominator(), 1);
      }
}

TEST(RootDatum, InvalidTypesAreRejected) {
  for (std::string t : {"C2", "D3", "E5", "E9", "F3", "G3", "H2", "A0", "A", "Ax"})
    EXPECT_THROW(build_root_datum(t), Error) << t;
}

TEST(Alcove, BarycenterIsInteriorWithEqualMargins) {
  for (auto& d : all_root_data(8)) {
    SCOPED_TRACE(d.type_string());
    RVec w = alcove_barycenter(d);
    EXPECT_TRUE(in_open_alcove(d, w));
    AlcoveReport r = alcove_check(d, to_double(w));
    EXPECT_TRUE(r.inside);
    // alpha_mu(w) = b_mu / a_mu
    EXPECT_NEAR(r.margins[0], 1.0 / (d.rank + 1), 1e-12);
    for (int mu = 1; mu <= d.rank; ++mu) {
      double a_mu = to_double(-dot(d.lowest_root, d.fundamental_coweights[mu - 1]));
      EXPECT_NEAR(r.margins[mu] * a_mu, 1.0 / (d.rank + 1), 1e-12);
    }
  }
}

TEST(Alcove, ExactAndFloatingChecksAgreeOnRandomPoints) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> u(-30, 30);
  for (auto& d : all_root_data(4)) {
    for (int k = 0; k < 50; ++k) {
      RVec w(d.ambient_dim, Rational(0));
      for (int j = 0; j < d.rank; ++j) w = added(w, d.fundamental_coweights[j], Rational(u(rng), 31));
      EXPECT_EQ(in_open_alcove(d, w), alcove_check(d, to_double(w)).inside) << d.type_string();
    }
  }
}

TEST(Alcove, PointsOffTheCartanSubalgebraAreFlagged) {
  RootDatum d = build_root_datum("A1");
  AlcoveReport r = alcove_check(d, {0.3, 0.1});
  EXPECT_FALSE(r.in_h);
  EXPECT_FALSE(r.inside);
}

TEST(Charges, DecomposeAndRecombine) {
  RootDatum a1 = build_root_datum("A1");
  EXPECT_EQ(decompose_charge(a1, {1}, 1), (std::vector<long>{1, 2}));
  EXPECT_THROW(decompose_charge(a1, {-2}, 1), Error);
  RootDatum e6 = build_root_datum("E6");
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> u(0, 9);
  for (int k = 0; k < 100; ++k) {
    std::vector<long> n;
    for (int mu = 0; mu <= e6.rank; ++mu) n.push_back(u(rng));
    EXPECT_EQ(decompose_charge(e6, charge_of(e6, n), n[0]), n);
  }
}

TEST(Charges, OneOfEachConstituentHasZeroCharge) {
  for (auto& d : all_root_data(8)) {
    std::vector<long> n{1};
    for (int m : d.marks) n.push_back(m);
    EXPECT_EQ(charge_of(d, n), std::vector<long>(d.rank, 0)) << d.type_string();
  }
}

TEST(Weights, StandardRepresentationsAreWeylInvariant) {
  for (auto& d : all_root_data(5)) EXPECT_TRUE(is_weyl_invariant(d, adjoint_weights(d))) << d.type_string();
  RootDatum a3 = build_root_datum("A3");
  EXPECT_TRUE(is_weyl_invariant(a3, defining_weights(a3)));
  WeightList broken = defining_weights(a3);
  broken.weights.pop_back();
  EXPECT_FALSE(is_weyl_invariant(a3, broken));
  EXPECT_THROW(defining_weights(build_root_datum("B3")), Error);
}

TEST(Embeddings, Su2RelationsAndCorootImage) {
  RootDatum d = build_root_datum("A3");
  for (int mu = 0; mu <= d.rank; ++mu) {
    auto t = su2_embedding_matrices(d, mu);
    for (int a = 0; a < 3; ++a) {
      int b = (a + 1) % 3, c = (a + 2) % 3;
      EXPECT_LT((commutator(t[a], t[b]) + 2.0 * t[c]).norm(), 1e-14);
    }
    Su2Embedding e = su2_embedding(d, mu);
    std::vector<double> cv = to_double(e.image_coroot);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(t[2](k, k).imag(), cv[k], 1e-14);
    EXPECT_EQ(e.complement_dim, d.dimension() - d.rank - 2);
  }
  EXPECT_THROW(su2_embedding_matrices(build_root_datum("C3"), 1), Error);
}
