#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "solvloop/group.hpp"
#include "solvloop/random.hpp"

using namespace solvloop;

namespace {

// Plain triple-loop matrix product, independent of Matrix4::operator*.
Matrix4 naive_product(const Matrix4& a, const Matrix4& b) {
  Matrix4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0;
      for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

Matrix4 displayed(double a, double x1, double x2, double x3, double x4) {
  Matrix4 m;
  m(0, 0) = std::exp(a * x4);
  m(0, 3) = x1;
  m(1, 1) = std::exp(x4);
  m(1, 2) = x4 * std::exp(x4);
  m(1, 3) = x2;
  m(2, 2) = std::exp(x4);
  m(2, 3) = x3;
  m(3, 3) = 1;
  return m;
}

void expect_near(const GroupElement& g, const GroupElement& h, double tol) {
  EXPECT_NEAR(g.x1, h.x1, tol);
  EXPECT_NEAR(g.x2, h.x2, tol);
  EXPECT_NEAR(g.x3, h.x3, tol);
  EXPECT_NEAR(g.x4, h.x4, tol);
}

}  // namespace

TEST(GroupParam, RejectsZeroAndNonFinite) {
  EXPECT_THROW(GroupParam(0.0), std::invalid_argument);
  EXPECT_THROW(GroupParam(NAN), std::invalid_argument);
  EXPECT_TRUE(GroupParam(1.0).a_is_one());
  EXPECT_FALSE(GroupParam(2.0).a_is_one());
}

TEST(Mul, IdentityAndTranslations) {
  const GroupParam p(2);
  EXPECT_EQ(mul(p, {}, {5, 6, 7, 8}), (GroupElement{5, 6, 7, 8}));
  EXPECT_EQ(mul(p, {1, 2, 3, 0}, {4, 5, 6, 0}), (GroupElement{5, 7, 9, 0}));
}

TEST(Mul, MatchesMatrixOracle) {
  const GroupParam p(2);
  const double e = std::numbers::e;
  const GroupElement g = mul(p, {1, 0, 0, 1}, {1, 1, 1, 1});
  expect_near(g, {1 + e * e, 2 * e, e, 2}, 1e-12);

  const Matrix4 prod = naive_product(displayed(2, 1, 0, 0, 1), displayed(2, 1, 1, 1, 1));
  EXPECT_NEAR(prod(0, 3), g.x1, 1e-12);
  EXPECT_NEAR(prod(1, 3), g.x2, 1e-12);
  EXPECT_NEAR(prod(2, 3), g.x3, 1e-12);
}

TEST(Mul, RandomPairsAgreeWithNaiveMatrixProduct) {
  for (double a : {-1.0, 0.5, 1.0, 2.0}) {
    const GroupParam p(a);
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
      const GroupElement g = rng.element(5);
      const GroupElement h = rng.element(5);
      const Matrix4 want = naive_product(displayed(a, g.x1, g.x2, g.x3, g.x4),
                                         displayed(a, h.x1, h.x2, h.x3, h.x4));
      const Matrix4 got = as_matrix(p, mul(p, g, h));
      const double scale = std::max(1.0, want.max_abs());
      for (int k = 0; k < 16; ++k) ASSERT_NEAR(got.m[k], want.m[k], 1e-12 * scale);
    }
  }
}

TEST(AsMatrix, DisplayedEntries) {
  const GroupParam p(1);
  const double e = std::numbers::e;
  const Matrix4 m = as_matrix(p, {1, 2, 3, 1});
  EXPECT_DOUBLE_EQ(m(0, 0), e);
  EXPECT_DOUBLE_EQ(m(1, 1), e);
  EXPECT_DOUBLE_EQ(m(2, 2), e);
  EXPECT_DOUBLE_EQ(m(1, 2), e);
  EXPECT_EQ(m(0, 3), 1);
  EXPECT_EQ(m(1, 3), 2);
  EXPECT_EQ(m(2, 3), 3);
  EXPECT_EQ(m(3, 3), 1);
  const Matrix4 id = as_matrix(p, {});
  for (int k = 0; k < 16; ++k) EXPECT_EQ(id.m[k], Matrix4::identity().m[k]);
}

TEST(Inv, ClosedForms) {
  const GroupParam p(1);
  EXPECT_EQ(inv(p, {}), GroupElement{});
  expect_near(inv(p, {1, 2, 3, 0}), {-1, -2, -3, 0}, 0);
  const GroupElement g{1, 1, 1, std::log(2.0)};
  expect_near(mul(p, g, inv(p, g)), {}, 1e-12);
  expect_near(mul(p, inv(p, g), g), {}, 1e-12);
}

TEST(FromMatrix, RoundTripAndRejection) {
  const GroupParam p(0.5);
  const GroupElement g{0.3, -1.2, 2.5, 0.7};
  expect_near(from_matrix(p, as_matrix(p, g)), g, 1e-14);
  Matrix4 bad = as_matrix(p, g);
  bad(1, 0) = 1;
  EXPECT_THROW(from_matrix(p, bad), std::domain_error);
}

TEST(Bracket, Table) {
  const GroupParam p(3);
  using V = AlgebraVector;
  EXPECT_EQ(bracket(p, V::e1(), V::e4()), V::e1() * 3);
  EXPECT_EQ(bracket(p, V::e1(), V::e2()), V{});
  EXPECT_EQ(bracket(p, V::e2(), V::e4()), V::e2());
  EXPECT_EQ(bracket(p, V::e3(), V::e4()), V::e2() + V::e3());
  EXPECT_EQ(bracket(p, V::e4(), V::e3()), (V{0, -1, -1, 0}));
}

TEST(Bracket, NegatedMatrixCommutatorOnDyadics) {
  const GroupParam p(0.5);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    auto q = [&] { return std::floor(rng.uniform(-8, 9)) / 8.0; };
    const AlgebraVector u{q(), q(), q(), q()};
    const AlgebraVector v{q(), q(), q(), q()};
    const Matrix4 mu = algebra_matrix(p, u);
    const Matrix4 mv = algebra_matrix(p, v);
    const Matrix4 c = naive_product(mu, mv) - naive_product(mv, mu);
    EXPECT_EQ(bracket(p, u, v), algebra_from_matrix(p, c) * -1.0);
  }
}

TEST(StructureConstants, AntisymmetryAndJacobiExact) {
  for (double a : {-1.0, 0.5, 1.0, 2.0, 0.3}) {
    const StructureConstants sc{GroupParam(a)};
    EXPECT_EQ(sc.antisymmetry_defect(), 0);
    EXPECT_EQ(sc.jacobi_defect(), 0);
  }
}

TEST(ExpAlg, NilpotentAndDiagonalDirections) {
  const GroupParam p(2);
  using V = AlgebraVector;
  expect_near(exp_alg(p, V::e3(), 1.5), {0, 0, 1.5, 0}, 1e-13);
  expect_near(exp_alg(p, V::e1() + V::e2(), -0.75), {-0.75, -0.75, 0, 0}, 1e-13);
  const GroupElement g = exp_alg(p, V::e4(), 1.0);
  expect_near(g, {0, 0, 0, 1}, 1e-12);
  EXPECT_NEAR(as_matrix(p, g)(1, 2), std::numbers::e, 1e-12);
}

TEST(ExpAlg, OneParameterProperty) {
  const GroupParam p(-1);
  const AlgebraVector v{0.3, -0.7, 1.1, 0.9};
  for (double s : {-1.0, 0.25, 1.3})
    for (double t : {-0.6, 0.5, 1.1}) {
      const GroupElement lhs = exp_alg(p, v, s + t);
      const GroupElement rhs = mul(p, exp_alg(p, v, s), exp_alg(p, v, t));
      EXPECT_LE(scaled_distance(lhs, rhs), 1e-10);
    }
}

TEST(Automorphism, IdentityAndDisplayedImage) {
  const GroupParam p(2);
  const AlgebraVector v{1, 2, 3, 4};
  EXPECT_EQ(apply_automorphism(p, GenericAutomorphism{}, v), v);
  GenericAutomorphism phi;
  phi.l = 2;
  phi.n = 5;
  EXPECT_EQ(apply_automorphism(p, phi, AlgebraVector::e3()), (AlgebraVector{0, 5, 2, 0}));
}

TEST(Automorphism, VariantMismatchAndSingular) {
  EXPECT_THROW(apply_automorphism(GroupParam(2), UnitAutomorphism{}, AlgebraVector::e1()),
               AutomorphismError);
  GenericAutomorphism singular;
  singular.k = 0;
  EXPECT_THROW(apply_automorphism(GroupParam(2), singular, AlgebraVector::e1()),
               AutomorphismError);
  EXPECT_NO_THROW(apply_automorphism(GroupParam(1), GenericAutomorphism{}, AlgebraVector::e1()));
}

TEST(Automorphism, PreservesBrackets) {
  Rng rng(5);
  for (double a : {2.0, 1.0}) {
    const GroupParam p(a);
    for (int i = 0; i < 100; ++i) {
      AutomorphismParams phi;
      if (p.a_is_one()) {
        phi = UnitAutomorphism{rng.uniform(0.5, 2), rng.uniform(-2, 2), rng.uniform(0.5, 2),
                               rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                               rng.uniform(-2, 2), rng.uniform(-2, 2)};
      } else {
        phi = GenericAutomorphism{rng.uniform(0.5, 2), rng.uniform(0.5, 2), rng.uniform(-2, 2),
                                  rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
      }
      const AlgebraVector u{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3),
                            rng.uniform(-3, 3)};
      const AlgebraVector v{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3),
                            rng.uniform(-3, 3)};
      const AlgebraVector lhs = apply_automorphism(p, phi, bracket(p, u, v));
      const AlgebraVector rhs =
          bracket(p, apply_automorphism(p, phi, u), apply_automorphism(p, phi, v));
      EXPECT_LE((lhs - rhs).max_abs(), 1e-12 * std::max(1.0, lhs.max_abs()));
    }
  }
}

TEST(CentralDefect, ZeroVectorAndPositiveDirections) {
  const GroupParam p(2);
  const std::vector<GroupElement> probes{{0, 0, 0, 1}};
  EXPECT_EQ(central_defect(p, AlgebraVector{}, probes), 0);
  EXPECT_GT(central_defect(p, AlgebraVector::e1(), probes), 0.5);
  EXPECT_GT(central_defect(p, AlgebraVector::e2() + AlgebraVector::e3(), probes), 0.1);
  EXPECT_EQ(center_dimension(p), 0);
  EXPECT_EQ(center_dimension(GroupParam(1)), 0);
}
