#include <gtest/gtest.h>

#include <cmath>

#include "solvloop/loop.hpp"

using namespace solvloop;

namespace {

LoopCase make(SectionCase c, double a, const std::string& fn) {
  const GroupParam p(a);
  return LoopCase(SectionSpec(c, p, FunctionSpec::expression(fn, arity_for(c))));
}

LoopCase make(SectionCase c, double a, Preset k, std::vector<double> coeffs = {}) {
  const GroupParam p(a);
  return LoopCase(SectionSpec(c, p, make_preset(c, p, k, std::move(coeffs))));
}

void expect_point(const LoopPoint& got, const LoopPoint& want, double tol) {
  EXPECT_NEAR(got.x, want.x, tol);
  EXPECT_NEAR(got.y, want.y, tol);
  EXPECT_NEAR(got.z, want.z, tol);
}

// sigma(m1) * embed(m2) through 4x4 matrices, read back through the chart.
LoopPoint matrix_coset_product(const LoopCase& c, const LoopPoint& m1, const LoopPoint& m2) {
  const auto& p = c.spec().param();
  const SubgroupId s = c.spec().subgroup();
  const Matrix4 prod = as_matrix(p, section_lift(c.spec(), m1)) * as_matrix(p, embed(p, s, m2));
  return decompose(p, s, from_matrix(p, prod, 1e-6)).rep;
}

}  // namespace

TEST(LoopMul, Identity) {
  for (SectionCase c : {SectionCase::A, SectionCase::B, SectionCase::C}) {
    const LoopCase lc = make(c, 2, Preset::LinearX);
    const LoopPoint m{1.5, -2, 0.7};
    EXPECT_EQ(loop_mul(lc, {}, m), m);
    EXPECT_EQ(loop_mul(lc, m, {}), m);
  }
}

TEST(LoopMul, CaseAExamples) {
  const LoopCase lin = make(SectionCase::A, 2, "x");
  expect_point(loop_mul(lin, {1, 1, 0}, {2, 3, 5}), {3, -1, 5}, 1e-14);
  const LoopCase zero = make(SectionCase::A, 2, Preset::Zero);
  expect_point(loop_mul(zero, {0, 0, 1}, {1, 0, 0}), {std::exp(2.0), 0, 1}, 1e-14);
}

TEST(LoopDiv, CaseAExamples) {
  const LoopCase lin = make(SectionCase::A, 2, "x");
  expect_point(loop_ldiv(lin, {1, 1, 0}, {3, -1, 5}), {2, 3, 5}, 1e-14);
  expect_point(loop_rdiv(lin, {3, -1, 5}, {2, 3, 5}), {1, 1, 0}, 1e-14);
  EXPECT_EQ(loop_ldiv(lin, {}, {3, -1, 5}), (LoopPoint{3, -1, 5}));
  EXPECT_EQ(loop_rdiv(lin, {3, -1, 5}, {}), (LoopPoint{3, -1, 5}));
}

TEST(LoopDiv, CaseCZeroRightDivision) {
  const LoopCase c = make(SectionCase::C, 2, Preset::Zero);
  expect_point(loop_rdiv(c, {std::exp(2.0), 0, 1}, {1, 0, 0}), {0, 0, 1}, 1e-12);
}

TEST(LoopDiv, RoundTripsAllCases) {
  for (SectionCase sc : {SectionCase::A, SectionCase::B, SectionCase::C}) {
    for (Preset k : {Preset::Zero, Preset::LinearX, Preset::Lemma1, Preset::SinSmall}) {
      const LoopCase c = make(sc, 0.5, k);
      Rng rng(2);
      for (int i = 0; i < 200; ++i) {
        const LoopPoint m1 = rng.point(5);
        const LoopPoint m2 = rng.point(3);
        const LoopPoint prod = loop_mul(c, m1, m2);
        expect_point(loop_ldiv(c, m1, prod), m2, 1e-8 * std::max(1.0, std::abs(prod.x)));
        const LoopPoint r = loop_rdiv(c, prod, m2);
        EXPECT_LE(scaled_distance(loop_mul(c, r, m2), prod), 1e-8);
      }
    }
  }
}

TEST(CosetCrossCheck, AgreesWithMatrixComputation) {
  const LoopCase a = make(SectionCase::A, 2, "x + z^2");
  const LoopCase c = make(SectionCase::C, 2, "0.1*sin(x)");
  const LoopCase b = make(SectionCase::B, -1, "x*y - z");
  for (const LoopCase* lc : {&a, &b, &c}) {
    Rng rng(9);
    EXPECT_EQ(coset_cross_check(*lc, {}, {1, 2, 3}), 0);
    for (int i = 0; i < 500; ++i) {
      const LoopPoint m1 = rng.point(3);
      const LoopPoint m2 = rng.point(3);
      EXPECT_LE(coset_cross_check(*lc, m1, m2), 1e-10);
      const LoopPoint via_matrix = matrix_coset_product(*lc, m1, m2);
      const LoopPoint formula = loop_mul(*lc, m1, m2);
      const double scale = std::max({1.0, std::abs(formula.x), std::abs(formula.y)});
      EXPECT_LE(max_abs_distance(via_matrix, formula) / scale, 1e-9);
    }
  }
}

TEST(Associativity, GroupCasesAndProperWitness) {
  const LoopPoint m1{0.5, -1, 0.3}, m2{1, 2, -0.7}, m3{-0.4, 0.2, 1.1};
  EXPECT_LE(associativity_defect(make(SectionCase::A, 2, Preset::Zero), m1, m2, m3), 1e-13);
  EXPECT_LE(associativity_defect(make(SectionCase::B, 2, Preset::Zero), m1, m2, m3), 1e-13);
  EXPECT_GT(associativity_defect(make(SectionCase::C, 2, Preset::Zero), m1, m2, m3), 1e-3);
  // f = -x passes both degeneracy identities, yet its section image is not
  // closed under multiplication for z != 0.
  EXPECT_GT(associativity_defect(make(SectionCase::C, 2, "-x"), m1, m2, m3), 1e-3);

  const LoopCase lin = make(SectionCase::A, 2, "x");
  EXPECT_GT(associativity_defect(lin, {0, 0, 1}, {1, 0, 0}, {0, 0, -1}), 0.1);
  const LoopCase bil = make(SectionCase::A, 2, "x*z");
  EXPECT_GT(associativity_search(bil, {200, 5, 1}).defect, 1e-6);
}

TEST(AxiomSuite, CaseAPassesEvenWhenDegenerate) {
  const LoopCase lin = make(SectionCase::A, 2, "x");
  const VerificationReport r = axiom_suite(lin, {1000, 5, 1});
  EXPECT_EQ(r.status(), Status::Pass);
  EXPECT_LE(r.find("ldiv-roundtrip")->max_error, 1e-9);
  const LoopCase bil = make(SectionCase::A, 2, "x*z");
  EXPECT_FALSE(bil.proper());
  EXPECT_EQ(axiom_suite(bil, {300, 5, 1}).status(), Status::Pass);
}

TEST(AxiomSuite, NonUniqueSectionReportsMultipleRoots) {
  const LoopCase bad = make(SectionCase::B, 2, "3*sin(x)");
  const VerificationReport r = axiom_suite(bad, {100, 5, 3});
  EXPECT_EQ(r.find("rdiv-unique")->status, Status::Fail);
  bool saw = false;
  for (const auto& s : r.samples) saw = saw || s.note.rfind("MultipleRoots", 0) == 0;
  EXPECT_TRUE(saw);
}

TEST(RightDivision, ErrorKinds) {
  const LoopCase bad = make(SectionCase::B, 2, "3*sin(x)");
  RdivOptions opts;
  opts.expansions = 0;
  int multiple = 0;
  Rng rng(6);
  for (int i = 0; i < 30; ++i) {
    try {
      loop_rdiv(bad, rng.point(5), rng.point(5), opts);
    } catch (const DivisionError& e) {
      if (e.kind() == DivisionError::Kind::MultipleRoots) ++multiple;
    }
  }
  EXPECT_GT(multiple, 0);
}

TEST(NormalSubloop, CaseAOnly) {
  const LoopCase lin = make(SectionCase::A, -1, "x + z");
  EXPECT_EQ(normal_subloop_check(lin, {500, 5, 2}).status(), Status::Pass);
  EXPECT_THROW(normal_subloop_check(make(SectionCase::B, 2, Preset::Zero), {10, 5, 1}),
               std::invalid_argument);
}

TEST(LoopCase, CachesVerdict) {
  EXPECT_TRUE(make(SectionCase::A, 2, Preset::LinearX).proper());
  EXPECT_FALSE(make(SectionCase::A, 2, Preset::Lemma1).proper());
  EXPECT_FALSE(make(SectionCase::C, 2, "-x").proper());
}
