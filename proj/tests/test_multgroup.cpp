#include <gtest/gtest.h>

#include <cmath>

#include "solvloop/multgroup.hpp"

using namespace solvloop;

TEST(Normalizes, Examples) {
  const GroupParam p(2);
  EXPECT_TRUE(normalizes(p, {}, SubgroupId::H1));
  EXPECT_FALSE(normalizes(p, {0, 0, 0, 1}, SubgroupId::H1));
  EXPECT_TRUE(normalizes(p, {1, 2, 3, 0}, SubgroupId::H1));
  // Conjugate of (0,0,1,0) by (0,0,0,1), by hand.
  const GroupElement g{0, 0, 0, 1};
  const GroupElement c = mul(p, mul(p, g, {0, 0, 1, 0}), inv(p, g));
  EXPECT_NEAR(c.x2, std::exp(1.0), 1e-14);
  EXPECT_NEAR(c.x3, std::exp(1.0), 1e-14);
}

TEST(Normalizes, Errors) {
  EXPECT_THROW(normalizes(GroupParam(1), {}, SubgroupId::H2), InadmissibleSubgroup);
  EXPECT_THROW(normalizes(GroupParam(2), {}, SubgroupId::H4), std::invalid_argument);
}

TEST(Normalizes, IffFourthCoordinateVanishes) {
  Rng rng(77);
  for (double a : {-1.0, 0.5, 1.0, 2.0}) {
    const GroupParam p(a);
    for (SubgroupId s : {SubgroupId::H1, SubgroupId::H2, SubgroupId::H3}) {
      if (!admissible(p, s)) continue;
      for (int i = 0; i < 2000; ++i) {
        GroupElement g = rng.element(5);
        if (i % 2 == 0) {
          g.x4 = 0;
          ASSERT_TRUE(normalizes(p, g, s));
        } else {
          g.x4 = rng.signed_magnitude(1e-3, 5);
          ASSERT_FALSE(normalizes(p, g, s)) << a << " " << g.x4;
        }
      }
    }
  }
}

TEST(Theorem2, CertificateForAllTestedParameters) {
  for (double a : {-1.0, 0.5, 1.0, 2.0}) {
    const Theorem2Certificate c = theorem2_certificate(GroupParam(a), {1000, 5, 1});
    EXPECT_TRUE(c.center_trivial);
    EXPECT_TRUE(c.contradiction);
    EXPECT_EQ(c.records.size(), a == 1 ? 1u : 3u);
    for (const auto& r : c.records) {
      EXPECT_EQ(r.normalizer_dim_estimate, 3);
      EXPECT_EQ(r.slab_normalizing, r.slab_samples);
      EXPECT_EQ(r.off_slab_normalizing, 0u);
    }
  }
}

TEST(Theorem2, StableAcrossSampleSizes) {
  for (std::size_t n : {100u, 1000u, 10000u}) {
    EXPECT_TRUE(theorem2_certificate(GroupParam(0.5), {n, 5, 3}).contradiction) << n;
  }
}
