#pragma once

// Sampled verification sweeps over the group, its Lie algebra, subalgebra
// classification, the H4 fixed points and the one-variable functional
// equation. Each returns a VerificationReport with one Check per property.

#include <functional>

#include "solvloop/group.hpp"
#include "solvloop/random.hpp"
#include "solvloop/report.hpp"

namespace solvloop {

/// Product, inverse and associativity against the 4x4 matrix representation.
/// Matrix comparisons are relative to the entrywise bound |M(g)| |M(h)|;
/// coordinate comparisons use scaled_distance.
VerificationReport group_oracle_check(const GroupParam& p, const SamplerConfig& sampler);

/// Bracket table against matrix commutators on dyadic inputs (exact),
/// antisymmetry, Jacobi, one-parameter subgroups of the canonical generators,
/// bracket preservation by random automorphisms and triviality of the center.
VerificationReport algebra_check(const GroupParam& p, const SamplerConfig& sampler);

/// Classifies sampled generators (boundary cases b1 = 0, b2 = 0, b3 = 0
/// included) and checks that every returned automorphism moves the generator
/// into the canonical span and preserves brackets.
VerificationReport classification_sweep(const GroupParam& p, const SamplerConfig& sampler);

/// Residual of fixed_point_witness for random g with |g4| in [lo, hi].
VerificationReport fixed_point_check(const GroupParam& p, const SamplerConfig& sampler,
                                     double g4_lo = 0.1, double g4_hi = 3.0);

struct FunctionalEquationConfig {
  std::size_t samples = 50;
  double half_width = 2.0;  // evenly spaced z in [-w, w]
  double rate = 1.0;
  double fit_tol = 1e-9;
  double equation_tol = 1e-12;
};

/// Fits f(z) ~ K (1 - e^{-rate z}) and checks
/// f(z2) + e^{-rate z2} f(z1) = f(z1 + z2) on all sample pairs.
VerificationReport functional_equation_check(const std::function<double(double)>& f,
                                             const FunctionalEquationConfig& cfg = {});

}  // namespace solvloop
