#pragma once

// The three families of 3-dimensional loops L = G/H_i with multiplication
// m1 * m2 = sigma(m1) m2:
//
//   A (H1): (x1 + e^{a z1} x2,
//            y1 + e^{z1} y2 - z2 e^{z1} f(x1,z1),                     z1+z2)
//   B (H2): (x1 + e^{a z1}(x2 + h(m1)[1 - e^{(a-1) z2}]),
//            y1 + e^{z1}(y2 - z2 h(m1)),                                z1+z2)
//   C (H3): (x1 + e^{a z1}(x2 - y2 z1 e^{(a-1) z2} + f(m1)[1 - e^{(a-1) z2}]),
//            y1 + e^{z1} y2,                                            z1+z2)

#include <cstddef>
#include <stdexcept>
#include <string>

#include "solvloop/random.hpp"
#include "solvloop/report.hpp"
#include "solvloop/subgroups.hpp"

namespace solvloop {

class LoopCase {
 public:
  explicit LoopCase(SectionSpec spec, const DegeneracyConfig& degeneracy = {});

  const SectionSpec& spec() const noexcept { return spec_; }
  SectionCase section_case() const noexcept { return spec_.section_case(); }
  double a() const noexcept { return spec_.param().a(); }
  /// Generation verdict computed once on construction. A loop whose section
  /// does not generate G is still a valid loop (a group in fact); it just
  /// has a smaller group of left translations.
  const GenerationVerdict& verdict() const noexcept { return verdict_; }
  bool proper() const noexcept { return verdict_.generates; }

 private:
  SectionSpec spec_;
  GenerationVerdict verdict_;
};

LoopPoint loop_mul(const LoopCase& c, const LoopPoint& m1, const LoopPoint& m2);

/// Solves m1 * x = b (closed form in every case).
LoopPoint loop_ldiv(const LoopCase& c, const LoopPoint& m1, const LoopPoint& b);

class DivisionError : public std::runtime_error {
 public:
  enum class Kind { NoRootInBox, MultipleRoots, SolverDiverged };
  DivisionError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct RdivOptions {
  double half_width = 10.0;
  int expansions = 4;  // doublings of the search box before NoRootInBox
  SolveOptions solve;
};

/// Solves x * m2 = b. Closed form for case A; for B and C the implicit
/// section equations are solved in a box centred on section_equation_guess,
/// and the solution must be unique in that box.
LoopPoint loop_rdiv(const LoopCase& c, const LoopPoint& b, const LoopPoint& m2,
                    const RdivOptions& opts = {});

/// decompose(sigma(m1) * embed(m2)).rep against loop_mul(m1, m2), scaled by
/// the size of the group element.
double coset_cross_check(const LoopCase& c, const LoopPoint& m1, const LoopPoint& m2);

/// max_abs_distance((m1*m2)*m3, m1*(m2*m3)).
double associativity_defect(const LoopCase& c, const LoopPoint& m1, const LoopPoint& m2,
                            const LoopPoint& m3);

struct AssociativityWitness {
  double defect = 0;
  LoopPoint m1, m2, m3;
};

/// Largest associativity defect over sampled triples.
AssociativityWitness associativity_search(const LoopCase& c, const SamplerConfig& sampler);

/// Identity laws, division round trips, right-division uniqueness (B, C) and
/// z-additivity on sampled points. Right division is tested on b = m1 * m2
/// with m1, m2 in the sample box. Round-trip residuals are relative to the
/// largest summand of the product, so quotients far outside the box do not
/// count cancellation error against the solver.
VerificationReport axiom_suite(const LoopCase& c, const SamplerConfig& sampler,
                               const RdivOptions& rdiv = {});

/// Case A only: N = {(x, y, 0)} is a normal subloop with L/N = (R, +).
VerificationReport normal_subloop_check(const LoopCase& c, const SamplerConfig& sampler);

}  // namespace solvloop
