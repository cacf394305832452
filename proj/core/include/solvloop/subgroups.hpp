#pragma once

// One-dimensional subgroups of G(a), their coset charts, sections over the
// coset spaces, and the checks that decide whether a section yields a loop.
//
// Coset charts (every g in G decomposes uniquely as rep * h, h in H):
//   H1 = {g(0,0,k,0)}   reps g(x,y,0,z)
//   H2 = {g(k,0,k,0)}   reps g(x,y,0,z)   (a != 1)
//   H3 = {g(k,k,0,0)}   reps g(x,0,y,z)   (a != 1)
//   H4 = {g(0,0,0,k)}   reps g(x,y,w,0)   never a loop stabilizer

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "solvloop/function_spec.hpp"
#include "solvloop/group.hpp"
#include "solvloop/numerics.hpp"
#include "solvloop/report.hpp"

namespace solvloop {

/// A point of the loop L = G/H, identified with R^3 through the coset chart.
struct LoopPoint {
  double x = 0, y = 0, z = 0;

  static LoopPoint identity() { return {}; }
  std::array<double, 3> coords() const { return {x, y, z}; }
  friend bool operator==(const LoopPoint&, const LoopPoint&) = default;
};

double scaled_distance(const LoopPoint& u, const LoopPoint& v);
double max_abs_distance(const LoopPoint& u, const LoopPoint& v);

enum class SubgroupId { H1, H2, H3, H4 };
std::string_view to_string(SubgroupId s);

class InadmissibleSubgroup : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// H2 and H3 exist as loop stabilizers only for a != 1; H1 and H4 always
/// have coset charts.
bool admissible(const GroupParam& p, SubgroupId sub);

struct DecompResult {
  LoopPoint rep;
  double k = 0;
};

DecompResult decompose(const GroupParam& p, SubgroupId sub, const GroupElement& g);
GroupElement embed(const GroupParam& p, SubgroupId sub, const LoopPoint& m);
GroupElement subgroup_element(const GroupParam& p, SubgroupId sub, double k);
/// Algebra generator v with H = exp(R v).
AlgebraVector canonical_generator(SubgroupId sub);

// --- Sections --------------------------------------------------------------

enum class SectionCase { A, B, C };
std::string_view to_string(SectionCase c);
SubgroupId subgroup_for(SectionCase c);
Arity arity_for(SectionCase c);

/// Preset with case-aware defaults: lemma1 over H3 uses rate a.
FunctionSpec make_preset(SectionCase c, const GroupParam& p, Preset kind,
                         std::vector<double> coeffs = {});

class SectionSpec {
 public:
  /// Throws InadmissibleSubgroup for case B/C with a = 1 and
  /// std::invalid_argument when the function arity does not fit the case.
  SectionSpec(SectionCase c, GroupParam p, FunctionSpec fn);

  SectionCase section_case() const noexcept { return case_; }
  const GroupParam& param() const noexcept { return param_; }
  const FunctionSpec& fn() const noexcept { return fn_; }
  SubgroupId subgroup() const { return subgroup_for(case_); }
  double eval(const LoopPoint& m) const { return fn_(m.x, m.y, m.z); }

 private:
  SectionCase case_;
  GroupParam param_;
  FunctionSpec fn_;
};

/// sigma(m) = embed(m) * subgroup_element(fn(m)).
GroupElement section_lift(const SectionSpec& spec, const LoopPoint& m);

// --- Subalgebra classification ---------------------------------------------

enum class SubalgebraKind { H1, H2, H3, NormalInadmissible, NotInCommutator };
std::string_view to_string(SubalgebraKind k);

struct SubalgebraClass {
  SubalgebraKind kind;
  std::optional<AutomorphismParams> automorphism;
  /// Image of the input generator under the automorphism (when present).
  std::optional<AlgebraVector> image;
};

/// Generator b1 e3 + b2 e1 + b3 e2 of a one-dimensional subalgebra of g'.
/// Throws std::invalid_argument for the zero vector.
SubalgebraClass classify_subalgebra(const GroupParam& p, double b1, double b2, double b3);

/// Any nonzero generator; c4 != 0 gives NotInCommutator with the automorphism
/// that moves the generator to a multiple of e4.
SubalgebraClass classify_generator(const GroupParam& p, const AlgebraVector& v);

/// || u - proj_target(u) ||_inf / max(1, ||u||_inf).
double collinearity_residual(const AlgebraVector& u, const AlgebraVector& target);

// --- Fixed points for H4 ---------------------------------------------------

/// Coset m with g * embed(H4, m) = embed(H4, m) * g(0,0,0,g4), i.e. a fixed
/// point of g on G/H4. Throws std::domain_error when g4 == 0.
LoopPoint fixed_point_witness(const GroupParam& p, const GroupElement& g);
double fixed_point_residual(const GroupParam& p, const GroupElement& g, const LoopPoint& m);

// --- Generation (degeneracy) -----------------------------------------------

struct DegeneracyConfig {
  std::size_t samples_per_axis = 50;  // >= 50
  double half_width = 5.0;
  double identity_tol = 1e-8;
  double fit_tol = 1e-9;
};

/// Whether sigma(G/H) generates G, decided by the two degeneracy identities
/// of the case, on the tested box only:
///   A: f(x,0) = 0            and f(0,z)   = K (1 - e^{-z})
///   B: h(x,y,0) = 0          and h(0,0,z) = K (1 - e^{-z})
///   C: f(x,y,0) = -x         and f(0,0,z) = c (1 - e^{-a z})
struct GenerationVerdict {
  bool generates = true;
  std::optional<double> fitted_constant;
  double identity_residual = 0;  // max over the z = 0 slice
  double fit_rms = 0;
  double fit_max = 0;
  std::size_t samples = 0;
};

GenerationVerdict degeneracy_report(const SectionSpec& spec, const DegeneracyConfig& cfg = {});

// --- Sharp transitivity ----------------------------------------------------

/// The unknown coordinates not fixed by z = to.z - from.z when solving
/// sigma(m) * from = to, i.e. m * from = to in the loop.
///   A: closed form
///   B: two equations in (x, y)
///   C: one equation in x (y is explicit)
LoopPoint section_equation_center(const SectionSpec& spec, const LoopPoint& from,
                                  const LoopPoint& to);

struct SolveOptions;

/// Starting point for a search: Newton from section_equation_center with no
/// box constraint (2-D for B, 1-D for C). Falls back to the center when
/// Newton does not converge.
LoopPoint section_equation_guess(const SectionSpec& spec, const LoopPoint& from,
                                 const LoopPoint& to, const SolveOptions& opts);

/// Residual of the case B system at (x, y), each row scaled by the size of
/// its explicit terms unless `scaled` is false.
numerics::Vec2 case_b_residual(const SectionSpec& spec, const LoopPoint& from,
                               const LoopPoint& to, const numerics::Vec2& xy,
                               bool scaled = true);
/// Residual of the case C equation at x.
double case_c_residual(const SectionSpec& spec, const LoopPoint& from, const LoopPoint& to,
                       double x);

struct SolveOptions {
  numerics::Root1dOptions root1d;
  numerics::Root2dOptions root2d;
};

struct SectionSolution {
  std::vector<LoopPoint> roots;
  bool solver_failed = false;  // case B: no Newton start converged
};

/// All m in `search` (a box over x, y; z is forced) with m * from = to.
SectionSolution solve_section_equation(const SectionSpec& spec, const LoopPoint& from,
                                       const LoopPoint& to, const numerics::Box& search,
                                       const SolveOptions& opts = {});

struct TransitivityConfig {
  std::size_t samples = 100;
  double half_width = 5.0;  // box [-w, w]^3 for sampled points and roots
  std::uint64_t seed = 1;
  SolveOptions solve;
};

/// Samples m, m1 in the box, sets m2 = m * m1 and counts the solutions of
/// the implicit equations for (m1, m2) inside the box. Passes iff every
/// sample has exactly one. Case A passes trivially (closed form).
VerificationReport sharp_transitivity_check(const SectionSpec& spec,
                                            const TransitivityConfig& cfg = {});

}  // namespace solvloop
