#include "solvloop/loop.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace solvloop {

LoopCase::LoopCase(SectionSpec spec, const DegeneracyConfig& degeneracy)
    : spec_(std::move(spec)), verdict_(degeneracy_report(spec_, degeneracy)) {}

LoopPoint loop_mul(const LoopCase& c, const LoopPoint& m1, const LoopPoint& m2) {
  const double a = c.a();
  const double f = c.spec().eval(m1);
  const double ez1 = std::exp(m1.z);
  const double eaz1 = std::exp(a * m1.z);
  const double z = m1.z + m2.z;
  switch (c.section_case()) {
    case SectionCase::A:
      return {m1.x + eaz1 * m2.x, m1.y + m2.y * ez1 - m2.z * ez1 * f, z};
    case SectionCase::B: {
      const double damp = -std::expm1((a - 1) * m2.z);  // 1 - e^{(a-1) z2}
      return {m1.x + eaz1 * (m2.x + f * damp), m1.y + ez1 * (m2.y - m2.z * f), z};
    }
    case SectionCase::C: {
      const double damp = -std::expm1((a - 1) * m2.z);
      const double inner = m2.x - m2.y * m1.z * std::exp((a - 1) * m2.z) + f * damp;
      return {m1.x + eaz1 * inner, m1.y + ez1 * m2.y, z};
    }
  }
  return {};
}

LoopPoint loop_ldiv(const LoopCase& c, const LoopPoint& m1, const LoopPoint& b) {
  const double a = c.a();
  const double f = c.spec().eval(m1);
  const double z = b.z - m1.z;
  const double x0 = std::exp(-a * m1.z) * (b.x - m1.x);
  const double y0 = std::exp(-m1.z) * (b.y - m1.y);
  switch (c.section_case()) {
    case SectionCase::A:
      return {x0, y0 + z * f, z};
    case SectionCase::B:
      return {x0 + f * std::expm1((a - 1) * z), y0 + z * f, z};
    case SectionCase::C:
      return {x0 + y0 * m1.z * std::exp((a - 1) * z) + f * std::expm1((a - 1) * z), y0, z};
  }
  return {};
}

LoopPoint loop_rdiv(const LoopCase& c, const LoopPoint& b, const LoopPoint& m2,
                    const RdivOptions& opts) {
  if (c.section_case() == SectionCase::A) return section_equation_center(c.spec(), m2, b);
  const LoopPoint center = section_equation_guess(c.spec(), m2, b, opts.solve);

  bool diverged = false;
  double hw = opts.half_width;
  for (int attempt = 0; attempt <= opts.expansions; ++attempt, hw *= 2) {
    const std::array<double, 3> ctr{center.x, center.y, center.z};
    const auto box = numerics::Box::centered(ctr, hw);
    const auto sol = solve_section_equation(c.spec(), m2, b, box, opts.solve);
    if (sol.roots.size() == 1) return sol.roots.front();
    if (sol.roots.size() > 1) {
      throw DivisionError(DivisionError::Kind::MultipleRoots,
                          std::to_string(sol.roots.size()) +
                              " solutions of x * m2 = b within half-width " + std::to_string(hw));
    }
    diverged = diverged || sol.solver_failed;
  }
  if (diverged) {
    throw DivisionError(DivisionError::Kind::SolverDiverged,
                        "right division: Newton failed from every start");
  }
  throw DivisionError(DivisionError::Kind::NoRootInBox,
                      "right division: no solution within half-width " + std::to_string(hw / 2));
}

double coset_cross_check(const LoopCase& c, const LoopPoint& m1, const LoopPoint& m2) {
  const auto& p = c.spec().param();
  const SubgroupId sub = c.spec().subgroup();
  const GroupElement g = mul(p, section_lift(c.spec(), m1), embed(p, sub, m2));
  const LoopPoint via_group = decompose(p, sub, g).rep;
  const LoopPoint via_formula = loop_mul(c, m1, m2);
  const auto gc = g.coords();
  double scale = 1.0;
  for (double v : gc) scale = std::max(scale, std::abs(v));
  for (double v : via_formula.coords()) scale = std::max(scale, std::abs(v));
  return max_abs_distance(via_group, via_formula) / scale;
}

double associativity_defect(const LoopCase& c, const LoopPoint& m1, const LoopPoint& m2,
                            const LoopPoint& m3) {
  return max_abs_distance(loop_mul(c, loop_mul(c, m1, m2), m3),
                          loop_mul(c, m1, loop_mul(c, m2, m3)));
}

AssociativityWitness associativity_search(const LoopCase& c, const SamplerConfig& sampler) {
  Rng rng(sampler.seed);
  AssociativityWitness best;
  for (std::size_t i = 0; i < sampler.n; ++i) {
    const LoopPoint m1 = rng.point(sampler.half_width);
    const LoopPoint m2 = rng.point(sampler.half_width);
    const LoopPoint m3 = rng.point(sampler.half_width);
    const double d = associativity_defect(c, m1, m2, m3);
    if (d > best.defect) best = {d, m1, m2, m3};
  }
  return best;
}

namespace {

// Largest summand in left * right: the coordinates of both factors, the
// target, and right scaled by the exponentials left applies to it.
double product_scale(double a, const LoopPoint& left, const LoopPoint& right,
                     const LoopPoint& target) {
  const double stretch = std::max({1.0, std::exp(a * left.z), std::exp(left.z)});
  double s = 1.0;
  for (const LoopPoint& m : {left, target}) {
    for (double v : m.coords()) s = std::max(s, std::abs(v));
  }
  for (double v : right.coords()) s = std::max(s, stretch * std::abs(v));
  return s;
}

std::string kind_name(DivisionError::Kind k) {
  switch (k) {
    case DivisionError::Kind::NoRootInBox: return "NoRootInBox";
    case DivisionError::Kind::MultipleRoots: return "MultipleRoots";
    case DivisionError::Kind::SolverDiverged: return "SolverDiverged";
  }
  return "?";
}

}  // namespace

VerificationReport axiom_suite(const LoopCase& c, const SamplerConfig& sampler,
                               const RdivOptions& rdiv) {
  VerificationReport report;
  report.seed = sampler.seed;
  Rng rng(sampler.seed);
  const double w = sampler.half_width;
  const LoopPoint e = LoopPoint::identity();

  double left_id = 0, right_id = 0, ldiv_err = 0, rdiv_err = 0, z_err = 0;
  std::size_t rdiv_ok = 0, no_root = 0, multiple = 0, diverged = 0;
  for (std::size_t i = 0; i < sampler.n; ++i) {
    const LoopPoint m1 = rng.point(w);
    const LoopPoint m2 = rng.point(w);
    const LoopPoint b = rng.point(w);

    left_id = std::max(left_id, max_abs_distance(loop_mul(c, e, m1), m1));
    right_id = std::max(right_id, max_abs_distance(loop_mul(c, m1, e), m1));

    const LoopPoint q = loop_ldiv(c, m1, b);
    ldiv_err = std::max(
        ldiv_err, max_abs_distance(loop_mul(c, m1, q), b) / product_scale(c.a(), m1, q, b));

    const LoopPoint prod = loop_mul(c, m1, m2);
    z_err = std::max(z_err, std::abs(prod.z - (m1.z + m2.z)));

    try {
      const LoopPoint r = loop_rdiv(c, prod, m2, rdiv);
      rdiv_err = std::max(rdiv_err, max_abs_distance(loop_mul(c, r, m2), prod) /
                                        product_scale(c.a(), r, m2, prod));
      ++rdiv_ok;
    } catch (const DivisionError& err) {
      switch (err.kind()) {
        case DivisionError::Kind::NoRootInBox: ++no_root; break;
        case DivisionError::Kind::MultipleRoots: ++multiple; break;
        case DivisionError::Kind::SolverDiverged: ++diverged; break;
      }
      report.samples.push_back({i, err.kind() == DivisionError::Kind::MultipleRoots ? 2 : 0,
                                err.kind() == DivisionError::Kind::SolverDiverged,
                                kind_name(err.kind()) + ": " + err.what()});
    }
  }

  const std::size_t n = sampler.n;
  report.checks.push_back(Check::measured("identity-left", left_id, 0.0, n));
  report.checks.push_back(Check::measured("identity-right", right_id, 0.0, n));
  report.checks.push_back(Check::measured("ldiv-roundtrip", ldiv_err, 1e-9, n));
  report.checks.push_back(Check::measured("rdiv-roundtrip", rdiv_err, 1e-8, rdiv_ok));
  report.checks.push_back(Check::flag(
      "rdiv-unique", rdiv_ok == n, n,
      "MultipleRoots=" + std::to_string(multiple) + " NoRootInBox=" + std::to_string(no_root) +
          " SolverDiverged=" + std::to_string(diverged)));
  report.checks.push_back(Check::measured("z-additivity", z_err, 0.0, n));
  return report;
}

VerificationReport normal_subloop_check(const LoopCase& c, const SamplerConfig& sampler) {
  if (c.section_case() != SectionCase::A) {
    throw std::invalid_argument("normal subloop check applies to case A loops");
  }
  // Membership of N = {(x,y,0)} and its cosets is read off the third
  // coordinate, so every check below is an exact comparison.
  VerificationReport report;
  report.seed = sampler.seed;
  Rng rng(sampler.seed);
  const double w = sampler.half_width;

  double sub_closed = 0, left_right = 0, mixed_left = 0, mixed_right = 0, factor = 0,
         divisions = 0;
  for (std::size_t i = 0; i < sampler.n; ++i) {
    const LoopPoint m = rng.point(w);
    const LoopPoint mp = rng.point(w);
    LoopPoint n1 = rng.point(w);
    LoopPoint n2 = rng.point(w);
    n1.z = 0;
    n2.z = 0;

    // N is a subloop.
    sub_closed = std::max({sub_closed, std::abs(loop_mul(c, n1, n2).z),
                           std::abs(loop_ldiv(c, n1, n2).z), std::abs(loop_rdiv(c, n1, n2).z)});

    // m N = N m: both land in the plane z = m.z, and the divisions map that
    // plane back onto N, so the two sets coincide.
    const double zm = m.z;
    left_right = std::max({left_right, std::abs(loop_mul(c, m, n1).z - zm),
                           std::abs(loop_mul(c, n1, m).z - zm)});
    LoopPoint plane = rng.point(w);
    plane.z = zm;
    divisions = std::max({divisions, std::abs(loop_ldiv(c, m, plane).z),
                          std::abs(loop_rdiv(c, plane, m).z)});

    // (m N) m' = m (N m') and m (m' N) = (m m') N.
    const double zt = m.z + mp.z;
    mixed_left = std::max({mixed_left, std::abs(loop_mul(c, loop_mul(c, m, n1), mp).z - zt),
                           std::abs(loop_mul(c, m, loop_mul(c, n2, mp)).z - zt)});
    mixed_right = std::max({mixed_right, std::abs(loop_mul(c, m, loop_mul(c, mp, n1)).z - zt),
                            std::abs(loop_mul(c, loop_mul(c, m, mp), n2).z - zt)});

    // (0,0,z1) N * (0,0,z2) N lies in (0,0,z1+z2) N.
    const LoopPoint c1{n1.x, n1.y, m.z};
    const LoopPoint c2{n2.x, n2.y, mp.z};
    factor = std::max(factor, std::abs(loop_mul(c, c1, c2).z - zt));
  }

  const std::size_t n = sampler.n;
  report.checks.push_back(Check::measured("N-subloop", sub_closed, 0.0, n));
  report.checks.push_back(Check::measured("mN=Nm", left_right, 0.0, n));
  report.checks.push_back(Check::measured("coset-divisions", divisions, 0.0, n));
  report.checks.push_back(Check::measured("(mN)m'=m(Nm')", mixed_left, 0.0, n));
  report.checks.push_back(Check::measured("m(m'N)=(mm')N", mixed_right, 0.0, n));
  report.checks.push_back(Check::measured("factor-loop-is-(R,+)", factor, 0.0, n,
                                          "z-coordinate is a homomorphism onto (R,+)"));
  return report;
}

}  // namespace solvloop
