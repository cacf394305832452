#include "solvloop/subgroups.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "solvloop/random.hpp"

namespace solvloop {

double scaled_distance(const LoopPoint& u, const LoopPoint& v) {
  const auto a = u.coords();
  const auto b = v.coords();
  return scaled_distance(std::span<const double>(a), std::span<const double>(b));
}

double max_abs_distance(const LoopPoint& u, const LoopPoint& v) {
  return std::max({std::abs(u.x - v.x), std::abs(u.y - v.y), std::abs(u.z - v.z)});
}

std::string_view to_string(SubgroupId s) {
  switch (s) {
    case SubgroupId::H1: return "H1";
    case SubgroupId::H2: return "H2";
    case SubgroupId::H3: return "H3";
    case SubgroupId::H4: return "H4";
  }
  return "?";
}

bool admissible(const GroupParam& p, SubgroupId sub) {
  return !((sub == SubgroupId::H2 || sub == SubgroupId::H3) && p.a_is_one());
}

namespace {

void require_admissible(const GroupParam& p, SubgroupId sub) {
  if (!admissible(p, sub)) {
    throw InadmissibleSubgroup(std::string(to_string(sub)) + " requires a != 1");
  }
}

}  // namespace

DecompResult decompose(const GroupParam& p, SubgroupId sub, const GroupElement& g) {
  require_admissible(p, sub);
  switch (sub) {
    case SubgroupId::H1:
      return {{g.x1, g.x2 - g.x4 * g.x3, g.x4}, std::exp(-g.x4) * g.x3};
    case SubgroupId::H2:
      return {{g.x1 - std::exp((p.a() - 1) * g.x4) * g.x3, g.x2 - g.x4 * g.x3, g.x4},
              std::exp(-g.x4) * g.x3};
    case SubgroupId::H3:
      return {{g.x1 - std::exp((p.a() - 1) * g.x4) * g.x2, g.x3, g.x4},
              std::exp(-g.x4) * g.x2};
    case SubgroupId::H4:
      return {{g.x1, g.x2, g.x3}, g.x4};
  }
  return {};
}

GroupElement embed(const GroupParam& p, SubgroupId sub, const LoopPoint& m) {
  require_admissible(p, sub);
  switch (sub) {
    case SubgroupId::H1:
    case SubgroupId::H2: return {m.x, m.y, 0, m.z};
    case SubgroupId::H3: return {m.x, 0, m.y, m.z};
    case SubgroupId::H4: return {m.x, m.y, m.z, 0};
  }
  return {};
}

GroupElement subgroup_element(const GroupParam& p, SubgroupId sub, double k) {
  require_admissible(p, sub);
  switch (sub) {
    case SubgroupId::H1: return {0, 0, k, 0};
    case SubgroupId::H2: return {k, 0, k, 0};
    case SubgroupId::H3: return {k, k, 0, 0};
    case SubgroupId::H4: return {0, 0, 0, k};
  }
  return {};
}

AlgebraVector canonical_generator(SubgroupId sub) {
  switch (sub) {
    case SubgroupId::H1: return AlgebraVector::e3();
    case SubgroupId::H2: return AlgebraVector::e3() + AlgebraVector::e1();
    case SubgroupId::H3: return AlgebraVector::e1() + AlgebraVector::e2();
    case SubgroupId::H4: return AlgebraVector::e4();
  }
  return {};
}

// --- Sections --------------------------------------------------------------

std::string_view to_string(SectionCase c) {
  switch (c) {
    case SectionCase::A: return "A";
    case SectionCase::B: return "B";
    case SectionCase::C: return "C";
  }
  return "?";
}

SubgroupId subgroup_for(SectionCase c) {
  switch (c) {
    case SectionCase::A: return SubgroupId::H1;
    case SectionCase::B: return SubgroupId::H2;
    case SectionCase::C: return SubgroupId::H3;
  }
  return SubgroupId::H1;
}

Arity arity_for(SectionCase c) { return c == SectionCase::A ? Arity::TwoVar : Arity::ThreeVar; }

FunctionSpec make_preset(SectionCase c, const GroupParam& p, Preset kind,
                         std::vector<double> coeffs) {
  if (kind == Preset::Lemma1 && coeffs.size() < 2) {
    if (coeffs.empty()) coeffs.push_back(1.0);
    coeffs.push_back(c == SectionCase::C ? p.a() : 1.0);
  }
  return FunctionSpec::preset(kind, arity_for(c), std::move(coeffs));
}

SectionSpec::SectionSpec(SectionCase c, GroupParam p, FunctionSpec fn)
    : case_(c), param_(p), fn_(std::move(fn)) {
  require_admissible(param_, subgroup_for(case_));
  if (fn_.arity() != arity_for(case_)) {
    throw std::invalid_argument(std::string("function arity does not match case ") +
                                std::string(to_string(case_)));
  }
}

GroupElement section_lift(const SectionSpec& spec, const LoopPoint& m) {
  const double a = spec.param().a();
  const double f = spec.eval(m);
  const double ez = std::exp(m.z);
  switch (spec.section_case()) {
    case SectionCase::A:
      return {m.x, m.y + m.z * ez * f, ez * f, m.z};
    case SectionCase::B:
      return {m.x + std::exp(a * m.z) * f, m.y + m.z * ez * f, ez * f, m.z};
    case SectionCase::C:
      return {m.x + std::exp(a * m.z) * f, ez * f, m.y, m.z};
  }
  return {};
}

// --- Classification --------------------------------------------------------

std::string_view to_string(SubalgebraKind k) {
  switch (k) {
    case SubalgebraKind::H1: return "H1";
    case SubalgebraKind::H2: return "H2";
    case SubalgebraKind::H3: return "H3";
    case SubalgebraKind::NormalInadmissible: return "NormalInadmissible";
    case SubalgebraKind::NotInCommutator: return "NotInCommutator";
  }
  return "?";
}

SubalgebraClass classify_subalgebra(const GroupParam& p, double b1, double b2, double b3) {
  if (b1 == 0 && b2 == 0 && b3 == 0) {
    throw std::invalid_argument("zero generator spans no subalgebra");
  }
  const AlgebraVector v{b2, b3, b1, 0};  // b1 e3 + b2 e1 + b3 e2
  SubalgebraClass out{SubalgebraKind::NormalInadmissible, std::nullopt, std::nullopt};

  if (p.a_is_one()) {
    if (b1 != 0) {
      // Clear the e1 and e2 parts with the extra a = 1 freedom in e3's image.
      out.kind = SubalgebraKind::H1;
      out.automorphism = UnitAutomorphism{1, 0, 1, -b2 / b1, -b3 / b1, 0, 0, 0};
    }
  } else if (b1 != 0 && b2 == 0) {
    out.kind = SubalgebraKind::H1;
    out.automorphism = GenericAutomorphism{1, 1, -b3 / b1, 0, 0, 0};
  } else if (b1 != 0) {
    out.kind = SubalgebraKind::H2;
    out.automorphism = GenericAutomorphism{b1 / b2, 1, -b3 / b1, 0, 0, 0};
  } else if (b2 * b3 != 0) {
    out.kind = SubalgebraKind::H3;
    out.automorphism = GenericAutomorphism{b3 / b2, 1, 0, 0, 0, 0};
  }
  if (out.automorphism) out.image = apply_automorphism(p, *out.automorphism, v);
  return out;
}

SubalgebraClass classify_generator(const GroupParam& p, const AlgebraVector& v) {
  if (v.c4 == 0) return classify_subalgebra(p, v.c3, v.c1, v.c2);
  // Normalize to c1 e1 + c2 e2 + c3 e3 + e4, then shift e4 by the negated
  // g' part.
  const AlgebraVector w = v * (1.0 / v.c4);
  const GenericAutomorphism phi{1, 1, 0, -w.c1, -w.c2, -w.c3};
  return {SubalgebraKind::NotInCommutator, phi, apply_automorphism(p, phi, v)};
}

double collinearity_residual(const AlgebraVector& u, const AlgebraVector& target) {
  const auto uc = u.coords();
  const auto tc = target.coords();
  double dot = 0, tt = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    dot += uc[i] * tc[i];
    tt += tc[i] * tc[i];
  }
  const double lambda = dot / tt;
  double r = 0;
  for (std::size_t i = 0; i < 4; ++i) r = std::max(r, std::abs(uc[i] - lambda * tc[i]));
  return r / std::max(1.0, u.max_abs());
}

// --- Fixed points ----------------------------------------------------------

LoopPoint fixed_point_witness(const GroupParam& p, const GroupElement& g) {
  if (g.x4 == 0) throw std::domain_error("elements of G' have no fixed-point witness");
  const double denom_a = -std::expm1(p.a() * g.x4);  // 1 - e^{a g4}
  const double denom = -std::expm1(g.x4);            // 1 - e^{g4}
  const double x = g.x1 / denom_a;
  const double w = g.x3 / denom;
  const double y = (g.x2 + g.x4 * std::exp(g.x4) * w) / denom;
  return {x, y, w};
}

double fixed_point_residual(const GroupParam& p, const GroupElement& g, const LoopPoint& m) {
  const GroupElement coset = embed(p, SubgroupId::H4, m);
  const GroupElement lhs = mul(p, g, coset);
  const GroupElement rhs = mul(p, coset, subgroup_element(p, SubgroupId::H4, g.x4));
  return max_abs_distance(lhs, rhs);
}

// --- Degeneracy ------------------------------------------------------------

GenerationVerdict degeneracy_report(const SectionSpec& spec, const DegeneracyConfig& cfg) {
  const std::size_t n = std::max<std::size_t>(cfg.samples_per_axis, 2);
  const double w = cfg.half_width;
  auto node = [&](std::size_t i) {
    return -w + 2 * w * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  const auto& f = spec.fn();
  GenerationVerdict v;

  // Identity on the z = 0 slice.
  std::size_t evaluated = 0;
  switch (spec.section_case()) {
    case SectionCase::A:
      for (std::size_t i = 0; i < n; ++i, ++evaluated)
        v.identity_residual = std::max(v.identity_residual, std::abs(f(node(i), 0, 0)));
      break;
    case SectionCase::B:
    case SectionCase::C: {
      const bool shifted = spec.section_case() == SectionCase::C;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j, ++evaluated) {
          const double x = node(i);
          const double val = f(x, node(j), 0) + (shifted ? x : 0.0);
          v.identity_residual = std::max(v.identity_residual, std::abs(val));
        }
      break;
    }
  }

  // Fit of the z-axis restriction against K (1 - e^{-rate z}).
  const double rate = spec.section_case() == SectionCase::C ? spec.param().a() : 1.0;
  std::vector<std::pair<double, double>> samples;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = node(i);
    samples.emplace_back(z, f(0, 0, z));
  }
  evaluated += n;
  try {
    const auto fit = numerics::functional_fit(samples, rate);
    v.fitted_constant = fit.K;
    v.fit_rms = fit.rms_residual;
    v.fit_max = fit.max_residual;
  } catch (const numerics::InsufficientSamples&) {
    v.fit_rms = v.fit_max = std::numeric_limits<double>::infinity();
  }
  v.samples = evaluated;
  const bool identity_holds = v.identity_residual <= cfg.identity_tol;
  const bool fit_holds = v.fitted_constant && v.fit_rms <= cfg.fit_tol;
  v.generates = !(identity_holds && fit_holds);
  return v;
}

// --- Section equations -----------------------------------------------------

LoopPoint section_equation_center(const SectionSpec& spec, const LoopPoint& from,
                                  const LoopPoint& to) {
  const double a = spec.param().a();
  const double z = to.z - from.z;
  const double ez = std::exp(z);
  const double x0 = to.x - from.x * std::exp(a * z);
  switch (spec.section_case()) {
    case SectionCase::A:
      return {x0, to.y - ez * from.y + ez * from.z * spec.fn()(x0, 0, z), z};
    case SectionCase::B:
      return {x0, to.y - ez * from.y, z};
    case SectionCase::C:
      return {x0 + std::exp(a * to.z - from.z) * from.y * z, to.y - ez * from.y, z};
  }
  return {};
}

numerics::Vec2 case_b_residual(const SectionSpec& spec, const LoopPoint& from,
                               const LoopPoint& to, const numerics::Vec2& xy, bool scaled) {
  const double a = spec.param().a();
  const double z = to.z - from.z;
  const double ez = std::exp(z);
  const double eaz = std::exp(a * z);
  const double h = spec.fn()(xy[0], xy[1], z);
  const double cx = std::exp(a * to.z) * (std::exp(-from.z) - std::exp(-a * from.z));
  const double rx = xy[0] - (to.x - from.x * eaz + cx * h);
  const double ry = xy[1] - (to.y - ez * from.y + ez * from.z * h);
  const double sx = std::max({1.0, std::abs(to.x), std::abs(from.x * eaz), std::abs(cx * h)});
  const double sy =
      std::max({1.0, std::abs(to.y), std::abs(ez * from.y), std::abs(ez * from.z * h)});
  if (!scaled) return {rx, ry};
  return {rx / sx, ry / sy};
}

double case_c_residual(const SectionSpec& spec, const LoopPoint& from, const LoopPoint& to,
                       double x) {
  const double a = spec.param().a();
  const double z = to.z - from.z;
  const double y = to.y - std::exp(z) * from.y;
  const double f = spec.fn()(x, y, z);
  const double bracket = from.y * z - std::expm1((1 - a) * from.z) * f;
  return x - (to.x - from.x * std::exp(a * z) + std::exp(a * to.z - from.z) * bracket);
}

LoopPoint section_equation_guess(const SectionSpec& spec, const LoopPoint& from,
                                 const LoopPoint& to, const SolveOptions& opts) {
  const LoopPoint center = section_equation_center(spec, from, to);
  switch (spec.section_case()) {
    case SectionCase::A:
      return center;
    case SectionCase::B: {
      const auto r = numerics::newton2d(
          [&](const numerics::Vec2& xy) { return case_b_residual(spec, from, to, xy); },
          {center.x, center.y}, opts.root2d);
      if (r) return {(*r)[0], (*r)[1], center.z};
      // The scaled residual is nonlinear even for affine h; retry unscaled.
      const auto u = numerics::newton2d(
          [&](const numerics::Vec2& xy) { return case_b_residual(spec, from, to, xy, false); },
          {center.x, center.y}, opts.root2d);
      if (u) return {(*u)[0], (*u)[1], center.z};
      return center;
    }
    case SectionCase::C: {
      const auto fn = [&](double x) { return case_c_residual(spec, from, to, x); };
      double x = center.x;
      double f = fn(x);
      for (int it = 0; it < 100 && std::isfinite(f); ++it) {
        const double h = 1e-7 * std::max(1.0, std::abs(x));
        const double d = (fn(x + h) - f) / h;
        if (d == 0 || !std::isfinite(d)) break;
        const double step = f / d;
        double lambda = 1;
        bool improved = false;
        for (int k = 0; k < 30; ++k, lambda *= 0.5) {
          const double ft = fn(x - lambda * step);
          if (std::isfinite(ft) && std::abs(ft) < std::abs(f)) {
            x -= lambda * step;
            f = ft;
            improved = true;
            break;
          }
        }
        if (!improved || std::abs(lambda * step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
      }
      if (std::isfinite(x) && std::isfinite(f)) return {x, center.y, center.z};
      return center;
    }
  }
  return center;
}

SectionSolution solve_section_equation(const SectionSpec& spec, const LoopPoint& from,
                                       const LoopPoint& to, const numerics::Box& search,
                                       const SolveOptions& opts) {
  SectionSolution out;
  const LoopPoint center = section_equation_center(spec, from, to);
  switch (spec.section_case()) {
    case SectionCase::A: {
      const std::array<double, 2> xy{center.x, center.y};
      const numerics::Box xy_box({search.lower(0), search.lower(1)},
                                 {search.upper(0), search.upper(1)});
      if (xy_box.contains(xy)) out.roots.push_back(center);
      return out;
    }
    case SectionCase::C: {
      const numerics::Box x_box({search.lower(0)}, {search.upper(0)});
      const auto xs = numerics::root1d(
          [&](double x) { return case_c_residual(spec, from, to, x); }, x_box, opts.root1d);
      for (double x : xs) out.roots.push_back({x, center.y, center.z});
      return out;
    }
    case SectionCase::B: {
      const numerics::Box xy_box({search.lower(0), search.lower(1)},
                                 {search.upper(0), search.upper(1)});
      const auto r = numerics::root2d(
          [&](const numerics::Vec2& xy) { return case_b_residual(spec, from, to, xy); }, xy_box,
          opts.root2d);
      out.solver_failed = !r.any_converged;
      for (const auto& xy : r.roots) out.roots.push_back({xy[0], xy[1], center.z});
      return out;
    }
  }
  return out;
}

VerificationReport sharp_transitivity_check(const SectionSpec& spec,
                                            const TransitivityConfig& cfg) {
  VerificationReport report;
  report.seed = cfg.seed;
  if (spec.section_case() == SectionCase::A) {
    report.checks.push_back(Check::flag(
        "sharp-transitivity", true, 0,
        "case A: y -> y - z1 e^{z0} f(x0, z0) is a translation, unique solution in closed form"));
    return report;
  }

  const SubgroupId sub = spec.subgroup();
  const auto& p = spec.param();
  const double w = cfg.half_width;
  const auto box = numerics::Box::cube(3, -w, w);
  Rng rng(cfg.seed);

  std::size_t unique = 0, none = 0, multiple = 0, failed = 0;
  double recover_err = 0;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const LoopPoint m = rng.point(w);
    const LoopPoint m1 = rng.point(w);
    const LoopPoint m2 = decompose(p, sub, mul(p, section_lift(spec, m), embed(p, sub, m1))).rep;
    SampleOutcome o;
    o.index = i;
    try {
      const auto sol = solve_section_equation(spec, m1, m2, box, cfg.solve);
      o.roots = static_cast<int>(sol.roots.size());
      o.solver_failed = sol.solver_failed;
      if (sol.roots.size() == 1) recover_err = std::max(recover_err, scaled_distance(sol.roots[0], m));
    } catch (const expr::EvalError& e) {
      o.solver_failed = true;
      o.note = e.what();
    }
    if (o.solver_failed) {
      ++failed;
    } else if (o.roots == 0) {
      ++none;
    } else if (o.roots == 1) {
      ++unique;
    } else {
      ++multiple;
    }
    report.samples.push_back(std::move(o));
  }

  const std::string notes = "on tested box [-" + std::to_string(w) + "," + std::to_string(w) +
                            "]^3: unique=" + std::to_string(unique) +
                            " none=" + std::to_string(none) +
                            " multiple=" + std::to_string(multiple) +
                            " solver_failed=" + std::to_string(failed);
  report.checks.push_back(Check::flag("sharp-transitivity", unique == cfg.samples, cfg.samples, notes));
  report.checks.push_back(Check::measured("root-recovers-sample", recover_err, 1e-8, unique));
  return report;
}

}  // namespace solvloop
