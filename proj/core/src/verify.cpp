#include "solvloop/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "solvloop/subgroups.hpp"

namespace solvloop {

namespace {

Matrix4 abs_entries(const Matrix4& m) {
  Matrix4 r;
  for (std::size_t i = 0; i < 16; ++i) r.m[i] = std::abs(m.m[i]);
  return r;
}

// max |A - B| relative to the largest entry of |X| |Y|.
double relative_product_error(const Matrix4& a, const Matrix4& b, const Matrix4& x,
                              const Matrix4& y) {
  const double bound = (abs_entries(x) * abs_entries(y)).max_abs();
  return (a - b).max_abs() / std::max(1.0, bound);
}

AlgebraVector random_vector(Rng& rng, double w) {
  const double c1 = rng.uniform(-w, w);
  const double c2 = rng.uniform(-w, w);
  const double c3 = rng.uniform(-w, w);
  const double c4 = rng.uniform(-w, w);
  return {c1, c2, c3, c4};
}

AlgebraVector dyadic_vector(Rng& rng) {
  auto q = [&rng] { return std::floor(rng.uniform(-8, 9)) / 4.0; };
  const double c1 = q();
  const double c2 = q();
  const double c3 = q();
  const double c4 = q();
  return {c1, c2, c3, c4};
}

AutomorphismParams random_automorphism(const GroupParam& p, Rng& rng) {
  if (p.a_is_one()) {
    UnitAutomorphism u;
    u.k1 = rng.signed_magnitude(0.5, 2);
    u.k2 = rng.uniform(-2, 2);
    u.l = rng.signed_magnitude(0.5, 2);
    u.n1 = rng.uniform(-2, 2);
    u.n2 = rng.uniform(-2, 2);
    u.f1 = rng.uniform(-2, 2);
    u.f2 = rng.uniform(-2, 2);
    u.f3 = rng.uniform(-2, 2);
    return u;
  }
  GenericAutomorphism g;
  g.k = rng.signed_magnitude(0.5, 2);
  g.l = rng.signed_magnitude(0.5, 2);
  g.n = rng.uniform(-2, 2);
  g.f1 = rng.uniform(-2, 2);
  g.f2 = rng.uniform(-2, 2);
  g.f3 = rng.uniform(-2, 2);
  return g;
}

double bracket_preservation(const GroupParam& p, const AutomorphismParams& phi,
                            const AlgebraVector& u, const AlgebraVector& v) {
  const AlgebraVector lhs = apply_automorphism(p, phi, bracket(p, u, v));
  const AlgebraVector rhs =
      bracket(p, apply_automorphism(p, phi, u), apply_automorphism(p, phi, v));
  return (lhs - rhs).max_abs() / std::max({1.0, lhs.max_abs(), rhs.max_abs()});
}

std::vector<SubgroupId> admissible_subgroups(const GroupParam& p) {
  std::vector<SubgroupId> out;
  for (SubgroupId s : {SubgroupId::H1, SubgroupId::H2, SubgroupId::H3, SubgroupId::H4}) {
    if (admissible(p, s)) out.push_back(s);
  }
  return out;
}

}  // namespace

VerificationReport group_oracle_check(const GroupParam& p, const SamplerConfig& sampler) {
  VerificationReport report;
  report.seed = sampler.seed;
  Rng rng(sampler.seed);
  const double w = sampler.half_width;
  double prod = 0, inverse = 0, inverse_matrix = 0, assoc = 0, roundtrip = 0;
  for (std::size_t i = 0; i < sampler.n; ++i) {
    const GroupElement g = rng.element(w);
    const GroupElement h = rng.element(w);
    const GroupElement k = rng.element(w);
    const Matrix4 mg = as_matrix(p, g);
    const Matrix4 mh = as_matrix(p, h);
    prod = std::max(prod, relative_product_error(as_matrix(p, mul(p, g, h)), mg * mh, mg, mh));

    const GroupElement gi = inv(p, g);
    const GroupElement e = GroupElement::identity();
    double scale = 1.0;
    for (double c : g.coords()) scale = std::max(scale, std::abs(c));
    for (double c : gi.coords()) scale = std::max(scale, std::abs(c));
    inverse = std::max({inverse, max_abs_distance(mul(p, g, gi), e) / scale,
                        max_abs_distance(mul(p, gi, g), e) / scale});
    const Matrix4 mgi = as_matrix(p, gi);
    inverse_matrix = std::max(
        inverse_matrix, relative_product_error(mgi * mg, Matrix4::identity(), mgi, mg));

    assoc = std::max(assoc, scaled_distance(mul(p, mul(p, g, h), k), mul(p, g, mul(p, h, k))));
    roundtrip = std::max(roundtrip, scaled_distance(from_matrix(p, mg), g));
  }
  const std::size_t n = sampler.n;
  report.checks.push_back(Check::measured("product-vs-matrix", prod, 1e-12, n));
  report.checks.push_back(Check::measured("inverse", inverse, 1e-12, n));
  report.checks.push_back(Check::measured("inverse-vs-matrix", inverse_matrix, 1e-12, n));
  report.checks.push_back(Check::measured("associativity", assoc, 1e-12, n));
  report.checks.push_back(Check::measured("matrix-roundtrip", roundtrip, 1e-12, n));
  return report;
}

VerificationReport algebra_check(const GroupParam& p, const SamplerConfig& sampler) {
  VerificationReport report;
  report.seed = sampler.seed;
  Rng rng(sampler.seed);
  const std::size_t n = sampler.n;

  // Exact on dyadic inputs whenever a itself is dyadic; otherwise allow one
  // rounding in the products involving a.
  const bool dyadic_a = std::ldexp(p.a(), 20) == std::round(std::ldexp(p.a(), 20));
  double comm = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const AlgebraVector u = dyadic_vector(rng);
    const AlgebraVector v = dyadic_vector(rng);
    const AlgebraVector via_matrix =
        algebra_from_matrix(p, commutator(algebra_matrix(p, u), algebra_matrix(p, v))) * -1.0;
    comm = std::max(comm, (bracket(p, u, v) - via_matrix).max_abs());
  }
  report.checks.push_back(Check::measured("bracket-vs-commutator", comm, dyadic_a ? 0.0 : 1e-14,
                                          n, "table equals the negated matrix commutator"));

  const StructureConstants sc(p);
  report.checks.push_back(Check::measured("antisymmetry", sc.antisymmetry_defect(), 0.0, 64));
  report.checks.push_back(Check::measured("jacobi", sc.jacobi_defect(), 0.0, 64));

  double in_sub = 0;
  std::size_t n_sub = 0;
  for (SubgroupId s : admissible_subgroups(p)) {
    for (double t : {-3.0, -1.0, -0.25, 0.5, 1.0, 2.5}) {
      const GroupElement g = exp_alg(p, canonical_generator(s), t);
      in_sub = std::max(in_sub, max_abs_distance(decompose(p, s, g).rep, LoopPoint::identity()));
      ++n_sub;
    }
  }
  report.checks.push_back(Check::measured("exp-in-subgroup", in_sub, 1e-9, n_sub));

  double one_param = 0;
  for (std::size_t i = 0; i < std::min<std::size_t>(n, 200); ++i) {
    const AlgebraVector v = random_vector(rng, 1.0);
    const double s = rng.uniform(-1.5, 1.5);
    const double t = rng.uniform(-1.5, 1.5);
    one_param = std::max(one_param, scaled_distance(exp_alg(p, v, s + t),
                                                    mul(p, exp_alg(p, v, s), exp_alg(p, v, t))));
  }
  report.checks.push_back(
      Check::measured("one-parameter", one_param, 1e-10, std::min<std::size_t>(n, 200)));

  double preserve = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const AutomorphismParams phi = random_automorphism(p, rng);
    const AlgebraVector u = random_vector(rng, sampler.half_width);
    const AlgebraVector v = random_vector(rng, sampler.half_width);
    preserve = std::max(preserve, bracket_preservation(p, phi, u, v));
  }
  report.checks.push_back(Check::measured("automorphism-brackets", preserve, 1e-12, n));

  const std::vector<GroupElement> probes{exp_alg(p, AlgebraVector::e4(), 1.0),
                                         exp_alg(p, AlgebraVector::e1(), 1.0),
                                         exp_alg(p, AlgebraVector::e3(), 1.0)};
  double min_defect = INFINITY;
  for (const AlgebraVector& v : {AlgebraVector::e1(), AlgebraVector::e2(), AlgebraVector::e3(),
                                 AlgebraVector::e4(), AlgebraVector::e2() + AlgebraVector::e3()}) {
    min_defect = std::min(min_defect, central_defect(p, v, probes));
  }
  const int dim = center_dimension(p);
  report.checks.push_back(Check::flag(
      "center-trivial", dim == 0 && min_defect > 0, 5,
      "center dimension " + std::to_string(dim) + ", min central defect " +
          std::to_string(min_defect)));
  return report;
}

VerificationReport classification_sweep(const GroupParam& p, const SamplerConfig& sampler) {
  VerificationReport report;
  report.seed = sampler.seed;
  Rng rng(sampler.seed);
  const double w = sampler.half_width;
  std::map<std::string, std::size_t> counts;
  double span = 0, preserve = 0;
  std::size_t missing = 0;
  for (std::size_t i = 0; i < sampler.n; ++i) {
    double b1 = rng.signed_magnitude(0.1, w);
    double b2 = rng.signed_magnitude(0.1, w);
    double b3 = rng.signed_magnitude(0.1, w);
    double c4 = 0;
    switch (i % 8) {
      case 1: b1 = 0; break;
      case 2: b2 = 0; break;
      case 3: b3 = 0; break;
      case 4: b1 = 0, b2 = 0; break;
      case 5: b1 = 0, b3 = 0; break;
      case 6: b2 = 0, b3 = 0; break;
      case 7: c4 = rng.signed_magnitude(0.1, w); break;
      default: break;
    }
    const AlgebraVector v{b2, b3, b1, c4};
    const SubalgebraClass cls = classify_generator(p, v);
    ++counts[std::string(to_string(cls.kind))];

    AlgebraVector target;
    switch (cls.kind) {
      case SubalgebraKind::H1: target = canonical_generator(SubgroupId::H1); break;
      case SubalgebraKind::H2: target = canonical_generator(SubgroupId::H2); break;
      case SubalgebraKind::H3: target = canonical_generator(SubgroupId::H3); break;
      case SubalgebraKind::NotInCommutator: target = AlgebraVector::e4(); break;
      case SubalgebraKind::NormalInadmissible:
        if (cls.automorphism) ++missing;
        continue;
    }
    if (!cls.automorphism) {
      ++missing;
      continue;
    }
    span = std::max(span, collinearity_residual(apply_automorphism(p, *cls.automorphism, v),
                                                target));
    const AlgebraVector u = random_vector(rng, w);
    const AlgebraVector x = random_vector(rng, w);
    preserve = std::max(preserve, bracket_preservation(p, *cls.automorphism, u, x));
  }
  std::string tally;
  for (const auto& [name, c] : counts) {
    tally += (tally.empty() ? "" : " ") + name + "=" + std::to_string(c);
  }
  const std::size_t n = sampler.n;
  report.checks.push_back(Check::flag("automorphism-present", missing == 0, n, tally));
  report.checks.push_back(Check::measured("canonical-span", span, 1e-12, n));
  report.checks.push_back(Check::measured("automorphism-brackets", preserve, 1e-12, n));
  return report;
}

VerificationReport fixed_point_check(const GroupParam& p, const SamplerConfig& sampler,
                                     double g4_lo, double g4_hi) {
  VerificationReport report;
  report.seed = sampler.seed;
  Rng rng(sampler.seed);
  double worst = 0;
  for (std::size_t i = 0; i < sampler.n; ++i) {
    GroupElement g = rng.element(sampler.half_width);
    g.x4 = rng.signed_magnitude(g4_lo, g4_hi);
    worst = std::max(worst, fixed_point_residual(p, g, fixed_point_witness(p, g)));
  }
  report.checks.push_back(Check::measured("fixed-point-residual", worst, 1e-10, sampler.n,
                                          "every g with g4 != 0 fixes a coset of H4"));
  return report;
}

VerificationReport functional_equation_check(const std::function<double(double)>& f,
                                             const FunctionalEquationConfig& cfg) {
  VerificationReport report;
  std::vector<double> zs;
  std::vector<std::pair<double, double>> samples;
  const std::size_t n = std::max<std::size_t>(cfg.samples, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double z =
        -cfg.half_width + 2 * cfg.half_width * static_cast<double>(i) / static_cast<double>(n - 1);
    zs.push_back(z);
    samples.emplace_back(z, f(z));
  }
  const numerics::FitResult fit = numerics::functional_fit(samples, cfg.rate);
  const double eq = numerics::functional_equation_residual(f, zs, cfg.rate);
  char k[64];
  std::snprintf(k, sizeof k, "K=%.17g rms=%.3g", fit.K, fit.rms_residual);
  report.checks.push_back(Check::measured("fit-residual", fit.max_residual, cfg.fit_tol,
                                          fit.n_samples, k));
  report.checks.push_back(
      Check::measured("functional-equation", eq, cfg.equation_tol, zs.size() * zs.size()));
  return report;
}

}  // namespace solvloop
