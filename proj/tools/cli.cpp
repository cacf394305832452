#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "solvloop/expr.hpp"
#include "solvloop/function_spec.hpp"
#include "solvloop/loop.hpp"
#include "solvloop/multgroup.hpp"
#include "solvloop/subgroups.hpp"
#include "solvloop/verify.hpp"

namespace solvloop::cli {

namespace {

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << Json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        write_json(os, j[i], indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump(-1, ' ', false, Json::error_handler_t::replace);
  }
}

Json check_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["status"] = std::string(to_string(c.status));
  j["max_error"] = c.max_error;
  j["tolerance"] = c.tolerance;
  j["n_samples"] = c.n_samples;
  j["notes"] = c.notes;
  return j;
}

Json point_json(const LoopPoint& m) { return Json::array({m.x, m.y, m.z}); }
Json element_json(const GroupElement& g) { return Json::array({g.x1, g.x2, g.x3, g.x4}); }
Json vector_json(const AlgebraVector& v) { return Json::array({v.c1, v.c2, v.c3, v.c4}); }

Json automorphism_json(const AutomorphismParams& phi) {
  Json j;
  if (const auto* g = std::get_if<GenericAutomorphism>(&phi)) {
    j["variant"] = "a!=1";
    j["k"] = g->k;
    j["l"] = g->l;
    j["n"] = g->n;
    j["f1"] = g->f1;
    j["f2"] = g->f2;
    j["f3"] = g->f3;
  } else {
    const auto& u = std::get<UnitAutomorphism>(phi);
    j["variant"] = "a=1";
    j["k1"] = u.k1;
    j["k2"] = u.k2;
    j["l"] = u.l;
    j["n1"] = u.n1;
    j["n2"] = u.n2;
    j["f1"] = u.f1;
    j["f2"] = u.f2;
    j["f3"] = u.f3;
  }
  return j;
}

Status overall(const Json& checks) {
  Status s = Status::Pass;
  for (const auto& c : checks) {
    const std::string st = c["status"].get<std::string>();
    if (st == "fail") return Status::Fail;
    if (st == "warn") s = Status::Warn;
  }
  return s;
}

void append_prefixed(Json& checks, const VerificationReport& r, const std::string& prefix) {
  for (const Check& c : r.checks) {
    Check named = c;
    named.name = prefix + c.name;
    checks.push_back(check_json(named));
  }
}

SectionCase parse_case(const std::string& s) {
  if (s == "A" || s == "a") return SectionCase::A;
  if (s == "B" || s == "b") return SectionCase::B;
  if (s == "C" || s == "c") return SectionCase::C;
  throw UsageError("--case must be A, B or C");
}

// Options shared by the commands that build a section.
struct SectionOptions {
  std::string case_name = "A";
  double a = 2.0;
  std::string fn;
  std::string preset;
  std::vector<double> coeffs;

  void attach(CLI::App* cmd) {
    cmd->add_option("--case", case_name, "section case A, B or C")->required();
    cmd->add_option("--a", a, "group parameter a != 0")->required();
    cmd->add_option("--fn", fn, "section function as an expression in x, (y,) z");
    cmd->add_option("--preset", preset, "zero | linear-x | bilinear | lemma1 | sin-small");
    cmd->add_option("--coeffs", coeffs, "preset coefficients")->delimiter(',');
  }

  SectionSpec build() const {
    const SectionCase c = parse_case(case_name);
    const GroupParam p(a);
    if (fn.empty() == preset.empty()) throw UsageError("give exactly one of --fn and --preset");
    if (!fn.empty()) {
      if (!coeffs.empty()) throw UsageError("--coeffs applies to --preset only");
      return SectionSpec(c, p, FunctionSpec::expression(fn, arity_for(c)));
    }
    const auto kind = preset_from_name(preset);
    if (!kind) throw UsageError("unknown preset '" + preset + "'");
    return SectionSpec(c, p, make_preset(c, p, *kind, coeffs));
  }

  Json echo(const SectionSpec& spec) const {
    Json j;
    j["case"] = std::string(to_string(spec.section_case()));
    j["a"] = a;
    j["function"] = spec.fn().describe();
    return j;
  }
};

Json verdict_json(const GenerationVerdict& v) {
  Json j;
  j["generates"] = v.generates;
  j["fitted_constant"] = v.fitted_constant ? Json(*v.fitted_constant) : Json(nullptr);
  j["identity_residual"] = v.identity_residual;
  j["fit_rms"] = v.fit_rms;
  j["fit_max"] = v.fit_max;
  j["samples"] = v.samples;
  return j;
}

Check generation_check(const GenerationVerdict& v) {
  if (v.generates) return Check::flag("generation", true, v.samples, "section generates G");
  return Check::warn("generation",
                     "section does not generate G on the tested box: the loop is a group",
                     v.samples);
}

std::vector<double> parse_list(const std::string& text, std::size_t expected,
                               const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + item + "' is not a number");
    }
  }
  if (out.size() != expected) {
    throw UsageError(flag + " expects " + std::to_string(expected) + " comma-separated numbers");
  }
  return out;
}

}  // namespace

std::string to_json_text(const Json& j) {
  std::ostringstream os;
  write_json(os, j, 0);
  os << "\n";
  return os.str();
}

Json checks_json(const VerificationReport& r) {
  Json arr = Json::array();
  for (const Check& c : r.checks) arr.push_back(check_json(c));
  return arr;
}

void emit_report(const Json& report, const std::string& path, std::ostream& out) {
  const std::string text = to_json_text(report);
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification tools for loops on the groups G(a)", "solvloop-cli"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  bool timing = false;
  std::uint64_t seed = 1;
  app.add_option("--out", out_path, "report path (default: stdout)");
  app.add_flag("--timing", timing, "include wall time (breaks byte-identical reports)");
  app.add_option("--seed", seed, "random seed");

  // verify-group
  auto* vg = app.add_subcommand("verify-group", "group and Lie algebra invariants");
  std::vector<double> vg_a{-1, 0.5, 1, 2};
  std::size_t vg_samples = 10000;
  vg->add_option("--a", vg_a, "group parameters")->delimiter(',');
  vg->add_option("--samples", vg_samples);

  // classify
  auto* cl = app.add_subcommand("classify", "classify a one-dimensional subalgebra");
  double cl_a = 2, b1 = 0, b2 = 0, b3 = 0, c4 = 0;
  std::size_t cl_sweep = 0;
  cl->add_option("--a", cl_a)->required();
  cl->add_option("--b1", b1, "coefficient of e3");
  cl->add_option("--b2", b2, "coefficient of e1");
  cl->add_option("--b3", b3, "coefficient of e2");
  cl->add_option("--c4", c4, "coefficient of e4");
  cl->add_option("--sweep", cl_sweep, "additionally classify this many sampled generators");

  // loop-check
  auto* lc = app.add_subcommand("loop-check", "loop axioms, coset consistency, properness");
  SectionOptions lc_sec;
  lc_sec.attach(lc);
  std::size_t lc_samples = 1000;
  double lc_box = 5;
  lc->add_option("--samples", lc_samples);
  lc->add_option("--box", lc_box, "half-width of the sample box");

  // generation
  auto* ge = app.add_subcommand("generation", "does the section generate G");
  SectionOptions ge_sec;
  ge_sec.attach(ge);
  std::size_t ge_grid = 50;
  ge->add_option("--grid", ge_grid, "samples per axis (>= 50)");

  // transitivity
  auto* tr = app.add_subcommand("transitivity", "uniqueness of solutions of the section equations");
  SectionOptions tr_sec;
  tr_sec.attach(tr);
  double tr_box = 5;
  std::size_t tr_samples = 100, tr_resolution = 10000, tr_grid = 5;
  tr->add_option("--box", tr_box, "half-width of the box");
  tr->add_option("--samples", tr_samples);
  tr->add_option("--resolution", tr_resolution, "1-D scan resolution");
  tr->add_option("--grid", tr_grid, "2-D multistart grid per axis");

  // theorem2
  auto* t2 = app.add_subcommand("theorem2", "normalizer and center certificate");
  double t2_a = 2;
  std::size_t t2_samples = 1000;
  t2->add_option("--a", t2_a)->required();
  t2->add_option("--samples", t2_samples);

  // lemma1
  auto* l1 = app.add_subcommand("lemma1", "fit f(z) = K (1 - e^{-z}) and check the equation");
  std::string l1_fn;
  std::optional<double> l1_K;
  double l1_rate = 1;
  auto* l1_fn_opt = l1->add_option("--fn", l1_fn, "expression in z");
  auto* l1_K_opt = l1->add_option("--K", l1_K, "use K (1 - e^{-rate z})");
  l1_fn_opt->excludes(l1_K_opt);
  l1->add_option("--rate", l1_rate);

  // fixed-point
  auto* fp = app.add_subcommand("fixed-point", "fixed cosets of H4");
  double fp_a = 2;
  std::string fp_g;
  std::size_t fp_samples = 0;
  fp->add_option("--a", fp_a)->required();
  fp->add_option("--g", fp_g, "g1,g2,g3,g4 with g4 != 0");
  fp->add_option("--samples", fp_samples, "random g with |g4| in [0.1, 3]");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Json report;
  report["schema"] = 1;
  Json config;
  Json checks = Json::array();
  Json result;

  try {
    if (vg->parsed()) {
      report["command"] = "verify-group";
      config["a"] = vg_a;
      config["samples"] = vg_samples;
      for (double a : vg_a) {
        const GroupParam p(a);
        const std::string prefix = "a=" + format_double(a) + "/";
        const SamplerConfig s{vg_samples, 5.0, seed};
        append_prefixed(checks, group_oracle_check(p, s), prefix);
        append_prefixed(checks, algebra_check(p, {std::min<std::size_t>(vg_samples, 1000), 5.0, seed}),
                        prefix);
      }
    } else if (cl->parsed()) {
      report["command"] = "classify";
      config["a"] = cl_a;
      config["b1"] = b1;
      config["b2"] = b2;
      config["b3"] = b3;
      config["c4"] = c4;
      const GroupParam p(cl_a);
      const AlgebraVector v{b2, b3, b1, c4};
      const SubalgebraClass cls = classify_generator(p, v);
      result["class"] = std::string(to_string(cls.kind));
      result["generator"] = vector_json(v);
      if (cls.automorphism) {
        result["automorphism"] = automorphism_json(*cls.automorphism);
        const AlgebraVector image = apply_automorphism(p, *cls.automorphism, v);
        result["image"] = vector_json(image);
        AlgebraVector target = AlgebraVector::e4();
        if (cls.kind == SubalgebraKind::H1) target = canonical_generator(SubgroupId::H1);
        if (cls.kind == SubalgebraKind::H2) target = canonical_generator(SubgroupId::H2);
        if (cls.kind == SubalgebraKind::H3) target = canonical_generator(SubgroupId::H3);
        checks.push_back(check_json(Check::measured(
            "canonical-span", collinearity_residual(image, target), 1e-12, 1)));
      } else {
        result["automorphism"] = nullptr;
        checks.push_back(check_json(Check::flag(
            "classified", true, 1, "normal in G; the coset space carries no loop")));
      }
      if (cl_sweep > 0) {
        config["sweep"] = cl_sweep;
        append_prefixed(checks, classification_sweep(p, {cl_sweep, 5.0, seed}), "sweep/");
      }
    } else if (lc->parsed()) {
      report["command"] = "loop-check";
      const SectionSpec spec = lc_sec.build();
      config = lc_sec.echo(spec);
      config["samples"] = lc_samples;
      config["box"] = lc_box;
      const LoopCase c(spec);
      const SamplerConfig s{lc_samples, lc_box, seed};
      append_prefixed(checks, axiom_suite(c, s), "");

      Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
      double cross = 0;
      for (std::size_t i = 0; i < lc_samples; ++i) {
        const LoopPoint m1 = rng.point(lc_box);
        const LoopPoint m2 = rng.point(lc_box);
        cross = std::max(cross, coset_cross_check(c, m1, m2));
      }
      checks.push_back(check_json(Check::measured("coset-cross-check", cross, 1e-10, lc_samples)));

      const AssociativityWitness wit = associativity_search(c, s);
      Json assoc;
      assoc["defect"] = wit.defect;
      assoc["m1"] = point_json(wit.m1);
      assoc["m2"] = point_json(wit.m2);
      assoc["m3"] = point_json(wit.m3);
      result["associativity"] = assoc;
      if (c.proper()) {
        checks.push_back(check_json(Check::flag("non-associative", wit.defect > 1e-6, lc_samples,
                                                "proper loop needs a witness with defect > 1e-6")));
      }
      checks.push_back(check_json(generation_check(c.verdict())));
      result["generation"] = verdict_json(c.verdict());
      if (spec.section_case() == SectionCase::A) {
        append_prefixed(checks, normal_subloop_check(c, s), "normal-subloop/");
      }
    } else if (ge->parsed()) {
      report["command"] = "generation";
      const SectionSpec spec = ge_sec.build();
      config = ge_sec.echo(spec);
      config["grid"] = ge_grid;
      DegeneracyConfig dc;
      dc.samples_per_axis = ge_grid;
      const GenerationVerdict v = degeneracy_report(spec, dc);
      result = verdict_json(v);
      checks.push_back(check_json(generation_check(v)));
    } else if (tr->parsed()) {
      report["command"] = "transitivity";
      const SectionSpec spec = tr_sec.build();
      config = tr_sec.echo(spec);
      config["box"] = tr_box;
      config["samples"] = tr_samples;
      config["resolution"] = tr_resolution;
      config["grid"] = tr_grid;
      TransitivityConfig tc;
      tc.samples = tr_samples;
      tc.half_width = tr_box;
      tc.seed = seed;
      tc.solve.root1d.resolution = tr_resolution;
      tc.solve.root2d.grid = tr_grid;
      const VerificationReport r = sharp_transitivity_check(spec, tc);
      append_prefixed(checks, r, "");
      Json samples = Json::array();
      for (const auto& s : r.samples) {
        if (s.roots == 1 && !s.solver_failed) continue;
        Json j;
        j["index"] = s.index;
        j["roots"] = s.roots;
        j["solver_failed"] = s.solver_failed;
        j["note"] = s.note;
        samples.push_back(j);
      }
      result["failing_samples"] = samples;
    } else if (t2->parsed()) {
      report["command"] = "theorem2";
      config["a"] = t2_a;
      config["samples"] = t2_samples;
      const GroupParam p(t2_a);
      const Theorem2Certificate cert = theorem2_certificate(p, {t2_samples, 5.0, seed});
      Json records = Json::array();
      for (const auto& rec : cert.records) {
        Json j;
        j["subgroup"] = std::string(to_string(rec.subgroup));
        j["normalizer_dim_estimate"] = rec.normalizer_dim_estimate;
        j["normalizer_equals_commutator"] = rec.normalizer_equals_commutator;
        j["slab_samples"] = rec.slab_samples;
        j["slab_normalizing"] = rec.slab_normalizing;
        j["off_slab_samples"] = rec.off_slab_samples;
        j["off_slab_normalizing"] = rec.off_slab_normalizing;
        records.push_back(j);
        checks.push_back(check_json(Check::flag(
            std::string("normalizer-") + std::string(to_string(rec.subgroup)),
            rec.normalizer_equals_commutator, rec.slab_samples + rec.off_slab_samples,
            "normalizes iff x4 = 0 on samples")));
      }
      result["records"] = records;
      result["center_dim"] = cert.center_dim;
      result["min_central_defect"] = cert.min_central_defect;
      result["center_trivial"] = cert.center_trivial;
      result["contradiction"] = cert.contradiction;
      result["notes"] = cert.notes;
      checks.push_back(check_json(Check::flag("center-trivial", cert.center_trivial, 5)));
      checks.push_back(check_json(Check::flag("contradiction", cert.contradiction,
                                              cert.records.size())));
    } else if (l1->parsed()) {
      report["command"] = "lemma1";
      std::function<double(double)> f;
      if (l1_K) {
        const double K = *l1_K;
        config["K"] = K;
        f = [K, r = l1_rate](double z) { return -K * std::expm1(-r * z); };
      } else if (!l1_fn.empty()) {
        const expr::Tree tree = expr::parse(l1_fn, "z");
        config["fn"] = tree.to_string();
        f = [tree](double z) { return tree.eval(0, 0, z); };
      } else {
        throw UsageError("lemma1 needs --fn or --K");
      }
      config["rate"] = l1_rate;
      FunctionalEquationConfig fc;
      fc.rate = l1_rate;
      append_prefixed(checks, functional_equation_check(f, fc), "");
    } else if (fp->parsed()) {
      report["command"] = "fixed-point";
      config["a"] = fp_a;
      const GroupParam p(fp_a);
      if (fp_g.empty() == (fp_samples == 0)) throw UsageError("give exactly one of --g and --samples");
      if (!fp_g.empty()) {
        const auto v = parse_list(fp_g, 4, "--g");
        const GroupElement g{v[0], v[1], v[2], v[3]};
        config["g"] = element_json(g);
        const LoopPoint m = fixed_point_witness(p, g);
        result["witness"] = point_json(m);
        checks.push_back(check_json(
            Check::measured("fixed-point-residual", fixed_point_residual(p, g, m), 1e-10, 1)));
      } else {
        config["samples"] = fp_samples;
        append_prefixed(checks, fixed_point_check(p, {fp_samples, 5.0, seed}), "");
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const Status status = overall(checks);
  config["seed"] = seed;
  report["config"] = config;
  report["status"] = std::string(to_string(status));
  report["seed"] = seed;
  report["checks"] = checks;
  if (!result.is_null()) report["result"] = result;
  if (timing) {
    report["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  try {
    emit_report(report, out_path, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return status == Status::Fail ? 1 : 0;
}

}  // namespace solvloop::cli
