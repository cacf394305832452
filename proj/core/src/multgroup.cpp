#include "solvloop/multgroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace solvloop {

bool in_subgroup(const GroupElement& g, SubgroupId sub, double tol) {
  auto zero = [tol](double v) { return std::abs(v) <= tol; };
  switch (sub) {
    case SubgroupId::H1: return zero(g.x1) && zero(g.x2) && zero(g.x4);
    case SubgroupId::H2: return zero(g.x1 - g.x3) && zero(g.x2) && zero(g.x4);
    case SubgroupId::H3: return zero(g.x1 - g.x2) && zero(g.x3) && zero(g.x4);
    case SubgroupId::H4: return zero(g.x1) && zero(g.x2) && zero(g.x3);
  }
  return false;
}

bool normalizes(const GroupParam& p, const GroupElement& g, SubgroupId sub) {
  if (sub == SubgroupId::H4) throw std::invalid_argument("normalizes: H4 is not a loop stabilizer");
  if (!admissible(p, sub)) {
    throw InadmissibleSubgroup(std::string(to_string(sub)) + " is not admissible for a = 1");
  }
  const GroupElement s = subgroup_element(p, sub, 1.0);
  return in_subgroup(mul(p, mul(p, g, s), inv(p, g)), sub);
}

Theorem2Certificate theorem2_certificate(const GroupParam& p, const SamplerConfig& sampler,
                                         double min_off_slab) {
  Theorem2Certificate cert;
  cert.a = p.a();
  Rng rng(sampler.seed);
  const double w = sampler.half_width;

  bool all_records = true;
  for (SubgroupId sub : {SubgroupId::H1, SubgroupId::H2, SubgroupId::H3}) {
    if (!admissible(p, sub)) continue;
    NormalizerRecord rec;
    rec.subgroup = sub;
    for (std::size_t i = 0; i < sampler.n; ++i) {
      GroupElement g = rng.element(w);
      g.x4 = 0;
      ++rec.slab_samples;
      if (normalizes(p, g, sub)) ++rec.slab_normalizing;

      GroupElement h = rng.element(w);
      h.x4 = rng.signed_magnitude(min_off_slab, std::max(min_off_slab, w));
      ++rec.off_slab_samples;
      if (normalizes(p, h, sub)) ++rec.off_slab_normalizing;
    }
    rec.normalizer_equals_commutator =
        rec.slab_normalizing == rec.slab_samples && rec.off_slab_normalizing == 0;
    rec.normalizer_dim_estimate = rec.normalizer_equals_commutator ? 3 : -1;
    all_records = all_records && rec.normalizer_equals_commutator;
    cert.records.push_back(rec);
  }

  cert.center_dim = center_dimension(p);
  const std::vector<GroupElement> probes{exp_alg(p, AlgebraVector::e4(), 1.0),
                                         exp_alg(p, AlgebraVector::e1(), 1.0),
                                         exp_alg(p, AlgebraVector::e3(), 1.0)};
  double min_defect = std::numeric_limits<double>::infinity();
  for (const AlgebraVector& v : {AlgebraVector::e1(), AlgebraVector::e2(), AlgebraVector::e3(),
                                 AlgebraVector::e4(), AlgebraVector::e2() + AlgebraVector::e3()}) {
    min_defect = std::min(min_defect, central_defect(p, v, probes));
  }
  cert.min_central_defect = min_defect;
  cert.center_trivial = cert.center_dim == 0 && min_defect > 0;
  cert.contradiction = cert.center_trivial && all_records && !cert.records.empty();

  cert.notes.push_back(
      "normalizer dimension is a sampled surrogate: 3 when every x4 = 0 sample normalizes and "
      "no sampled x4 != 0 element does");
  cert.notes.push_back(
      "a multiplication group with stabilizer H_i would need N(H_i) = H_i x Z(G); here N(H_i) = "
      "G' has dimension 3 and Z(G) is trivial");
  return cert;
}

}  // namespace solvloop
