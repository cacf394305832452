#pragma once

// Normalizers of the loop stabilizers and the center of G(a), combined into a
// certificate that G(a) cannot be the multiplication group of a proper loop:
// such a group would need N(H_i) = H_i x Z, but N(H_i) is the 3-dimensional
// commutator subgroup G' while Z is trivial.

#include <string>
#include <vector>

#include "solvloop/group.hpp"
#include "solvloop/random.hpp"
#include "solvloop/subgroups.hpp"

namespace solvloop {

/// Tests the linear relations defining H1, H2, H3 or H4.
bool in_subgroup(const GroupElement& g, SubgroupId sub, double tol = 1e-10);

/// Whether g s g^{-1} lies in sub for s = subgroup_element(sub, 1).
/// Throws InadmissibleSubgroup for H2/H3 at a = 1 and std::invalid_argument
/// for H4.
bool normalizes(const GroupParam& p, const GroupElement& g, SubgroupId sub);

struct NormalizerRecord {
  SubgroupId subgroup;
  int normalizer_dim_estimate = 0;  // sampled surrogate, see notes
  bool normalizer_equals_commutator = false;
  std::size_t slab_samples = 0;      // x4 = 0
  std::size_t slab_normalizing = 0;
  std::size_t off_slab_samples = 0;  // |x4| >= min_off_slab
  std::size_t off_slab_normalizing = 0;
};

struct Theorem2Certificate {
  double a = 1;
  std::vector<NormalizerRecord> records;
  int center_dim = -1;
  double min_central_defect = 0;
  bool center_trivial = false;
  bool contradiction = false;
  std::vector<std::string> notes;
};

/// Off-slab samples draw |x4| uniformly in [min_off_slab, half_width].
Theorem2Certificate theorem2_certificate(const GroupParam& p, const SamplerConfig& sampler,
                                         double min_off_slab = 0.1);

}  // namespace solvloop
