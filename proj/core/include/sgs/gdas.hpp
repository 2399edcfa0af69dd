#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sgs/gdpa.hpp"

namespace sgs {

struct CoverageResult {
  std::vector<int> samples;      // nodes whose disc centers were shifted, in sampling order
  std::vector<double> scalars;   // per-node disc scalars at termination
  bool achieved = true;          // false when even sampling everything misses the threshold
};

/// One Gershgorin disc alignment pass on B_p = H^T H + mu L_p. Nodes are
/// visited in descending-degree order (ties by index). A node whose current
/// left-end is below the threshold is sampled (center shifted by one) and
/// scaled so its left-end sits exactly on the threshold; coverage then
/// expands breadth-first to every neighbor that can reach the threshold
/// with a scalar >= 1.
CoverageResult gdas_coverage(const AlignedOperator& aligned, double mu, double threshold);

struct SampleSet {
  std::vector<int> nodes;
  double t_final = 0.0;
  double mu = 0.0;
  std::vector<double> scalars_final;
};

/// Binary search for the largest threshold in
/// [mu * lambda_min, mu * lambda_min + 1] whose coverage stays within the
/// budget; terminates when the bracket is narrower than 1e-6. A zero budget
/// returns the empty set at mu * lambda_min.
SampleSet gdas_sample(const AlignedOperator& aligned, double mu, int budget);

/// Structured text serialization (17 significant digits).
void write_sample_set(std::ostream& os, const SampleSet& s);
SampleSet read_sample_set(std::istream& is);
void write_sample_set_file(const std::string& path, const SampleSet& s);
SampleSet read_sample_set_file(const std::string& path);

}  // namespace sgs
