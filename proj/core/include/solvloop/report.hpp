#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace solvloop {

enum class Status { Pass, Warn, Fail };

std::string_view to_string(Status s);

/// One named verification outcome. `max_error` is compared against
/// `tolerance`; warn entries never fail a report.
struct Check {
  std::string name;
  Status status = Status::Pass;
  double max_error = 0;
  double tolerance = 0;
  std::size_t n_samples = 0;
  std::string notes;

  static Check measured(std::string name, double max_error, double tolerance,
                        std::size_t n_samples, std::string notes = {});
  static Check flag(std::string name, bool ok, std::size_t n_samples, std::string notes = {});
  static Check warn(std::string name, std::string notes, std::size_t n_samples = 0);
};

/// Per-sample result of a root count.
struct SampleOutcome {
  std::size_t index = 0;
  int roots = 0;
  bool solver_failed = false;
  std::string note;
};

struct VerificationReport {
  std::vector<Check> checks;
  std::vector<SampleOutcome> samples;
  std::uint64_t seed = 0;

  Status status() const;
  bool passed() const { return status() != Status::Fail; }
  const Check* find(std::string_view name) const;
};

}  // namespace solvloop
