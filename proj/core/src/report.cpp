#include "solvloop/report.hpp"

#include <algorithm>
#include <cmath>

namespace solvloop {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Warn: return "warn";
    case Status::Fail: return "fail";
  }
  return "?";
}

Check Check::measured(std::string name, double max_error, double tolerance, std::size_t n_samples,
                      std::string notes) {
  // NaN never passes.
  const bool ok = max_error <= tolerance;
  return {std::move(name), ok ? Status::Pass : Status::Fail, max_error, tolerance, n_samples,
          std::move(notes)};
}

Check Check::flag(std::string name, bool ok, std::size_t n_samples, std::string notes) {
  return {std::move(name), ok ? Status::Pass : Status::Fail, ok ? 0.0 : 1.0, 0.0, n_samples,
          std::move(notes)};
}

Check Check::warn(std::string name, std::string notes, std::size_t n_samples) {
  return {std::move(name), Status::Warn, 0.0, 0.0, n_samples, std::move(notes)};
}

Status VerificationReport::status() const {
  Status s = Status::Pass;
  for (const auto& c : checks) {
    if (c.status == Status::Fail) return Status::Fail;
    if (c.status == Status::Warn) s = Status::Warn;
  }
  return s;
}

const Check* VerificationReport::find(std::string_view name) const {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const Check& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

}  // namespace solvloop
