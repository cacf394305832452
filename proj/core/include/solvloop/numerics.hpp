#pragma once

// Root finding and uniqueness scans for the implicit section equations, and
// the least-squares fitter for the functional equation
//   f(z2) + e^{-z2} f(z1) = f(z1 + z2),
// whose continuous solutions are exactly f(z) = K (1 - e^{-z}).

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace solvloop::numerics {

class Box {
 public:
  Box(std::vector<double> lower, std::vector<double> upper);
  static Box cube(std::size_t dim, double lo, double hi);
  static Box centered(std::span<const double> center, double half_width);

  std::size_t dim() const noexcept { return lower_.size(); }
  double lower(std::size_t i) const { return lower_.at(i); }
  double upper(std::size_t i) const { return upper_.at(i); }
  bool contains(std::span<const double> p, double slack = 0) const;
  Box scaled(double factor) const;  // about the centre

 private:
  std::vector<double> lower_, upper_;
};

struct Root1dOptions {
  std::size_t resolution = 10000;
  double tol = 1e-12;
  /// Roots closer than this are merged.
  double dedup = 1e-9;
};

/// Sign-change scan of `fn` over [box.lower(0), box.upper(0)] followed by
/// bisection. Tangential roots without a sign change are not found.
std::vector<double> root1d(const std::function<double(double)>& fn, const Box& box,
                           const Root1dOptions& opts = {});

using Vec2 = std::array<double, 2>;
using Fn2 = std::function<Vec2(const Vec2&)>;

struct Root2dOptions {
  std::size_t grid = 5;  // multistart points per axis
  double fd_step = 1e-6;
  double dedup = 1e-6;
  double tol = 1e-10;
  int max_iterations = 100;
  int max_halvings = 30;
};

struct Root2dResult {
  std::vector<Vec2> roots;  // inside the box, deduplicated, sorted
  bool any_converged = false;
};

/// Forward-difference Jacobian, row i = d fn_i / d (x, y).
std::array<Vec2, 2> fd_jacobian(const Fn2& fn, const Vec2& at, double step);

/// Damped Newton from a single start. Returns the converged point, if any.
std::optional<Vec2> newton2d(const Fn2& fn, Vec2 start, const Root2dOptions& opts);

/// Multistart damped Newton over a grid of starting points in `box`.
Root2dResult root2d(const Fn2& fn, const Box& box, const Root2dOptions& opts = {});

struct FitResult {
  double K = 0;
  double rms_residual = 0;
  double max_residual = 0;
  std::size_t n_samples = 0;
};

class InsufficientSamples : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Least squares fit of f(z) ~ K (1 - e^{-rate z}). Samples with |z| < 1e-3
/// are skipped; throws InsufficientSamples when fewer than two remain.
FitResult functional_fit(std::span<const std::pair<double, double>> samples,
                         double rate = 1.0);

/// Largest |f(z2) + e^{-rate z2} f(z1) - f(z1 + z2)| over all ordered pairs.
double functional_equation_residual(const std::function<double(double)>& f,
                                    std::span<const double> zs, double rate = 1.0);

}  // namespace solvloop::numerics
