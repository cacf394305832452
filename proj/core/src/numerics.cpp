#include "solvloop/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace solvloop::numerics {

Box::Box(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() || lower_.empty()) {
    throw std::invalid_argument("box bounds must have equal nonzero dimension");
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) throw std::invalid_argument("box requires lower < upper");
  }
}

Box Box::cube(std::size_t dim, double lo, double hi) {
  return Box(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
}

Box Box::centered(std::span<const double> center, double half_width) {
  std::vector<double> lo, hi;
  for (double c : center) {
    lo.push_back(c - half_width);
    hi.push_back(c + half_width);
  }
  return Box(std::move(lo), std::move(hi));
}

bool Box::contains(std::span<const double> p, double slack) const {
  if (p.size() != dim()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < lower_[i] - slack || p[i] > upper_[i] + slack) return false;
  }
  return true;
}

Box Box::scaled(double factor) const {
  std::vector<double> lo(dim()), hi(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    const double c = 0.5 * (lower_[i] + upper_[i]);
    const double h = 0.5 * (upper_[i] - lower_[i]) * factor;
    lo[i] = c - h;
    hi[i] = c + h;
  }
  return Box(std::move(lo), std::move(hi));
}

// --- 1-D -------------------------------------------------------------------

namespace {

double bisect(const std::function<double(double)>& fn, double lo, double hi, double flo,
              double tol) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= tol * std::max(1.0, std::abs(mid))) return mid;
    const double fm = fn(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> root1d(const std::function<double(double)>& fn, const Box& box,
                           const Root1dOptions& opts) {
  const double lo = box.lower(0);
  const double hi = box.upper(0);
  const std::size_t n = std::max<std::size_t>(opts.resolution, 1);
  const double h = (hi - lo) / static_cast<double>(n);

  std::vector<double> roots;
  double x_prev = lo;
  double f_prev = fn(lo);
  if (f_prev == 0) roots.push_back(lo);
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = (i == n) ? hi : lo + h * static_cast<double>(i);
    const double f = fn(x);
    if (f == 0) {
      roots.push_back(x);
    } else if (f_prev != 0 && ((f < 0) != (f_prev < 0))) {
      roots.push_back(bisect(fn, x_prev, x, f_prev, opts.tol));
    }
    x_prev = x;
    f_prev = f;
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  for (double r : roots) {
    if (merged.empty() || r - merged.back() > opts.dedup) merged.push_back(r);
  }
  return merged;
}

// --- 2-D -------------------------------------------------------------------

std::array<Vec2, 2> fd_jacobian(const Fn2& fn, const Vec2& at, double step) {
  const Vec2 f0 = fn(at);
  std::array<Vec2, 2> j{};
  for (std::size_t c = 0; c < 2; ++c) {
    Vec2 p = at;
    const double h = step * std::max(1.0, std::abs(at[c]));
    p[c] += h;
    const Vec2 f1 = fn(p);
    for (std::size_t r = 0; r < 2; ++r) j[r][c] = (f1[r] - f0[r]) / h;
  }
  return j;
}

namespace {

double norm_inf(const Vec2& v) { return std::max(std::abs(v[0]), std::abs(v[1])); }

bool finite(const Vec2& v) { return std::isfinite(v[0]) && std::isfinite(v[1]); }

}  // namespace

std::optional<Vec2> newton2d(const Fn2& fn, Vec2 x, const Root2dOptions& opts) {
  Vec2 f = fn(x);
  if (!finite(f)) return std::nullopt;
  int polish = 0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    // Past tolerance, keep taking full steps while they still help.
    if (norm_inf(f) <= opts.tol && ++polish > 3) return x;
    const auto j = fd_jacobian(fn, x, opts.fd_step);
    const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    if (det == 0 || !std::isfinite(det)) return std::nullopt;
    const Vec2 step{(j[1][1] * f[0] - j[0][1] * f[1]) / det,
                    (-j[1][0] * f[0] + j[0][0] * f[1]) / det};
    double lambda = 1.0;
    bool improved = false;
    for (int k = 0; k <= opts.max_halvings; ++k, lambda *= 0.5) {
      const Vec2 trial{x[0] - lambda * step[0], x[1] - lambda * step[1]};
      const Vec2 ft = fn(trial);
      if (finite(ft) && norm_inf(ft) < norm_inf(f)) {
        x = trial;
        f = ft;
        improved = true;
        break;
      }
    }
    if (!improved && norm_inf(f) <= opts.tol) return x;
    if (!improved) {
      // Stalled at machine resolution: accept only if already essentially
      // converged.
      return norm_inf(f) <= 10 * opts.tol ? std::optional<Vec2>(x) : std::nullopt;
    }
  }
  return norm_inf(f) <= 10 * opts.tol ? std::optional<Vec2>(x) : std::nullopt;
}

Root2dResult root2d(const Fn2& fn, const Box& box, const Root2dOptions& opts) {
  if (box.dim() != 2) throw std::invalid_argument("root2d needs a 2-D box");
  Root2dResult result;
  std::vector<Vec2> found;
  const std::size_t n = std::max<std::size_t>(opts.grid, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto node = [&](std::size_t d, std::size_t k) {
        if (n == 1) return 0.5 * (box.lower(d) + box.upper(d));
        return box.lower(d) +
               (box.upper(d) - box.lower(d)) * static_cast<double>(k) / static_cast<double>(n - 1);
      };
      const auto root = newton2d(fn, {node(0, i), node(1, j)}, opts);
      if (!root) continue;
      result.any_converged = true;
      if (!box.contains(*root, opts.dedup)) continue;
      found.push_back(*root);
    }
  std::sort(found.begin(), found.end());
  for (const auto& r : found) {
    const bool dup = std::any_of(result.roots.begin(), result.roots.end(), [&](const Vec2& q) {
      return std::max(std::abs(q[0] - r[0]), std::abs(q[1] - r[1])) <= opts.dedup;
    });
    if (!dup) result.roots.push_back(r);
  }
  return result;
}

// --- Functional equation ---------------------------------------------------

FitResult functional_fit(std::span<const std::pair<double, double>> samples, double rate) {
  double num = 0, den = 0;
  std::size_t used = 0;
  for (const auto& [z, f] : samples) {
    if (std::abs(z) < 1e-3) continue;
    const double phi = -std::expm1(-rate * z);
    num += phi * f;
    den += phi * phi;
    ++used;
  }
  if (used < 2) throw InsufficientSamples("functional_fit needs >= 2 samples with |z| >= 1e-3");
  FitResult r;
  r.K = num / den;
  r.n_samples = used;
  double ss = 0;
  for (const auto& [z, f] : samples) {
    if (std::abs(z) < 1e-3) continue;
    const double res = std::abs(f - r.K * -std::expm1(-rate * z));
    ss += res * res;
    r.max_residual = std::max(r.max_residual, res);
  }
  r.rms_residual = std::sqrt(ss / static_cast<double>(used));
  return r;
}

double functional_equation_residual(const std::function<double(double)>& f,
                                    std::span<const double> zs, double rate) {
  double worst = 0;
  for (double z1 : zs)
    for (double z2 : zs) {
      const double lhs = f(z2) + std::exp(-rate * z2) * f(z1);
      worst = std::max(worst, std::abs(lhs - f(z1 + z2)));
    }
  return worst;
}

}  // namespace solvloop::numerics
