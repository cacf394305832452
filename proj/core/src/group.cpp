#include "solvloop/group.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace solvloop {

GroupParam::GroupParam(double a) : a_(a) {
  if (!(a != 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument("group parameter a must be finite and nonzero");
  }
}

// --- Matrix4 ---------------------------------------------------------------

Matrix4 Matrix4::identity() {
  Matrix4 r;
  for (std::size_t i = 0; i < 4; ++i) r(i, i) = 1.0;
  return r;
}

Matrix4 Matrix4::operator*(const Matrix4& rhs) const {
  Matrix4 r;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < 4; ++k) s += (*this)(i, k) * rhs(k, j);
      r(i, j) = s;
    }
  return r;
}

Matrix4 Matrix4::operator+(const Matrix4& rhs) const {
  Matrix4 r;
  for (std::size_t i = 0; i < 16; ++i) r.m[i] = m[i] + rhs.m[i];
  return r;
}

Matrix4 Matrix4::operator-(const Matrix4& rhs) const {
  Matrix4 r;
  for (std::size_t i = 0; i < 16; ++i) r.m[i] = m[i] - rhs.m[i];
  return r;
}

Matrix4 Matrix4::scaled(double s) const {
  Matrix4 r;
  for (std::size_t i = 0; i < 16; ++i) r.m[i] = m[i] * s;
  return r;
}

double Matrix4::max_abs() const {
  double r = 0;
  for (double v : m) r = std::max(r, std::abs(v));
  return r;
}

// --- AlgebraVector ---------------------------------------------------------

AlgebraVector AlgebraVector::basis(std::size_t i) {
  switch (i) {
    case 0: return e1();
    case 1: return e2();
    case 2: return e3();
    case 3: return e4();
  }
  throw std::out_of_range("basis index");
}

AlgebraVector AlgebraVector::operator+(const AlgebraVector& o) const {
  return {c1 + o.c1, c2 + o.c2, c3 + o.c3, c4 + o.c4};
}
AlgebraVector AlgebraVector::operator-(const AlgebraVector& o) const {
  return {c1 - o.c1, c2 - o.c2, c3 - o.c3, c4 - o.c4};
}
AlgebraVector AlgebraVector::operator*(double s) const {
  return {c1 * s, c2 * s, c3 * s, c4 * s};
}
double AlgebraVector::max_abs() const {
  return std::max({std::abs(c1), std::abs(c2), std::abs(c3), std::abs(c4)});
}

// --- Structure constants ---------------------------------------------------

StructureConstants::StructureConstants(const GroupParam& p) {
  auto set = [this](std::size_t i, std::size_t j, std::array<double, 4> v) {
    for (std::size_t k = 0; k < 4; ++k) {
      c_[i][j][k] = v[k];
      c_[j][i][k] = -v[k];
    }
  };
  set(0, 3, {p.a(), 0, 0, 0});
  set(1, 3, {0, 1, 0, 0});
  set(2, 3, {0, 1, 1, 0});
}

AlgebraVector StructureConstants::bracket(const AlgebraVector& u,
                                          const AlgebraVector& v) const {
  auto uc = u.coords();
  auto vc = v.coords();
  std::array<double, 4> r{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (uc[i] == 0) continue;
    for (std::size_t j = 0; j < 4; ++j) {
      if (vc[j] == 0) continue;
      for (std::size_t k = 0; k < 4; ++k) r[k] += uc[i] * vc[j] * c_[i][j][k];
    }
  }
  return {r[0], r[1], r[2], r[3]};
}

double StructureConstants::antisymmetry_defect() const {
  double d = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k)
        d = std::max(d, std::abs(c_[i][j][k] + c_[j][i][k]));
  return d;
}

double StructureConstants::jacobi_defect() const {
  double d = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) {
        auto ei = AlgebraVector::basis(i);
        auto ej = AlgebraVector::basis(j);
        auto ek = AlgebraVector::basis(k);
        auto s = bracket(bracket(ei, ej), ek) + bracket(bracket(ej, ek), ei) +
                 bracket(bracket(ek, ei), ej);
        d = std::max(d, s.max_abs());
      }
  return d;
}

// --- Group law -------------------------------------------------------------

GroupElement mul(const GroupParam& p, const GroupElement& g, const GroupElement& h) {
  const double e = std::exp(g.x4);
  const double ea = std::exp(p.a() * g.x4);
  return {g.x1 + ea * h.x1, g.x2 + e * h.x2 + g.x4 * e * h.x3, g.x3 + e * h.x3,
          g.x4 + h.x4};
}

GroupElement inv(const GroupParam& p, const GroupElement& g) {
  const double e = std::exp(-g.x4);
  const double ea = std::exp(-p.a() * g.x4);
  return {-ea * g.x1, -e * g.x2 + g.x4 * e * g.x3, -e * g.x3, -g.x4};
}

Matrix4 as_matrix(const GroupParam& p, const GroupElement& g) {
  const double e = std::exp(g.x4);
  Matrix4 m;
  m(0, 0) = std::exp(p.a() * g.x4);
  m(1, 1) = e;
  m(1, 2) = g.x4 * e;
  m(2, 2) = e;
  m(0, 3) = g.x1;
  m(1, 3) = g.x2;
  m(2, 3) = g.x3;
  m(3, 3) = 1.0;
  return m;
}

GroupElement from_matrix(const GroupParam& p, const Matrix4& m, double tol) {
  if (!(m(1, 1) > 0)) throw std::domain_error("matrix leaves the coordinate patch");
  const double x4 = std::log(m(1, 1));
  GroupElement g{m(0, 3), m(1, 3), m(2, 3), x4};
  // Every remaining entry is determined by x4; compare against the rebuilt
  // matrix.
  const Matrix4 rebuilt = as_matrix(p, g);
  const double scale = std::max(1.0, m.max_abs());
  if ((rebuilt - m).max_abs() > tol * scale) {
    throw std::domain_error("matrix is not of the form g(x1,x2,x3,x4)");
  }
  return g;
}

// --- Lie algebra -----------------------------------------------------------

AlgebraVector bracket(const GroupParam& p, const AlgebraVector& u, const AlgebraVector& v) {
  return StructureConstants(p).bracket(u, v);
}

Matrix4 algebra_matrix(const GroupParam& p, const AlgebraVector& v) {
  Matrix4 m;
  m(0, 3) = v.c1;
  m(1, 3) = v.c2;
  m(2, 3) = v.c3;
  m(0, 0) = p.a() * v.c4;
  m(1, 1) = v.c4;
  m(2, 2) = v.c4;
  m(1, 2) = v.c4;
  return m;
}

Matrix4 commutator(const Matrix4& m, const Matrix4& n) { return m * n - n * m; }

AlgebraVector algebra_from_matrix(const GroupParam&, const Matrix4& m) {
  return {m(0, 3), m(1, 3), m(2, 3), m(1, 1)};
}

Matrix4 expm(const Matrix4& m) {
  // Scale so the norm is at most 1/2; 20 Taylor terms then leave a remainder
  // far below 1e-16 relative.
  double norm = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    double row = 0;
    for (std::size_t j = 0; j < 4; ++j) row += std::abs(m(i, j));
    norm = std::max(norm, row);
  }
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix4 a = m.scaled(std::ldexp(1.0, -squarings));

  Matrix4 term = Matrix4::identity();
  Matrix4 sum = Matrix4::identity();
  for (int k = 1; k <= 20; ++k) {
    term = (term * a).scaled(1.0 / k);
    sum = sum + term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

GroupElement exp_alg(const GroupParam& p, const AlgebraVector& v, double t) {
  return from_matrix(p, expm(algebra_matrix(p, v * t)));
}

AlgebraVector apply_automorphism(const GroupParam& p, const AutomorphismParams& phi,
                                 const AlgebraVector& v) {
  if (const auto* g = std::get_if<GenericAutomorphism>(&phi)) {
    if (g->k * g->l == 0) throw AutomorphismError("automorphism requires k*l != 0");
    // e1 -> k e1, e2 -> l e2, e3 -> n e2 + l e3, e4 -> f1 e1 + f2 e2 + f3 e3 + e4
    return {g->k * v.c1 + g->f1 * v.c4,
            g->l * v.c2 + g->n * v.c3 + g->f2 * v.c4,
            g->l * v.c3 + g->f3 * v.c4,
            v.c4};
  }
  const auto& u = std::get<UnitAutomorphism>(phi);
  if (!p.a_is_one()) {
    throw AutomorphismError("a = 1 automorphism applied to a group with a != 1");
  }
  if (u.k1 * u.l == 0) throw AutomorphismError("automorphism requires k1*l != 0");
  return {u.k1 * v.c1 + u.n1 * v.c3 + u.f1 * v.c4,
          u.k2 * v.c1 + u.l * v.c2 + u.n2 * v.c3 + u.f2 * v.c4,
          u.l * v.c3 + u.f3 * v.c4,
          v.c4};
}

double central_defect(const GroupParam& p, const AlgebraVector& v,
                      std::span<const GroupElement> probes) {
  if (probes.empty()) throw std::invalid_argument("central_defect needs probes");
  double d = 0;
  for (double t : {0.25, 0.5, 1.0}) {
    const GroupElement x = exp_alg(p, v, t);
    for (const auto& q : probes) {
      d = std::max(d, max_abs_distance(mul(p, x, q), mul(p, q, x)));
    }
  }
  return d;
}

int center_dimension(const GroupParam& p) {
  const StructureConstants sc(p);
  // Rows: coefficient k of [v, e_j] as a linear form in v.
  std::vector<std::array<double, 4>> rows;
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 4; ++k) {
      std::array<double, 4> r{};
      for (std::size_t i = 0; i < 4; ++i) r[i] = sc(i, j, k);
      rows.push_back(r);
    }
  int rank = 0;
  for (std::size_t col = 0; col < 4 && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t piv = rank;
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (std::abs(rows[r][col]) > std::abs(rows[piv][col])) piv = r;
    if (std::abs(rows[piv][col]) < 1e-12) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const double f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < 4; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return 4 - rank;
}

// --- Distances -------------------------------------------------------------

double scaled_distance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw std::invalid_argument("size mismatch");
  double diff = 0, scale = 1;
  for (std::size_t i = 0; i < u.size(); ++i) {
    diff = std::max(diff, std::abs(u[i] - v[i]));
    scale = std::max({scale, std::abs(u[i]), std::abs(v[i])});
  }
  return diff / scale;
}

double scaled_distance(const GroupElement& g, const GroupElement& h) {
  const auto a = g.coords();
  const auto b = h.coords();
  return scaled_distance(a, b);
}

double max_abs_distance(const GroupElement& g, const GroupElement& h) {
  return std::max({std::abs(g.x1 - h.x1), std::abs(g.x2 - h.x2), std::abs(g.x3 - h.x3),
                   std::abs(g.x4 - h.x4)});
}

}  // namespace solvloop
