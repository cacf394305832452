#pragma once

// The 4-dimensional solvable Lie group G(a) with Lie algebra A_{4,2}^a,
// realized as 4x4 upper triangular matrices
//
//   g(x1,x2,x3,x4) = | e^{a x4}  0        0            x1 |
//                    | 0         e^{x4}   x4 e^{x4}    x2 |
//                    | 0         0        e^{x4}       x3 |
//                    | 0         0        0            1  |
//
// Coordinates are global, so elements are stored as plain 4-vectors and the
// matrix form is only used as an oracle.

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace solvloop {

class GroupParam {
 public:
  explicit GroupParam(double a);

  double a() const noexcept { return a_; }
  bool a_is_one() const noexcept { return a_ == 1.0; }

 private:
  double a_;
};

struct GroupElement {
  double x1 = 0, x2 = 0, x3 = 0, x4 = 0;

  static GroupElement identity() { return {}; }
  std::array<double, 4> coords() const { return {x1, x2, x3, x4}; }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

struct Matrix4 {
  std::array<double, 16> m{};  // row-major

  static Matrix4 identity();
  static Matrix4 zero() { return {}; }

  double& operator()(std::size_t r, std::size_t c) { return m[4 * r + c]; }
  double operator()(std::size_t r, std::size_t c) const { return m[4 * r + c]; }

  Matrix4 operator*(const Matrix4& rhs) const;
  Matrix4 operator+(const Matrix4& rhs) const;
  Matrix4 operator-(const Matrix4& rhs) const;
  Matrix4 scaled(double s) const;
  double max_abs() const;
};

/// Coefficients over the basis e1..e4.
struct AlgebraVector {
  double c1 = 0, c2 = 0, c3 = 0, c4 = 0;

  static AlgebraVector e1() { return {1, 0, 0, 0}; }
  static AlgebraVector e2() { return {0, 1, 0, 0}; }
  static AlgebraVector e3() { return {0, 0, 1, 0}; }
  static AlgebraVector e4() { return {0, 0, 0, 1}; }
  static AlgebraVector basis(std::size_t i);

  std::array<double, 4> coords() const { return {c1, c2, c3, c4}; }
  AlgebraVector operator+(const AlgebraVector& o) const;
  AlgebraVector operator-(const AlgebraVector& o) const;
  AlgebraVector operator*(double s) const;
  double max_abs() const;
  friend bool operator==(const AlgebraVector&, const AlgebraVector&) = default;
};

/// Bracket table [e_i, e_j] = sum_k c[i][j][k] e_k. Nonzero entries:
/// [e1,e4] = a e1, [e2,e4] = e2, [e3,e4] = e2 + e3 and their antisymmetric
/// partners.
class StructureConstants {
 public:
  explicit StructureConstants(const GroupParam& p);

  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[i][j][k];
  }
  AlgebraVector bracket(const AlgebraVector& u, const AlgebraVector& v) const;

  /// Largest |c_ij^k + c_ji^k| over the table.
  double antisymmetry_defect() const;
  /// Largest coefficient of [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej].
  double jacobi_defect() const;

 private:
  std::array<std::array<std::array<double, 4>, 4>, 4> c_{};
};

// Automorphisms of the Lie algebra. For a != 1:
//   e1 -> k e1, e2 -> l e2, e3 -> n e2 + l e3, e4 -> f1 e1 + f2 e2 + f3 e3 + e4
// For a == 1 the group is larger:
//   e1 -> k1 e1 + k2 e2, e2 -> l e2, e3 -> n1 e1 + n2 e2 + l e3, e4 as above.
struct GenericAutomorphism {
  double k = 1, l = 1, n = 0, f1 = 0, f2 = 0, f3 = 0;
};
struct UnitAutomorphism {
  double k1 = 1, k2 = 0, l = 1, n1 = 0, n2 = 0, f1 = 0, f2 = 0, f3 = 0;
};
using AutomorphismParams = std::variant<GenericAutomorphism, UnitAutomorphism>;

/// Thrown when automorphism parameters do not fit the group's variant or are
/// singular.
class AutomorphismError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

GroupElement mul(const GroupParam& p, const GroupElement& g, const GroupElement& h);
GroupElement inv(const GroupParam& p, const GroupElement& g);
Matrix4 as_matrix(const GroupParam& p, const GroupElement& g);

/// Reads coordinates back from a matrix of the displayed form. Throws
/// std::domain_error when the matrix is not in G(a) to within `tol`.
GroupElement from_matrix(const GroupParam& p, const Matrix4& m, double tol = 1e-9);

AlgebraVector bracket(const GroupParam& p, const AlgebraVector& u, const AlgebraVector& v);

/// Matrix realization of an algebra element: e1,e2,e3 -> E14,E24,E34 and
/// e4 -> diag(a,1,1,0) + E23, the generator of t -> g(0,0,0,t).
Matrix4 algebra_matrix(const GroupParam& p, const AlgebraVector& v);

/// Matrix commutator MN - NM.
Matrix4 commutator(const Matrix4& m, const Matrix4& n);

/// Reads an algebra element back from its matrix realization.
AlgebraVector algebra_from_matrix(const GroupParam& p, const Matrix4& m);

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
Matrix4 expm(const Matrix4& m);

GroupElement exp_alg(const GroupParam& p, const AlgebraVector& v, double t);

AlgebraVector apply_automorphism(const GroupParam& p, const AutomorphismParams& phi,
                                 const AlgebraVector& v);

/// Largest coordinate distance between exp(tv) q and q exp(tv) over the probes
/// and t in {0.25, 0.5, 1}.
double central_defect(const GroupParam& p, const AlgebraVector& v,
                      std::span<const GroupElement> probes);

/// Dimension of the center of the Lie algebra, from the rank of the stacked
/// ad-matrices of the basis.
int center_dimension(const GroupParam& p);

/// max_i |u_i - v_i| / max(1, max_i |u_i|, max_i |v_i|).
double scaled_distance(std::span<const double> u, std::span<const double> v);
double scaled_distance(const GroupElement& g, const GroupElement& h);
double max_abs_distance(const GroupElement& g, const GroupElement& h);

}  // namespace solvloop
