#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "eja/algebra.hpp"
#include "eja/matrix.hpp"
#include "eja/spectral.hpp"

namespace eja {

/// L_a(x) = a o x.
Element lyap(const Element& a, const Element& x);
/// P_a(x) = 2 a o (a o x) - a^2 o x.
Element quad_rep(const Element& a, const Element& x);
/// P_{sqrt a}(b) for a in the cone.
Element quad_rep_sqrt(const Element& a, const Element& b, double tol = 1e-10);

/// Real symmetric n x n multiplier acting on Peirce components.
class SchurMatrix {
 public:
  /// Validates symmetry to `sym_tol`, then symmetrizes.
  explicit SchurMatrix(Matrix entries, double sym_tol = 1e-12);

  static SchurMatrix ones(std::size_t n);
  /// [(d_i + d_j) / 2]: the multiplier of L_a when d = lambda(a).
  static SchurMatrix lyapunov_form(std::span<const double> d);
  /// [d_i d_j]: the multiplier of P_a when d = lambda(a).
  static SchurMatrix quadratic_form(std::span<const double> d);

  std::size_t n() const noexcept { return entries_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const Matrix& entries() const noexcept { return entries_; }
  std::vector<double> diag() const { return entries_.diagonal(); }
  double min_eigenvalue() const;
  bool is_psd(double tol = 1e-10) const { return min_eigenvalue() >= -tol; }

 private:
  Matrix entries_;
};

/// Peirce components x_ij (i <= j) of x relative to a Jordan frame.
struct PeirceDecomposition {
  std::size_t n = 0;
  std::vector<Element> components;  // packed upper triangle, row-major

  const Element& at(std::size_t i, std::size_t j) const { return components[packed_index(n, i, j)]; }
  Element sum() const;
};

/// x_ii = <x, e_i> e_i, x_ij = 4 e_i o (e_j o x). Throws ArgumentError if the
/// frame has the wrong size, lives in another algebra, or does not sum to e.
PeirceDecomposition peirce_project(const JordanFrame& frame, const Element& x);

/// A . x = sum_{i <= j} a_ij x_ij relative to `frame`.
Element schur(const SchurMatrix& a, const JordanFrame& frame, const Element& x);

/// A linear map on one algebra, tagged with whether it is positive (maps the
/// cone into itself) by construction.
struct LinearMap {
  DescriptorPtr descriptor;
  std::function<Element(const Element&)> apply;
  bool positive_by_construction = false;
  std::string name;

  Element operator()(const Element& x) const { return apply(x); }
};

LinearMap lyap_map(const Element& a);
/// P_a is a positive map for every a.
LinearMap quad_rep_map(const Element& a);
/// Positive by construction iff A is positive semidefinite.
LinearMap schur_map(const SchurMatrix& a, const JordanFrame& frame);
/// outer(inner(x)).
LinearMap compose(const LinearMap& outer, const LinearMap& inner);
/// s * p + t * q; positive when s, t >= 0 and both maps are.
LinearMap combine_maps(double s, const LinearMap& p, double t, const LinearMap& q);

/// Coordinates in the orthonormal basis of the trace inner product
/// (Sym: E_ii, (E_ij + E_ji)/sqrt2; Spin: e_k/sqrt2).
std::vector<double> to_orthonormal(const Element& x);
Element from_orthonormal(const DescriptorPtr& d, std::span<const double> v);

/// Dense dim x dim matrix of `t` in the orthonormal basis.
Matrix as_matrix(const LinearMap& t);

/// phi(t) = alpha t for t >= 0, beta t for t < 0, with beta <= alpha.
class SublinearFn {
 public:
  SublinearFn(double alpha, double beta);

  static SublinearFn abs() { return {1.0, -1.0}; }
  static SublinearFn plus() { return {1.0, 0.0}; }
  static SublinearFn minus() { return {0.0, -1.0}; }
  static SublinearFn identity() { return {1.0, 1.0}; }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  bool nonnegative() const noexcept { return alpha_ >= 0.0 && beta_ <= 0.0; }
  double operator()(double t) const noexcept { return t >= 0.0 ? alpha_ * t : beta_ * t; }
  std::string label() const;

 private:
  double alpha_;
  double beta_;
};

Element apply_sublinear(const SublinearFn& phi, const Element& x);

}  // namespace eja
