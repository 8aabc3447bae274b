#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eja/matrix.hpp"

namespace eja {

using Rng = std::mt19937_64;

enum class AlgebraKind { SymMatrix, SpinFactor, DirectSum };

class AlgebraDescriptor;
using DescriptorPtr = std::shared_ptr<const AlgebraDescriptor>;

/// Identifies a Euclidean Jordan algebra: real symmetric matrices Sym(n),
/// the spin factor on R x R^(n-1), or a finite direct sum of those.
/// Nested direct sums are flattened on construction.
class AlgebraDescriptor {
 public:
  static AlgebraDescriptor sym(std::size_t n);
  static AlgebraDescriptor spin(std::size_t n);
  static AlgebraDescriptor direct_sum(const std::vector<AlgebraDescriptor>& factors);

  AlgebraKind kind() const noexcept { return kind_; }
  /// Matrix order for Sym(n), coordinate length for Spin(n); 0 for a sum.
  std::size_t order() const noexcept { return order_; }
  std::size_t rank() const noexcept { return rank_; }
  std::size_t dim() const noexcept { return dim_; }

  const std::vector<DescriptorPtr>& factors() const noexcept { return factors_; }
  std::size_t coord_offset(std::size_t factor) const { return coord_offsets_.at(factor); }
  std::size_t rank_offset(std::size_t factor) const { return rank_offsets_.at(factor); }

  /// Mini-language form: "sym:3", "spin:4", "sum:sym:2+spin:3".
  std::string spec() const;

  friend bool operator==(const AlgebraDescriptor& a, const AlgebraDescriptor& b);

 private:
  AlgebraDescriptor() = default;

  AlgebraKind kind_ = AlgebraKind::SymMatrix;
  std::size_t order_ = 0;
  std::size_t rank_ = 0;
  std::size_t dim_ = 0;
  std::vector<DescriptorPtr> factors_;
  std::vector<std::size_t> coord_offsets_;
  std::vector<std::size_t> rank_offsets_;
};

DescriptorPtr share(const AlgebraDescriptor& d);

/// Packed upper-triangle (row-major) position of entry (i, j), i <= j, in Sym(n).
constexpr std::size_t packed_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return i * n - (i * (i - 1)) / 2 + (j - i);
}

/// An algebra element: coordinates in the documented layout plus the
/// descriptor they belong to. Sym(n) stores the upper triangle row by row,
/// Spin(n) stores (x0, xbar), a direct sum concatenates its factors.
class Element {
 public:
  Element(DescriptorPtr d, std::vector<double> coords);
  Element(const AlgebraDescriptor& d, std::vector<double> coords);

  static Element zero(DescriptorPtr d);
  static Element zero(const AlgebraDescriptor& d) { return zero(share(d)); }

  const AlgebraDescriptor& descriptor() const noexcept { return *desc_; }
  const DescriptorPtr& descriptor_ptr() const noexcept { return desc_; }

  std::span<const double> coords() const noexcept { return coords_; }
  std::span<double> coords() noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  /// Norm induced by the trace inner product.
  double norm() const;

  /// Component in the i-th direct-sum factor.
  Element factor(std::size_t i) const;
  /// Places `part` in factor slot i of the direct sum `sum`, zero elsewhere.
  static Element embed(const DescriptorPtr& sum, std::size_t i, const Element& part);

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(double s);
  Element operator-() const;

 private:
  DescriptorPtr desc_;
  std::vector<double> coords_;
};

Element operator+(Element a, const Element& b);
Element operator-(Element a, const Element& b);
Element operator*(Element a, double s);
Element operator*(double s, Element a);

/// Throws ArgumentError unless both elements live in the same algebra.
void require_same_algebra(const Element& x, const Element& y, const char* op);

/// Sym(n) element as a full symmetric matrix.
Matrix to_matrix(const Element& x);
/// Sym(n) element from the upper triangle of `m`.
Element from_matrix(const Matrix& m);

Element jordan_product(const Element& x, const Element& y);
inline Element square(const Element& x) { return jordan_product(x, x); }
/// Trace inner product <x, y> = tr(x o y).
double inner(const Element& x, const Element& y);
Element unit(const AlgebraDescriptor& d);
Element unit(const DescriptorPtr& d);

/// iid Gaussian coordinates with standard deviation `scale`; Sym(n)
/// off-diagonal entries use scale/sqrt(2) (orthogonal-ensemble fill).
Element random_element(const DescriptorPtr& d, Rng& rng, double scale = 1.0);
/// x o x for a random x with coordinate scale sqrt(scale); lies in the cone.
Element random_cone_element(const DescriptorPtr& d, Rng& rng, double scale = 1.0);

/// True iff L_a L_b = L_b L_a on every coordinate basis vector to `tol`.
bool operator_commutes(const Element& a, const Element& b, double tol = 1e-10);

}  // namespace eja
