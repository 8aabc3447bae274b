#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "eja/algebra.hpp"
#include "eja/matrix.hpp"

namespace eja {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct SymEigen {
  std::vector<double> values;  // decreasing
  Matrix vectors;              // column i pairs with values[i]; empty if not requested
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for a real symmetric matrix. Stops once the
/// off-diagonal Frobenius mass falls below tol * ||M||_F; throws
/// NumericError (carrying that mass) after max_sweeps.
SymEigen sym_eigen(const Matrix& m, double tol = 1e-13, int max_sweeps = 64, bool want_vectors = true);

/// A complete system of orthogonal primitive idempotents summing to e.
struct JordanFrame {
  std::vector<Element> idempotents;

  std::size_t size() const noexcept { return idempotents.size(); }
  const Element& operator[](std::size_t i) const { return idempotents[i]; }
  const AlgebraDescriptor& descriptor() const { return idempotents.front().descriptor(); }
  const DescriptorPtr& descriptor_ptr() const { return idempotents.front().descriptor_ptr(); }
};

struct FrameDefects {
  double idempotency = 0.0;    // max ||e_i o e_i - e_i||
  double orthogonality = 0.0;  // max |<e_i, e_j>|, i != j
  double normalization = 0.0;  // max |<e_i, e_i> - 1|
  double completeness = 0.0;   // ||sum e_i - e||
};

FrameDefects frame_defects(const JordanFrame& f);
/// Checks the frame invariants at the library tolerances (1e-10, 1e-10, 1e-10, 1e-9).
bool is_valid_frame(const JordanFrame& f, const AlgebraDescriptor& d);

/// Diagonal matrix units for Sym(n); (1/2)(1, +-u) with u the first
/// coordinate direction for Spin(n); concatenation for direct sums.
JordanFrame standard_frame(const DescriptorPtr& d);

/// sum_i c_i e_i.
Element combine(const JordanFrame& f, std::span<const double> coeffs);

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // decreasing, stable on ties
  JordanFrame frame;

  Element reconstruct() const { return combine(frame, eigenvalues); }
};

SpectralDecomposition spectral_decompose(const Element& x);
/// lambda(x), decreasing. Skips frame construction.
std::vector<double> eigvals(const Element& x);

/// Lowner map: sum_i phi(lambda_i) e_i in the frame of `sd`. Throws
/// NumericError if phi yields a non-finite value.
Element lowner(const std::function<double(double)>& phi, const SpectralDecomposition& sd);
Element lowner(const std::function<double(double)>& phi, const Element& x);

Element abs_el(const Element& x);
/// Square root of a cone element; eigenvalues in [-tol, 0) are clamped to 0.
Element sqrt_el(const Element& x, double tol = 1e-10);
Element plus_part(const Element& x);
Element minus_part(const Element& x);

double trace(const Element& x);
double det(const Element& x);
/// Spectral p-norm ||lambda(x)||_p, p in [1, inf].
double pnorm(const Element& x, double p);
/// Vector p-norm, p in [1, inf].
double vec_pnorm(std::span<const double> v, double p);
/// Sum of the k largest eigenvalues, 1 <= k <= rank.
double sk(const Element& x, std::size_t k);

}  // namespace eja
