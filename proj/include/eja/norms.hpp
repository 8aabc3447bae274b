#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eja/algebra.hpp"
#include "eja/spectral.hpp"
#include "eja/transforms.hpp"

namespace eja {

enum class OperatorKind { Lyapunov, Quadratic, Schur };

std::string to_string(OperatorKind k);

/// An operator whose r->s spectral norm has a closed form: L_a, P_a, or the
/// Schur multiplier D_A on a fixed frame. Each is stored as a Schur
/// multiplier on a frame together with the diagonal that drives the formula.
class NormOperand {
 public:
  static NormOperand lyapunov(const Element& a);
  static NormOperand quadratic(const Element& a);
  static NormOperand schur(const SchurMatrix& a, const JordanFrame& frame);

  OperatorKind kind() const noexcept { return kind_; }
  const JordanFrame& frame() const noexcept { return frame_; }
  /// d_i paired with frame element i: lambda_i(a), lambda_i(a)^2, or a_ii.
  const std::vector<double>& diagonal() const noexcept { return diag_; }
  const LinearMap& map() const noexcept { return map_; }
  const std::optional<Element>& element() const noexcept { return element_; }
  const std::optional<SchurMatrix>& multiplier() const noexcept { return multiplier_; }
  /// True when the weak-majorization hypothesis behind the closed form is
  /// known to hold (always for L_a and P_a, for D_A when A is PSD).
  bool closed_form_certified() const noexcept { return certified_; }

 private:
  NormOperand(OperatorKind kind, JordanFrame frame, std::vector<double> diag, LinearMap map, bool certified)
      : kind_(kind), frame_(std::move(frame)), diag_(std::move(diag)), map_(std::move(map)), certified_(certified) {}

  OperatorKind kind_;
  JordanFrame frame_;
  std::vector<double> diag_;
  LinearMap map_;
  bool certified_;
  std::optional<Element> element_;
  std::optional<SchurMatrix> multiplier_;
};

/// t with 1/s = 1/t + 1/r, for s < r. At r = inf this is t = s.
double norm_exponent_t(double r, double s);

/// ||d||_inf when r <= s, ||d||_t when s < r.
double norm_from_diagonal(std::span<const double> d, double r, double s);
double norm_closed_form(const NormOperand& op, double r, double s);

/// ||T x||_s / ||x||_r (0 for x = 0).
double operator_ratio(const LinearMap& t, const Element& x, double r, double s);

/// The element attaining the closed form: the frame element with the
/// largest |d_i| when r <= s, and sum |d_i|^(t/r) sgn(d_i) e_i when s < r
/// (with 0^0 = 1 at r = inf).
Element extremal_witness(const NormOperand& op, double r, double s);

struct NormEstimate {
  double value = 0.0;          // best ratio found
  Element witness;             // where it was found
  double witness_ratio = 0.0;  // ratio at the extremal witness
  std::size_t evaluations = 0;
};

/// Lower estimate of ||T||_{r->s}: extremal witness, frame elements, random
/// sampling, then coordinate ascent, within `budget` ratio evaluations.
NormEstimate norm_empirical(const NormOperand& op, double r, double s, std::size_t budget, Rng& rng);

}  // namespace eja
