#include "eja/norms.hpp"

#include <algorithm>
#include <cmath>

#include "eja/errors.hpp"

namespace eja {

std::string to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::Lyapunov:
      return "L_a";
    case OperatorKind::Quadratic:
      return "P_a";
    case OperatorKind::Schur:
      return "D_A";
  }
  return "?";
}

NormOperand NormOperand::lyapunov(const Element& a) {
  SpectralDecomposition sd = spectral_decompose(a);
  NormOperand op(OperatorKind::Lyapunov, std::move(sd.frame), std::move(sd.eigenvalues), lyap_map(a), true);
  op.element_ = a;
  return op;
}

NormOperand NormOperand::quadratic(const Element& a) {
  SpectralDecomposition sd = spectral_decompose(a);
  std::vector<double> d = sd.eigenvalues;
  for (double& v : d) v *= v;
  NormOperand op(OperatorKind::Quadratic, std::move(sd.frame), std::move(d), quad_rep_map(a), true);
  op.element_ = a;
  return op;
}

NormOperand NormOperand::schur(const SchurMatrix& a, const JordanFrame& frame) {
  if (a.n() != frame.size()) throw ArgumentError("NormOperand::schur: multiplier size != frame size");
  NormOperand op(OperatorKind::Schur, frame, a.diag(), schur_map(a, frame), a.is_psd());
  op.multiplier_ = a;
  return op;
}

namespace {

void check_exponent(double v, const char* name) {
  if (!(v >= 1.0)) throw ArgumentError(std::string("norm: ") + name + " must lie in [1, inf]");
}

}  // namespace

double norm_exponent_t(double r, double s) {
  check_exponent(r, "r");
  check_exponent(s, "s");
  if (!(s < r)) throw ArgumentError("norm_exponent_t: requires s < r");
  if (std::isinf(r)) return s;
  return r * s / (r - s);
}

double norm_from_diagonal(std::span<const double> d, double r, double s) {
  check_exponent(r, "r");
  check_exponent(s, "s");
  if (r <= s) return vec_pnorm(d, kInf);
  return vec_pnorm(d, norm_exponent_t(r, s));
}

double norm_closed_form(const NormOperand& op, double r, double s) {
  return norm_from_diagonal(op.diagonal(), r, s);
}

double operator_ratio(const LinearMap& t, const Element& x, double r, double s) {
  const double den = pnorm(x, r);
  if (den == 0.0) return 0.0;
  return pnorm(t(x), s) / den;
}

Element extremal_witness(const NormOperand& op, double r, double s) {
  const auto& d = op.diagonal();
  std::vector<double> c(d.size(), 0.0);
  if (r <= s) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < d.size(); ++i)
      if (std::abs(d[i]) > std::abs(d[best])) best = i;
    c[best] = 1.0;
  } else {
    const double t = norm_exponent_t(r, s);
    const double expo = std::isinf(r) ? 0.0 : t / r;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double sgn = d[i] > 0.0 ? 1.0 : (d[i] < 0.0 ? -1.0 : 0.0);
      // 0^0 = 1 at r = inf; the sign still zeroes an empty diagonal slot.
      const double mag = expo == 0.0 ? 1.0 : std::pow(std::abs(d[i]), expo);
      c[i] = mag * sgn;
    }
  }
  return combine(op.frame(), c);
}

NormEstimate norm_empirical(const NormOperand& op, double r, double s, std::size_t budget, Rng& rng) {
  if (budget < 1) throw ArgumentError("norm_empirical: budget must be >= 1");
  const LinearMap& t = op.map();
  Element w = extremal_witness(op, r, s);
  NormEstimate est{0.0, w, 0.0, 0};
  auto consider = [&](const Element& x) {
    ++est.evaluations;
    const double v = operator_ratio(t, x, r, s);
    if (v > est.value) {
      est.value = v;
      est.witness = x;
    }
    return v;
  };
  est.witness_ratio = consider(w);
  for (std::size_t i = 0; i < op.frame().size() && est.evaluations < budget; ++i) consider(op.frame()[i]);

  const std::size_t random_budget = est.evaluations + (budget - std::min(budget, est.evaluations)) / 2;
  while (est.evaluations < random_budget) consider(random_element(t.descriptor, rng, 1.0));

  // Coordinate ascent from the best point found, accept-only-improving.
  Element x = est.witness;
  double fx = est.value;
  double step = 0.5 * std::max(x.norm(), 1.0);
  while (est.evaluations < budget && step > 1e-9) {
    bool improved = false;
    for (std::size_t k = 0; k < x.size() && est.evaluations < budget; ++k) {
      for (double dir : {1.0, -1.0}) {
        if (est.evaluations >= budget) break;
        Element y = x;
        y[k] += dir * step;
        const double fy = consider(y);
        if (fy > fx) {
          x = std::move(y);
          fx = fy;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return est;
}

}  // namespace eja
