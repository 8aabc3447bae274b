#include "eja/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "eja/errors.hpp"

namespace eja {

std::string to_string(MajorizationKind k) {
  switch (k) {
    case MajorizationKind::Weak:
      return "weak";
    case MajorizationKind::Strong:
      return "strong";
    case MajorizationKind::WeakLog:
      return "weak_log";
    case MajorizationKind::Log:
      return "log";
  }
  return "?";
}

std::vector<double> sort_desc(std::span<const double> p) {
  std::vector<double> v(p.begin(), p.end());
  std::stable_sort(v.begin(), v.end(), std::greater<>());
  return v;
}

std::vector<double> compwise(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw ArgumentError("compwise: length mismatch");
  std::vector<double> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] * q[i];
  return r;
}

std::vector<double> abs_vec(std::span<const double> p) {
  std::vector<double> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = std::abs(p[i]);
  return r;
}

namespace {

// Partial sums/products of p and q are compared pairwise. Sums are judged
// against atol + rtol * max|partial| over all k. Products grow like c^k under
// a common scaling c, so each k is judged against its own magnitude instead;
// the reported slack and threshold are those of the most violated k.
MajorizationVerdict decide(const std::vector<double>& lhs, const std::vector<double>& rhs, bool require_total,
                           MajorizationKind kind, Tolerance tol, bool per_k_scale) {
  MajorizationVerdict v;
  v.kind = kind;
  if (lhs.empty()) return v;
  double global = 0.0;
  for (std::size_t k = 0; k < lhs.size(); ++k) global = std::max({global, std::abs(lhs[k]), std::abs(rhs[k])});
  auto bound_at = [&](std::size_t k) {
    return tol.bound(per_k_scale ? std::max(std::abs(lhs[k]), std::abs(rhs[k])) : global);
  };
  double worst_margin = std::numeric_limits<double>::infinity();
  std::size_t worst_k = 0;
  auto consider = [&](double slack, std::size_t k) {
    const double threshold = bound_at(k);
    if (slack + threshold < worst_margin) {
      worst_margin = slack + threshold;
      v.worst_slack = slack;
      v.threshold = threshold;
      worst_k = k + 1;
    }
  };
  for (std::size_t k = 0; k < lhs.size(); ++k) consider(rhs[k] - lhs[k], k);
  if (require_total) consider(-std::abs(rhs.back() - lhs.back()), lhs.size() - 1);
  v.holds = v.worst_slack >= -v.threshold;
  if (!v.holds) v.failing_k = worst_k;
  return v;
}

MajorizationVerdict sum_compare(std::span<const double> p, std::span<const double> q, bool strong, Tolerance tol) {
  if (p.size() != q.size()) throw ArgumentError("majorization: length mismatch");
  const auto ps = sort_desc(p), qs = sort_desc(q);
  std::vector<double> lp(ps.size()), lq(qs.size());
  double a = 0.0, b = 0.0;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    lp[k] = a += ps[k];
    lq[k] = b += qs[k];
  }
  return decide(lp, lq, strong, strong ? MajorizationKind::Strong : MajorizationKind::Weak, tol, false);
}

std::vector<double> clamp_nonnegative(std::span<const double> p, double atol) {
  std::vector<double> r(p.begin(), p.end());
  for (double& t : r) {
    if (t < -atol) throw ArgumentError("log-majorization: negative entry " + std::to_string(t));
    if (t < 0.0) t = 0.0;
  }
  return r;
}

MajorizationVerdict product_compare(std::span<const double> p, std::span<const double> q, bool log_eq,
                                    Tolerance tol) {
  if (p.size() != q.size()) throw ArgumentError("log-majorization: length mismatch");
  auto ps = sort_desc(clamp_nonnegative(p, tol.atol));
  auto qs = sort_desc(clamp_nonnegative(q, tol.atol));
  // Rescale both by one positive constant when the raw products could
  // overflow; the comparison is invariant under common scaling.
  const double top = std::max(ps.empty() ? 0.0 : ps.front(), qs.empty() ? 0.0 : qs.front());
  if (top > 0.0 && std::log(top) * static_cast<double>(ps.size()) > 600.0) {
    for (double& t : ps) t /= top;
    for (double& t : qs) t /= top;
  }
  std::vector<double> lp(ps.size()), lq(qs.size());
  double a = 1.0, b = 1.0;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    lp[k] = a *= ps[k];
    lq[k] = b *= qs[k];
  }
  return decide(lp, lq, log_eq, log_eq ? MajorizationKind::Log : MajorizationKind::WeakLog, tol, true);
}

}  // namespace

MajorizationVerdict weak_major(std::span<const double> p, std::span<const double> q, Tolerance tol) {
  return sum_compare(p, q, false, tol);
}

MajorizationVerdict major(std::span<const double> p, std::span<const double> q, Tolerance tol) {
  return sum_compare(p, q, true, tol);
}

MajorizationVerdict weak_log_major(std::span<const double> p, std::span<const double> q, Tolerance tol) {
  return product_compare(p, q, false, tol);
}

MajorizationVerdict log_major(std::span<const double> p, std::span<const double> q, Tolerance tol) {
  return product_compare(p, q, true, tol);
}

}  // namespace eja
