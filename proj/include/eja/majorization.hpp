#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace eja {

/// Absolute + relative slack: a comparison passes when its margin is at
/// least -(atol + rtol * scale).
struct Tolerance {
  double atol = 1e-9;
  double rtol = 1e-8;

  double bound(double scale) const noexcept { return atol + rtol * scale; }
};

enum class MajorizationKind { Weak, Strong, WeakLog, Log };

std::string to_string(MajorizationKind k);

struct MajorizationVerdict {
  bool holds = true;
  /// Margin (partial_q - partial_p) at the most violated k; for the strong and
  /// log variants the k = n equality deficit -|sum p - sum q| is included.
  double worst_slack = 0.0;
  /// 1-based k of that margin when the check fails.
  std::optional<std::size_t> failing_k;
  MajorizationKind kind = MajorizationKind::Weak;
  /// The tolerance the verdict was decided against.
  double threshold = 0.0;
};

std::vector<double> sort_desc(std::span<const double> p);
std::vector<double> compwise(std::span<const double> p, std::span<const double> q);
std::vector<double> abs_vec(std::span<const double> p);

/// p <_w q: partial sums of the decreasing rearrangements.
MajorizationVerdict weak_major(std::span<const double> p, std::span<const double> q, Tolerance tol = {});
/// p < q: weak majorization plus equal totals.
MajorizationVerdict major(std::span<const double> p, std::span<const double> q, Tolerance tol = {});
/// Weak log-majorization on nonnegative vectors, compared by raw partial
/// products, each k judged against atol + rtol * its own partial magnitude.
/// Entries in [-atol, 0) are clamped to 0; anything below throws.
MajorizationVerdict weak_log_major(std::span<const double> p, std::span<const double> q, Tolerance tol = {});
/// Log-majorization: weak log-majorization plus equal full products.
MajorizationVerdict log_major(std::span<const double> p, std::span<const double> q, Tolerance tol = {});

}  // namespace eja
