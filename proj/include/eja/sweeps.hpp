#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "eja/inequalities.hpp"
#include "eja/norms.hpp"

namespace eja {

struct SweepOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  Tolerance tol{};
  unsigned threads = 0;  // 0 = hardware concurrency
};

using SampleCheck = std::function<VerificationReport(Rng&)>;

/// Runs `one` on `samples` independently seeded generators and reduces the
/// reports: pass is the conjunction, each item keeps its worst margin, and
/// the witness comes from the lowest-index failing sample. Deterministic
/// for a given seed regardless of thread count.
VerificationReport run_sweep(const std::string& check, const AlgebraDescriptor& d, const SweepOptions& opt,
                             const SampleCheck& one);

VerificationReport sweep_log_major_quadrep(const DescriptorPtr& d, const SweepOptions& opt);
VerificationReport sweep_sup_norm_bound(const DescriptorPtr& d, const SweepOptions& opt);
/// Every k in 1..rank per sample.
VerificationReport sweep_commuting_factorization(const DescriptorPtr& d, const SweepOptions& opt);

enum class PositiveMapFamily { QuadRep, PsdSchur, QuadRepComposition };
std::string to_string(PositiveMapFamily f);

VerificationReport sweep_positive_map(const DescriptorPtr& d, PositiveMapFamily family, const SublinearFn& phi,
                                      const SweepOptions& opt);
VerificationReport sweep_pa_sublinear(const DescriptorPtr& d, const SublinearFn& phi, const SweepOptions& opt);
VerificationReport sweep_schur_diag(const DescriptorPtr& d, const SublinearFn& phi, const SweepOptions& opt);
VerificationReport sweep_jordan_weak(const DescriptorPtr& d, const SweepOptions& opt);
VerificationReport sweep_pinching(const DescriptorPtr& d, const SweepOptions& opt);
VerificationReport sweep_holder(const DescriptorPtr& d, double r, double s, const SweepOptions& opt);
/// <x, y> <= <lambda(x), lambda(y)> <= <lambda(|x|), lambda(|y|)>.
VerificationReport sweep_ftvn(const DescriptorPtr& d, const SweepOptions& opt);
/// Empirical norm never exceeds the closed form; the extremal witness attains it.
VerificationReport sweep_norms(const DescriptorPtr& d, OperatorKind kind, double r, double s, std::size_t budget,
                               const SweepOptions& opt);

/// All of the above with their standard parameter grids.
std::vector<VerificationReport> verify_all(const DescriptorPtr& d, const SweepOptions& opt);

}  // namespace eja
