#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eja/algebra.hpp"
#include "eja/majorization.hpp"
#include "eja/spectral.hpp"
#include "eja/transforms.hpp"

namespace eja {

/// Candidate multiplier families for the Schur-product weak-majorization
/// question lambda(|A.b|) <_w lambda(|diag A|) * lambda(|b|).
enum class Family { PsdGram, LyapunovForm, QuadraticForm, RandomSym, RankOnePerturbed, UserFile };

std::string to_string(Family f);
/// Accepts the canonical names plus the short CLI aliases (psd, lyapunov, quadratic, rank_one, file).
Family parse_family(const std::string& name);

struct FamilySpec {
  Family family = Family::PsdGram;
  std::size_t n = 2;
  double scale = 1.0;
  /// random_sym only: force a zero diagonal.
  bool zero_diagonal = false;
  /// rank_one_perturbed: A = G G^T - perturbation * v v^T, v Gaussian.
  double perturbation = 1.0;
  /// user_file: the matrix to test.
  std::optional<SchurMatrix> user_matrix;
};

SchurMatrix generate_candidate(const FamilySpec& spec, Rng& rng);

/// Absolute: general b against |diag A| and |b|. Cone: b >= 0, lambda(A.b) against |diag A| * lambda(b).
enum class Variant { Absolute, Cone };

struct SearchRecord {
  SchurMatrix a;
  Element b;
  /// Jordan frame of the Schur product; empty means the standard frame.
  std::vector<Element> frame;
  /// min over k of (RHS partial sum - LHS partial sum).
  double margin = 0.0;
  double threshold = 0.0;
  bool violated = false;
  Variant variant = Variant::Absolute;
  Family family = Family::UserFile;
  bool zero_diagonal = false;
  std::uint64_t seed = 0;
  std::size_t a_index = 0;
  std::size_t b_index = 0;
};

JordanFrame record_frame(const SearchRecord& r);

SearchRecord test_candidate(const SchurMatrix& a, const JordanFrame& frame, const Element& b, Tolerance tol = {});
/// Requires b in the cone.
SearchRecord test_candidate_cone(const SchurMatrix& a, const JordanFrame& frame, const Element& b,
                                 Tolerance tol = {});
/// Re-runs the verifier on the record's (A, frame, b).
SearchRecord replay(const SearchRecord& r, Tolerance tol = {});

struct SweepSummary {
  Family family = Family::PsdGram;
  std::size_t n = 0;
  std::size_t candidates = 0;
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::size_t violated_candidates = 0;
  double min_margin = kInf;
};

struct ProspectResult {
  /// Worst violation per violated candidate, in candidate order.
  std::vector<SearchRecord> records;
  SweepSummary summary;
};

/// n_a candidates from `spec`, each tested on n_b random b in the standard
/// frame of `d` (Sym(spec.n) when d is null). Deterministic under `seed`.
ProspectResult sweep(const FamilySpec& spec, std::size_t n_a, std::size_t n_b, std::uint64_t seed,
                     Variant variant = Variant::Absolute, const DescriptorPtr& d = nullptr, Tolerance tol = {});

/// Accept-only-improving coordinate perturbation of b (norm preserved), then
/// of A when the family leaves it free (Frobenius norm preserved, a fixed
/// zero diagonal kept). The margin never increases and the record stays violated.
SearchRecord refine(const SearchRecord& r, std::size_t steps, Tolerance tol = {});

struct BoundarySummary {
  double min_margin = kInf;
  /// Sound: true only when a witness was found.
  bool violated = false;
  std::size_t samples = 0;
  std::optional<SearchRecord> witness;
  std::string note;
};

/// Samples n_b random b (then refines the worst violation) to probe
/// whether A satisfies the inequality for all b.
BoundarySummary classify_boundary(const SchurMatrix& a, const JordanFrame& frame, std::size_t n_b, Rng& rng,
                                  Tolerance tol = {}, std::size_t refine_steps = 50);

}  // namespace eja
