#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eja/algebra.hpp"
#include "eja/majorization.hpp"
#include "eja/spectral.hpp"
#include "eja/transforms.hpp"

namespace eja {

/// One comparison inside a report: a majorization verdict or a scalar
/// inequality/equality, reduced to a margin and the threshold it is judged by.
struct CheckItem {
  std::string label;
  std::string kind;  // weak | strong | weak_log | log | scalar_le | scalar_eq | componentwise
  bool holds = true;
  double slack = 0.0;
  double threshold = 0.0;
  std::optional<std::size_t> failing_k;
};

CheckItem make_item(std::string label, const MajorizationVerdict& v);
/// lhs <= rhs within tol.bound(max(|lhs|, |rhs|)).
CheckItem scalar_le(std::string label, double lhs, double rhs, Tolerance tol);
/// |lhs - rhs| <= atol + rtol * max(|lhs|, |rhs|).
CheckItem scalar_eq(std::string label, double lhs, double rhs, double atol, double rtol);

inline constexpr double kNearEquality = 1e-6;

/// Inputs sufficient to replay a check.
struct Witness {
  std::vector<std::pair<std::string, Element>> elements;
  std::vector<std::pair<std::string, std::vector<double>>> vectors;
  std::vector<std::pair<std::string, double>> scalars;
  std::optional<Matrix> matrix;
};

struct VerificationReport {
  std::string check;
  std::string descriptor;
  std::uint64_t seed = 0;
  std::size_t samples = 1;
  bool pass = true;
  double worst_slack = kInf;
  std::vector<CheckItem> items;
  std::optional<Witness> witness;
  std::optional<std::size_t> witness_sample;
  std::string note;
  /// Passing instances whose slack came within kNearEquality of zero.
  /// Recorded for inspection; nothing is asserted about them.
  std::size_t near_equalities = 0;
  std::optional<Witness> near_equality;
  std::optional<std::size_t> near_equality_sample;

  void add(CheckItem item);
};

/// lambda(P_{sqrt a}(b)) <_log lambda(a) * lambda(b) for a, b in the cone,
/// with the weak consequence and det P_{sqrt a}(b) = det a det b.
VerificationReport check_log_major_quadrep(const Element& a, const Element& b, Tolerance tol = {});

/// lambda(P_{sqrt a}(b)) <= ||a||_inf lambda(b) componentwise.
VerificationReport check_sup_norm_bound(const Element& a, const Element& b, Tolerance tol = {});

struct CommutingFactorization {
  Element x;
  Element y;
  VerificationReport report;
};

/// Builds x, y from the frame of an invertible a (eigenvalues ordered by
/// decreasing magnitude) for the given 1 <= k <= rank and verifies
/// x >= e, operator commutation, P_{sqrt x}(y) = a, P_x(y^2) = a^2 and
/// det(x) ||y||_inf^k = prod_{i<=k} |a_i|.
CommutingFactorization commuting_factorization(const Element& a, std::size_t k, Tolerance tol = {});

/// Positivity certificate for a linear map: by construction, or else by
/// sampling primitive idempotents (extreme rays of the cone) and checking
/// that their images stay in the cone.
bool certify_positive(const LinearMap& p, std::size_t probes = 64, double tol = 1e-9);

/// phi(P(x)) <_w P(phi(x)) for a positive linear map P and sublinear phi.
/// Throws ArgumentError if P cannot be certified positive.
VerificationReport check_positive_map_sublinear(const LinearMap& p, const Element& x, const SublinearFn& phi,
                                                Tolerance tol = {});

/// lambda(phi(P_a(b))) <_w lambda(a^2) * lambda(phi(b)) for nonnegative phi.
VerificationReport check_pa_sublinear(const Element& a, const Element& b, const SublinearFn& phi,
                                      Tolerance tol = {});

/// For PSD A: phi(A.b) <_w A.phi(b) and lambda(phi(A.b)) <_w diag(A)^down * lambda(phi(b)).
VerificationReport check_schur_diag(const SchurMatrix& a, const JordanFrame& frame, const Element& b,
                                    const SublinearFn& phi, Tolerance tol = {});

/// lambda(|a o b|) <_w lambda(|a|) * lambda(|b|).
VerificationReport check_jordan_weak(const Element& a, const Element& b, Tolerance tol = {});

/// The 2x2 counterexample: A = [[8,3],[3,0]], B = [[0,3],[3,8]].
struct JordanCounterexample {
  std::vector<double> abs_jordan;   // lambda(|A o B|)
  std::vector<double> jordan_abs;   // lambda(|A| o |B|)
  MajorizationVerdict forward;      // lambda(|A o B|) <_w lambda(|A| o |B|)
  MajorizationVerdict backward;     // lambda(|A| o |B|) <_w lambda(|A o B|)
  VerificationReport report;
};
JordanCounterexample check_jordan_counterexample();

/// Optional second leg: for PSD A on a frame, A.b < P_{sqrt d}(b) with d = sum a_ii e_i.
struct PinchLeg {
  SchurMatrix a;
  JordanFrame frame;
};

/// lambda(P_{sqrt a}(b)) < lambda(a o b) for a in the cone, and the Schur leg if given.
VerificationReport check_pinching(const Element& a, const Element& b, const std::optional<PinchLeg>& leg,
                                      Tolerance tol = {});

/// p with 1/p = 1/r + 1/s (1/inf = 0). Throws ArgumentError unless r, s >= 1 and p >= 1.
double holder_exponent(double r, double s);

/// ||a o b||_p <= ||a||_r ||b||_s with p = holder_exponent(r, s).
VerificationReport check_holder(const Element& a, const Element& b, double r, double s, Tolerance tol = {});

}  // namespace eja
