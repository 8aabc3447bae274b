#include "eja/prospector.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "eja/errors.hpp"
#include "eja/sampling.hpp"

namespace eja {

std::string to_string(Family f) {
  switch (f) {
    case Family::PsdGram:
      return "psd_gram";
    case Family::LyapunovForm:
      return "lyapunov_form";
    case Family::QuadraticForm:
      return "quadratic_form";
    case Family::RandomSym:
      return "random_sym";
    case Family::RankOnePerturbed:
      return "rank_one_perturbed";
    case Family::UserFile:
      return "user_file";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "psd" || name == "psd_gram") return Family::PsdGram;
  if (name == "lyapunov" || name == "lyapunov_form") return Family::LyapunovForm;
  if (name == "quadratic" || name == "quadratic_form") return Family::QuadraticForm;
  if (name == "random_sym" || name == "random") return Family::RandomSym;
  if (name == "rank_one" || name == "rank_one_perturbed") return Family::RankOnePerturbed;
  if (name == "file" || name == "user_file") return Family::UserFile;
  throw ArgumentError("unknown family '" + name + "'");
}

SchurMatrix generate_candidate(const FamilySpec& spec, Rng& rng) {
  const std::size_t n = spec.n;
  if (n < 1) throw ArgumentError("generate_candidate: n must be >= 1");
  std::normal_distribution<double> g(0.0, spec.scale);
  switch (spec.family) {
    case Family::PsdGram: {
      SchurMatrix a = sample_psd_gram(n, rng);
      return SchurMatrix(a.entries() * (spec.scale * spec.scale));
    }
    case Family::LyapunovForm:
    case Family::QuadraticForm: {
      std::vector<double> d(n);
      for (double& v : d) v = g(rng);
      return spec.family == Family::LyapunovForm ? SchurMatrix::lyapunov_form(d) : SchurMatrix::quadratic_form(d);
    }
    case Family::RandomSym: {
      Matrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = (i == j && spec.zero_diagonal) ? 0.0 : g(rng);
      return SchurMatrix(std::move(m));
    }
    case Family::RankOnePerturbed: {
      Matrix m = sample_psd_gram(n, rng).entries() * (spec.scale * spec.scale);
      std::vector<double> v(n);
      for (double& t : v) t = g(rng);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) -= spec.perturbation * v[i] * v[j];
      return SchurMatrix(std::move(m), 1e-9);
    }
    case Family::UserFile:
      if (!spec.user_matrix) throw ArgumentError("generate_candidate: user_file family needs a matrix");
      if (spec.user_matrix->n() != n) throw ArgumentError("generate_candidate: user matrix size != n");
      return *spec.user_matrix;
  }
  throw ArgumentError("generate_candidate: unknown family");
}

JordanFrame record_frame(const SearchRecord& r) {
  if (r.frame.empty()) return standard_frame(r.b.descriptor_ptr());
  return JordanFrame{r.frame};
}

namespace {

SearchRecord evaluate(const SchurMatrix& a, const JordanFrame& frame, const Element& b, Variant variant,
                      Tolerance tol) {
  if (a.n() != b.descriptor().rank())
    throw ArgumentError("test_candidate: multiplier size " + std::to_string(a.n()) + " != algebra rank " +
                        std::to_string(b.descriptor().rank()));
  const Element ab = schur(a, frame, b);
  const auto d = abs_vec(a.diag());
  MajorizationVerdict v;
  if (variant == Variant::Absolute) {
    v = weak_major(abs_vec(eigvals(ab)), compwise(sort_desc(d), sort_desc(abs_vec(eigvals(b)))), tol);
  } else {
    v = weak_major(eigvals(ab), compwise(sort_desc(d), eigvals(b)), tol);
  }
  return SearchRecord{.a = a,
                      .b = b,
                      .frame = {},
                      .margin = v.worst_slack,
                      .threshold = v.threshold,
                      .violated = !v.holds,
                      .variant = variant};
}

bool is_standard(const JordanFrame& f, const DescriptorPtr& d) {
  const JordanFrame s = standard_frame(d);
  if (s.size() != f.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!std::equal(s[i].coords().begin(), s[i].coords().end(), f[i].coords().begin())) return false;
  return true;
}

}  // namespace

SearchRecord test_candidate(const SchurMatrix& a, const JordanFrame& frame, const Element& b, Tolerance tol) {
  SearchRecord r = evaluate(a, frame, b, Variant::Absolute, tol);
  if (!is_standard(frame, b.descriptor_ptr())) r.frame = frame.idempotents;
  return r;
}

SearchRecord test_candidate_cone(const SchurMatrix& a, const JordanFrame& frame, const Element& b, Tolerance tol) {
  const double lo = eigvals(b).back();
  if (lo < -1e-10 * (1.0 + b.norm())) throw ArgumentError("test_candidate_cone: b is not in the cone");
  SearchRecord r = evaluate(a, frame, b, Variant::Cone, tol);
  if (!is_standard(frame, b.descriptor_ptr())) r.frame = frame.idempotents;
  return r;
}

SearchRecord replay(const SearchRecord& r, Tolerance tol) {
  SearchRecord fresh = evaluate(r.a, record_frame(r), r.b, r.variant, tol);
  fresh.frame = r.frame;
  fresh.family = r.family;
  fresh.zero_diagonal = r.zero_diagonal;
  fresh.seed = r.seed;
  fresh.a_index = r.a_index;
  fresh.b_index = r.b_index;
  return fresh;
}

ProspectResult sweep(const FamilySpec& spec, std::size_t n_a, std::size_t n_b, std::uint64_t seed, Variant variant,
                     const DescriptorPtr& d_in, Tolerance tol) {
  const DescriptorPtr d = d_in ? d_in : share(AlgebraDescriptor::sym(spec.n));
  if (d->rank() != spec.n) throw ArgumentError("sweep: algebra rank != family size n");
  const JordanFrame frame = standard_frame(d);
  ProspectResult out;
  out.summary.family = spec.family;
  out.summary.n = spec.n;
  if (n_b == 0) return out;
  for (std::size_t i = 0; i < n_a; ++i) {
    const std::uint64_t a_seed = derive_seed(seed, i);
    Rng rng_a(a_seed);
    const SchurMatrix a = generate_candidate(spec, rng_a);
    ++out.summary.candidates;
    std::optional<SearchRecord> worst;
    for (std::size_t j = 0; j < n_b; ++j) {
      Rng rng_b(derive_seed(a_seed, j));
      const Element b = variant == Variant::Absolute ? sample_general(d, rng_b) : sample_cone(d, rng_b);
      SearchRecord rec = evaluate(a, frame, b, variant, tol);
      ++out.summary.samples;
      out.summary.min_margin = std::min(out.summary.min_margin, rec.margin);
      if (!rec.violated) continue;
      ++out.summary.violations;
      if (!worst || rec.margin < worst->margin) {
        rec.family = spec.family;
        rec.zero_diagonal = spec.zero_diagonal;
        rec.seed = seed;
        rec.a_index = i;
        rec.b_index = j;
        worst = std::move(rec);
      }
    }
    if (worst) {
      ++out.summary.violated_candidates;
      out.records.push_back(std::move(*worst));
    }
  }
  return out;
}

namespace {

bool family_fixes_matrix(Family f) {
  return f == Family::PsdGram || f == Family::LyapunovForm || f == Family::QuadraticForm || f == Family::UserFile;
}

}  // namespace

SearchRecord refine(const SearchRecord& r, std::size_t steps, Tolerance tol) {
  if (!r.violated) throw ArgumentError("refine: record is not a violation");
  SearchRecord best = r;
  if (steps == 0) return best;
  const JordanFrame frame = record_frame(r);
  Rng rng(derive_seed(r.seed ^ 0x7265666eULL, r.a_index * 1000003ULL + r.b_index));
  const bool move_a = !family_fixes_matrix(r.family);
  const std::size_t n = r.a.n();
  double h = 0.25;

  for (std::size_t step = 0; step < steps; ++step) {
    const bool on_b = !move_a || step % 2 == 0;
    SearchRecord cand = best;
    if (on_b) {
      Element b = best.b;
      const double norm0 = b.norm();
      std::uniform_int_distribution<std::size_t> pick(0, b.size() - 1);
      std::normal_distribution<double> g(0.0, h * std::max(norm0, 1.0));
      b[pick(rng)] += g(rng);
      if (r.variant == Variant::Cone) b = plus_part(b);
      const double norm1 = b.norm();
      if (norm1 == 0.0) continue;
      b *= norm0 / norm1;
      cand = evaluate(best.a, frame, b, r.variant, tol);
    } else {
      Matrix m = best.a.entries();
      const double f0 = m.frobenius();
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      std::size_t i = pick(rng), j = pick(rng);
      if (i == j && r.zero_diagonal) continue;
      std::normal_distribution<double> g(0.0, h * std::max(f0, 1.0));
      const double delta = g(rng);
      m(i, j) += delta;
      if (i != j) m(j, i) += delta;
      const double f1 = m.frobenius();
      if (f1 == 0.0) continue;
      m *= f0 / f1;
      cand = evaluate(SchurMatrix(std::move(m)), frame, best.b, r.variant, tol);
    }
    if (cand.violated && cand.margin < best.margin) {
      cand.frame = best.frame;
      cand.family = best.family;
      cand.zero_diagonal = best.zero_diagonal;
      cand.seed = best.seed;
      cand.a_index = best.a_index;
      cand.b_index = best.b_index;
      best = std::move(cand);
    } else {
      h = std::max(h * 0.9, 1e-4);
    }
  }
  return best;
}

BoundarySummary classify_boundary(const SchurMatrix& a, const JordanFrame& frame, std::size_t n_b, Rng& rng,
                                  Tolerance tol, std::size_t refine_steps) {
  BoundarySummary out;
  const DescriptorPtr& d = frame.descriptor_ptr();
  for (std::size_t j = 0; j < n_b; ++j) {
    const Element b = sample_general(d, rng);
    SearchRecord rec = test_candidate(a, frame, b, tol);
    rec.b_index = j;
    ++out.samples;
    out.min_margin = std::min(out.min_margin, rec.margin);
    if (rec.violated && (!out.witness || rec.margin < out.witness->margin)) out.witness = std::move(rec);
  }
  if (out.witness) {
    out.witness = refine(*out.witness, refine_steps, tol);
    out.min_margin = std::min(out.min_margin, out.witness->margin);
    out.violated = true;
    out.note = "violated (certified by witness)";
  } else {
    out.note = "no violation found (budget " + std::to_string(n_b) + ")";
  }
  return out;
}

}  // namespace eja
