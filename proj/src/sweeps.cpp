#include "eja/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "eja/errors.hpp"
#include "eja/sampling.hpp"

namespace eja {

namespace {

std::string exponent_label(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream s;
  s << v;
  return s.str();
}

VerificationReport numeric_failure(const std::string& check, const AlgebraDescriptor& d, const NumericError& e) {
  VerificationReport r;
  r.check = check;
  r.descriptor = d.spec();
  CheckItem it;
  it.label = "numeric_error";
  it.kind = "error";
  it.holds = false;
  it.slack = -kInf;
  r.add(it);
  r.note = e.what();
  r.witness = Witness{};
  return r;
}

}  // namespace

VerificationReport run_sweep(const std::string& check, const AlgebraDescriptor& d, const SweepOptions& opt,
                             const SampleCheck& one) {
  std::vector<std::optional<VerificationReport>> outcomes(opt.samples);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng(derive_seed(opt.seed, i));
      try {
        outcomes[i] = one(rng);
      } catch (const NumericError& e) {
        outcomes[i] = numeric_failure(check, d, e);
      }
    }
  };
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(opt.samples, 1)));
  if (threads <= 1) {
    work(0, opt.samples);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (opt.samples + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk, e = std::min(opt.samples, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
  }

  VerificationReport merged;
  merged.check = check;
  merged.descriptor = d.spec();
  merged.seed = opt.seed;
  merged.samples = opt.samples;
  if (opt.samples == 0) merged.worst_slack = 0.0;
  std::map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    auto& r = *outcomes[i];
    merged.pass = merged.pass && r.pass;
    merged.worst_slack = std::min(merged.worst_slack, r.worst_slack);
    for (auto& it : r.items) {
      auto [pos, fresh] = slot.try_emplace(it.label, merged.items.size());
      if (fresh) {
        merged.items.push_back(it);
        continue;
      }
      CheckItem& cur = merged.items[pos->second];
      const bool holds = cur.holds && it.holds;
      if (it.slack < cur.slack) cur = it;
      cur.holds = holds;
    }
    merged.near_equalities += r.near_equalities;
    if (r.near_equality && !merged.near_equality) {
      merged.near_equality = std::move(r.near_equality);
      merged.near_equality_sample = i;
    }
    if (!r.pass && !merged.witness) {
      merged.witness = r.witness ? std::move(*r.witness) : Witness{};
      merged.witness_sample = i;
      if (!r.note.empty()) merged.note = r.note;
    }
  }
  return merged;
}

VerificationReport sweep_log_major_quadrep(const DescriptorPtr& d, const SweepOptions& opt) {
  return run_sweep("log_major_quadrep", *d, opt, [&](Rng& rng) {
    const Element a = sample_cone(d, rng);
    const Element b = sample_cone(d, rng);
    return check_log_major_quadrep(a, b, opt.tol);
  });
}

VerificationReport sweep_sup_norm_bound(const DescriptorPtr& d, const SweepOptions& opt) {
  return run_sweep("sup_norm_bound", *d, opt, [&](Rng& rng) {
    const Element a = sample_cone(d, rng);
    const Element b = sample_cone(d, rng);
    return check_sup_norm_bound(a, b, opt.tol);
  });
}

VerificationReport sweep_commuting_factorization(const DescriptorPtr& d, const SweepOptions& opt) {
  return run_sweep("commuting_factorization", *d, opt, [&](Rng& rng) {
    const Element a = sample_invertible(d, rng);
    VerificationReport all;
    all.check = "commuting_factorization";
    all.descriptor = d->spec();
    for (std::size_t k = 1; k <= d->rank(); ++k) {
      auto res = commuting_factorization(a, k, opt.tol);
      for (auto& it : res.report.items) {
        all.add(it);
      }
      if (!res.report.pass && !all.witness) all.witness = res.report.witness;
    }
    return all;
  });
}

std::string to_string(PositiveMapFamily f) {
  switch (f) {
    case PositiveMapFamily::QuadRep:
      return "P_c";
    case PositiveMapFamily::PsdSchur:
      return "psd_schur";
    case PositiveMapFamily::QuadRepComposition:
      return "P_c*P_d";
  }
  return "?";
}

VerificationReport sweep_positive_map(const DescriptorPtr& d, PositiveMapFamily family, const SublinearFn& phi,
                                      const SweepOptions& opt) {
  const std::string name = "positive_map_sublinear[" + to_string(family) + "," + phi.label() + "]";
  return run_sweep(name, *d, opt, [&](Rng& rng) {
    LinearMap p = [&]() {
      switch (family) {
        case PositiveMapFamily::QuadRep:
          return quad_rep_map(sample_cone(d, rng, 3.0));
        case PositiveMapFamily::PsdSchur: {
          const SchurMatrix a = sample_psd_gram(d->rank(), rng);
          return schur_map(a, random_frame(d, rng));
        }
        case PositiveMapFamily::QuadRepComposition: {
          const Element c = sample_cone(d, rng, 3.0);
          const Element e = sample_cone(d, rng, 3.0);
          return compose(quad_rep_map(c), quad_rep_map(e));
        }
      }
      throw ArgumentError("unknown positive map family");
    }();
    const Element x = sample_general(d, rng);
    auto r = check_positive_map_sublinear(p, x, phi, opt.tol);
    r.check = name;
    return r;
  });
}

VerificationReport sweep_pa_sublinear(const DescriptorPtr& d, const SublinearFn& phi, const SweepOptions& opt) {
  return run_sweep("pa_sublinear[" + phi.label() + "]", *d, opt, [&](Rng& rng) {
    const Element a = sample_general(d, rng);
    const Element b = sample_general(d, rng);
    return check_pa_sublinear(a, b, phi, opt.tol);
  });
}

VerificationReport sweep_schur_diag(const DescriptorPtr& d, const SublinearFn& phi, const SweepOptions& opt) {
  return run_sweep("schur_diag[" + phi.label() + "]", *d, opt, [&](Rng& rng) {
    const SchurMatrix a = sample_psd_gram(d->rank(), rng);
    const JordanFrame f = random_frame(d, rng);
    const Element b = sample_general(d, rng);
    return check_schur_diag(a, f, b, phi, opt.tol);
  });
}

VerificationReport sweep_jordan_weak(const DescriptorPtr& d, const SweepOptions& opt) {
  return run_sweep("jordan_weak", *d, opt, [&](Rng& rng) {
    const Element a = sample_general(d, rng);
    const Element b = sample_general(d, rng);
    return check_jordan_weak(a, b, opt.tol);
  });
}

VerificationReport sweep_pinching(const DescriptorPtr& d, const SweepOptions& opt) {
  return run_sweep("pinching", *d, opt, [&](Rng& rng) {
    const Element a = sample_cone(d, rng);
    const Element b = sample_general(d, rng);
    PinchLeg leg{sample_psd_gram(d->rank(), rng), random_frame(d, rng)};
    return check_pinching(a, b, leg, opt.tol);
  });
}

VerificationReport sweep_holder(const DescriptorPtr& d, double r, double s, const SweepOptions& opt) {
  holder_exponent(r, s);
  const std::string name = "holder[r=" + exponent_label(r) + ",s=" + exponent_label(s) + "]";
  return run_sweep(name, *d, opt, [&](Rng& rng) {
    const Element a = sample_general(d, rng);
    const Element b = sample_general(d, rng);
    auto rep = check_holder(a, b, r, s, opt.tol);
    rep.check = name;
    return rep;
  });
}

VerificationReport sweep_ftvn(const DescriptorPtr& d, const SweepOptions& opt) {
  return run_sweep("ftvn", *d, opt, [&](Rng& rng) {
    const Element x = sample_general(d, rng);
    const Element y = sample_general(d, rng);
    VerificationReport r;
    r.check = "ftvn";
    r.descriptor = d->spec();
    const double lhs = inner(x, y);
    const auto lx = eigvals(x), ly = eigvals(y);
    double mid = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) mid += lx[i] * ly[i];
    const auto ax = sort_desc(abs_vec(lx)), ay = sort_desc(abs_vec(ly));
    double rhs = 0.0;
    for (std::size_t i = 0; i < ax.size(); ++i) rhs += ax[i] * ay[i];
    r.add(scalar_le("<x,y><=<lambda(x),lambda(y)>", lhs, mid, opt.tol));
    r.add(scalar_le("<lambda(x),lambda(y)><=<lambda(|x|),lambda(|y|)>", mid, rhs, opt.tol));
    if (!r.pass) r.witness = Witness{{{"x", x}, {"y", y}}, {}, {}, {}};
    return r;
  });
}

VerificationReport sweep_norms(const DescriptorPtr& d, OperatorKind kind, double r, double s, std::size_t budget,
                               const SweepOptions& opt) {
  const std::string name =
      "norm[" + to_string(kind) + ",r=" + exponent_label(r) + ",s=" + exponent_label(s) + "]";
  return run_sweep(name, *d, opt, [&](Rng& rng) {
    const NormOperand op = [&]() {
      switch (kind) {
        case OperatorKind::Lyapunov:
          return NormOperand::lyapunov(sample_general(d, rng));
        case OperatorKind::Quadratic:
          return NormOperand::quadratic(sample_general(d, rng));
        case OperatorKind::Schur:
          break;
      }
      const SchurMatrix a = sample_psd_gram(d->rank(), rng);
      return NormOperand::schur(a, random_frame(d, rng));
    }();
    const double closed = norm_closed_form(op, r, s);
    const NormEstimate est = norm_empirical(op, r, s, budget, rng);
    const double scale = std::max(1.0, closed);
    VerificationReport rep;
    rep.check = name;
    rep.descriptor = d->spec();
    CheckItem upper;
    upper.label = "empirical<=closed";
    upper.kind = "scalar_le";
    upper.slack = closed - est.value;
    upper.threshold = 1e-9 * scale;
    upper.holds = upper.slack >= -upper.threshold;
    rep.add(upper);
    rep.add(scalar_eq("witness attains closed form", est.witness_ratio, closed, 1e-12, 1e-6));
    if (!rep.pass) {
      Witness w;
      if (op.element()) w.elements.emplace_back("a", *op.element());
      if (op.multiplier()) w.matrix = op.multiplier()->entries();
      for (std::size_t i = 0; i < op.frame().size(); ++i)
        w.elements.emplace_back("frame" + std::to_string(i), op.frame()[i]);
      w.elements.emplace_back("x", est.witness);
      w.scalars = {{"closed", closed}, {"empirical", est.value}, {"witness_ratio", est.witness_ratio}};
      rep.witness = std::move(w);
    }
    return rep;
  });
}

std::vector<VerificationReport> verify_all(const DescriptorPtr& d, const SweepOptions& opt) {
  std::vector<VerificationReport> out;
  out.push_back(sweep_log_major_quadrep(d, opt));
  out.push_back(sweep_sup_norm_bound(d, opt));
  out.push_back(sweep_commuting_factorization(d, opt));
  const std::vector<SublinearFn> nonneg{SublinearFn::abs(), SublinearFn::plus(), SublinearFn::minus()};
  for (auto family :
       {PositiveMapFamily::QuadRep, PositiveMapFamily::PsdSchur, PositiveMapFamily::QuadRepComposition}) {
    for (const auto& phi : nonneg) out.push_back(sweep_positive_map(d, family, phi, opt));
    out.push_back(sweep_positive_map(d, family, SublinearFn::identity(), opt));
  }
  for (const auto& phi : nonneg) out.push_back(sweep_pa_sublinear(d, phi, opt));
  for (const auto& phi : nonneg) out.push_back(sweep_schur_diag(d, phi, opt));
  out.push_back(sweep_jordan_weak(d, opt));
  out.push_back(sweep_pinching(d, opt));
  for (auto [r, s] : std::vector<std::pair<double, double>>{{2, 2}, {1, kInf}, {kInf, 1}, {3, 1.5}, {kInf, kInf},
                                                             {4, 4}, {kInf, 2}})
    out.push_back(sweep_holder(d, r, s, opt));
  out.push_back(sweep_ftvn(d, opt));
  SweepOptions norm_opt = opt;
  norm_opt.samples = std::max<std::size_t>(1, opt.samples / 10);
  for (auto kind : {OperatorKind::Lyapunov, OperatorKind::Quadratic, OperatorKind::Schur})
    for (auto [r, s] : std::vector<std::pair<double, double>>{
             {1, 1}, {2, 2}, {kInf, kInf}, {1, kInf}, {kInf, 1}, {3, 2}, {2, 3}})
      out.push_back(sweep_norms(d, kind, r, s, 100, norm_opt));
  return out;
}

}  // namespace eja
