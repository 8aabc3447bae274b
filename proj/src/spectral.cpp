#include "eja/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eja/errors.hpp"

namespace eja {

namespace {

double off_diagonal_mass(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

std::vector<std::size_t> descending_order(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&v](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

}  // namespace

SymEigen sym_eigen(const Matrix& m, double tol, int max_sweeps, bool want_vectors) {
  if (!m.square()) throw ArgumentError("sym_eigen: matrix must be square");
  const std::size_t n = m.rows();
  Matrix a = m;
  // Work on the symmetric part; callers hand us structurally symmetric data.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));

  Matrix v = want_vectors ? Matrix::identity(n) : Matrix();
  const double scale = a.frobenius();
  int sweep = 0;
  double off = off_diagonal_mass(a);

  while (off > tol * scale) {
    if (sweep == max_sweeps)
      throw NumericError("sym_eigen: no convergence after " + std::to_string(max_sweeps) +
                             " sweeps, off-diagonal mass " + std::to_string(off),
                         off);
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v(k, p), vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
    off = off_diagonal_mass(a);
  }

  SymEigen out;
  out.sweeps = sweep;
  const std::vector<double> diag = a.diagonal();
  const auto order = descending_order(diag);
  out.values.resize(n);
  if (want_vectors) out.vectors = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = diag[order[i]];
    if (want_vectors)
      for (std::size_t k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frames

FrameDefects frame_defects(const JordanFrame& f) {
  FrameDefects d;
  if (f.size() == 0) return d;
  Element total = Element::zero(f.descriptor_ptr());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Element& ei = f[i];
    d.idempotency = std::max(d.idempotency, (square(ei) - ei).norm());
    d.normalization = std::max(d.normalization, std::abs(inner(ei, ei) - 1.0));
    for (std::size_t j = i + 1; j < f.size(); ++j)
      d.orthogonality = std::max(d.orthogonality, std::abs(inner(ei, f[j])));
    total += ei;
  }
  d.completeness = (total - unit(f.descriptor_ptr())).norm();
  return d;
}

bool is_valid_frame(const JordanFrame& f, const AlgebraDescriptor& d) {
  if (f.size() != d.rank()) return false;
  for (const auto& e : f.idempotents)
    if (!(e.descriptor() == d)) return false;
  const FrameDefects def = frame_defects(f);
  return def.idempotency <= 1e-10 && def.orthogonality <= 1e-10 && def.normalization <= 1e-10 &&
         def.completeness <= 1e-9;
}

namespace {

Element spin_idempotent(const DescriptorPtr& d, std::span<const double> u, double sign) {
  Element e = Element::zero(d);
  e[0] = 0.5;
  for (std::size_t i = 1; i < e.size(); ++i) e[i] = 0.5 * sign * u[i - 1];
  return e;
}

}  // namespace

JordanFrame standard_frame(const DescriptorPtr& d) {
  JordanFrame f;
  switch (d->kind()) {
    case AlgebraKind::SymMatrix:
      for (std::size_t i = 0; i < d->order(); ++i) {
        Element e = Element::zero(d);
        e[packed_index(d->order(), i, i)] = 1.0;
        f.idempotents.push_back(std::move(e));
      }
      break;
    case AlgebraKind::SpinFactor: {
      std::vector<double> u(d->order() - 1, 0.0);
      u[0] = 1.0;
      f.idempotents.push_back(spin_idempotent(d, u, 1.0));
      f.idempotents.push_back(spin_idempotent(d, u, -1.0));
      break;
    }
    case AlgebraKind::DirectSum:
      for (std::size_t k = 0; k < d->factors().size(); ++k)
        for (const auto& e : standard_frame(d->factors()[k]).idempotents)
          f.idempotents.push_back(Element::embed(d, k, e));
      break;
  }
  return f;
}

Element combine(const JordanFrame& f, std::span<const double> coeffs) {
  if (coeffs.size() != f.size()) throw ArgumentError("combine: coefficient count != frame size");
  Element out = Element::zero(f.descriptor_ptr());
  auto dst = out.coords();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (coeffs[i] == 0.0) continue;
    auto src = f[i].coords();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += coeffs[i] * src[k];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spectral decomposition

namespace {

struct Pair {
  double value;
  Element idempotent;
};

std::vector<Pair> decompose_pairs(const Element& x) {
  const auto& dp = x.descriptor_ptr();
  const auto& d = *dp;
  std::vector<Pair> out;
  switch (d.kind()) {
    case AlgebraKind::SymMatrix: {
      const std::size_t n = d.order();
      const SymEigen eig = sym_eigen(to_matrix(x));
      for (std::size_t i = 0; i < n; ++i) {
        Element e = Element::zero(dp);
        std::size_t k = 0;
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = r; c < n; ++c, ++k) e[k] = eig.vectors(r, i) * eig.vectors(c, i);
        out.push_back({eig.values[i], std::move(e)});
      }
      break;
    }
    case AlgebraKind::SpinFactor: {
      const std::size_t m = d.order() - 1;
      double r = 0.0;
      for (std::size_t i = 1; i <= m; ++i) r += x[i] * x[i];
      r = std::sqrt(r);
      std::vector<double> u(m, 0.0);
      if (r > 0.0) {
        for (std::size_t i = 0; i < m; ++i) u[i] = x[i + 1] / r;
      } else {
        u[0] = 1.0;
      }
      out.push_back({x[0] + r, spin_idempotent(dp, u, 1.0)});
      out.push_back({x[0] - r, spin_idempotent(dp, u, -1.0)});
      break;
    }
    case AlgebraKind::DirectSum:
      for (std::size_t k = 0; k < d.factors().size(); ++k)
        for (auto& p : decompose_pairs(x.factor(k)))
          out.push_back({p.value, Element::embed(dp, k, p.idempotent)});
      std::stable_sort(out.begin(), out.end(), [](const Pair& a, const Pair& b) { return a.value > b.value; });
      break;
  }
  return out;
}

void collect_eigvals(const Element& x, std::vector<double>& out) {
  const auto& d = x.descriptor();
  switch (d.kind()) {
    case AlgebraKind::SymMatrix: {
      const auto v = sym_eigen(to_matrix(x), 1e-13, 64, false).values;
      out.insert(out.end(), v.begin(), v.end());
      return;
    }
    case AlgebraKind::SpinFactor: {
      double r = 0.0;
      for (std::size_t i = 1; i < x.size(); ++i) r += x[i] * x[i];
      r = std::sqrt(r);
      out.push_back(x[0] + r);
      out.push_back(x[0] - r);
      return;
    }
    case AlgebraKind::DirectSum:
      for (std::size_t k = 0; k < d.factors().size(); ++k) collect_eigvals(x.factor(k), out);
      return;
  }
}

}  // namespace

SpectralDecomposition spectral_decompose(const Element& x) {
  SpectralDecomposition sd;
  for (auto& p : decompose_pairs(x)) {
    sd.eigenvalues.push_back(p.value);
    sd.frame.idempotents.push_back(std::move(p.idempotent));
  }
  return sd;
}

std::vector<double> eigvals(const Element& x) {
  std::vector<double> v;
  v.reserve(x.descriptor().rank());
  collect_eigvals(x, v);
  std::stable_sort(v.begin(), v.end(), std::greater<>());
  return v;
}

Element lowner(const std::function<double(double)>& phi, const SpectralDecomposition& sd) {
  std::vector<double> mapped(sd.eigenvalues.size());
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    mapped[i] = phi(sd.eigenvalues[i]);
    if (!std::isfinite(mapped[i]))
      throw NumericError("lowner: function undefined at eigenvalue " + std::to_string(sd.eigenvalues[i]),
                         sd.eigenvalues[i]);
  }
  return combine(sd.frame, mapped);
}

Element lowner(const std::function<double(double)>& phi, const Element& x) {
  return lowner(phi, spectral_decompose(x));
}

Element abs_el(const Element& x) {
  return lowner([](double t) { return std::abs(t); }, x);
}

Element sqrt_el(const Element& x, double tol) {
  const SpectralDecomposition sd = spectral_decompose(x);
  if (sd.eigenvalues.back() < -tol)
    throw ArgumentError("sqrt_el: element not in the cone (min eigenvalue " +
                        std::to_string(sd.eigenvalues.back()) + ")");
  return lowner([](double t) { return t > 0.0 ? std::sqrt(t) : 0.0; }, sd);
}

Element plus_part(const Element& x) {
  return lowner([](double t) { return std::max(t, 0.0); }, x);
}

Element minus_part(const Element& x) {
  return lowner([](double t) { return std::max(-t, 0.0); }, x);
}

double trace(const Element& x) { return inner(x, unit(x.descriptor_ptr())); }

double det(const Element& x) {
  double p = 1.0;
  for (double v : eigvals(x)) p *= v;
  return p;
}

double vec_pnorm(std::span<const double> v, double p) {
  if (!(p >= 1.0)) throw ArgumentError("pnorm: p must lie in [1, inf]");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double t : v) m = std::max(m, std::abs(t));
    return m;
  }
  // Scale by the max entry so large p does not overflow.
  double m = 0.0;
  for (double t : v) m = std::max(m, std::abs(t));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double t : v) s += std::pow(std::abs(t) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double pnorm(const Element& x, double p) { return vec_pnorm(eigvals(x), p); }

double sk(const Element& x, std::size_t k) {
  const auto lam = eigvals(x);
  if (k < 1 || k > lam.size()) throw ArgumentError("sk: k must lie in [1, rank]");
  return std::accumulate(lam.begin(), lam.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
}

}  // namespace eja
