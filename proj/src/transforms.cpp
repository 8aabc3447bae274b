#include "eja/transforms.hpp"

#include <cmath>
#include <sstream>

#include "eja/errors.hpp"

namespace eja {

Element lyap(const Element& a, const Element& x) { return jordan_product(a, x); }

Element quad_rep(const Element& a, const Element& x) {
  require_same_algebra(a, x, "quad_rep");
  Element out = jordan_product(a, jordan_product(a, x));
  out *= 2.0;
  out -= jordan_product(square(a), x);
  return out;
}

Element quad_rep_sqrt(const Element& a, const Element& b, double tol) {
  require_same_algebra(a, b, "quad_rep_sqrt");
  return quad_rep(sqrt_el(a, tol), b);
}

// ---------------------------------------------------------------------------
// SchurMatrix

SchurMatrix::SchurMatrix(Matrix entries, double sym_tol) : entries_(std::move(entries)) {
  if (!entries_.square() || entries_.rows() == 0)
    throw ArgumentError("SchurMatrix: need a non-empty square matrix");
  const double asym = entries_.asymmetry();
  if (asym > sym_tol)
    throw ArgumentError("SchurMatrix: not symmetric (max |a_ij - a_ji| = " + std::to_string(asym) + ")");
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = i + 1; j < n(); ++j)
      entries_(i, j) = entries_(j, i) = 0.5 * (entries_(i, j) + entries_(j, i));
}

SchurMatrix SchurMatrix::ones(std::size_t n) { return SchurMatrix(Matrix(n, n, 1.0)); }

SchurMatrix SchurMatrix::lyapunov_form(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) m(i, j) = 0.5 * (d[i] + d[j]);
  return SchurMatrix(std::move(m));
}

SchurMatrix SchurMatrix::quadratic_form(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) m(i, j) = d[i] * d[j];
  return SchurMatrix(std::move(m));
}

double SchurMatrix::min_eigenvalue() const { return sym_eigen(entries_, 1e-13, 64, false).values.back(); }

// ---------------------------------------------------------------------------
// Peirce decomposition and Schur products

Element PeirceDecomposition::sum() const {
  Element s = components.front();
  for (std::size_t k = 1; k < components.size(); ++k) s += components[k];
  return s;
}

namespace {

void check_frame(const JordanFrame& frame, const Element& x, const char* op) {
  const auto& d = x.descriptor();
  if (frame.size() != d.rank())
    throw ArgumentError(std::string(op) + ": frame has " + std::to_string(frame.size()) +
                        " idempotents, algebra rank is " + std::to_string(d.rank()));
  for (const auto& e : frame.idempotents) require_same_algebra(e, x, op);
  Element total = Element::zero(x.descriptor_ptr());
  for (const auto& e : frame.idempotents) total += e;
  if ((total - unit(x.descriptor_ptr())).norm() > 1e-9)
    throw ArgumentError(std::string(op) + ": frame does not sum to the unit");
}

}  // namespace

PeirceDecomposition peirce_project(const JordanFrame& frame, const Element& x) {
  check_frame(frame, x, "peirce_project");
  const std::size_t n = frame.size();
  PeirceDecomposition pd;
  pd.n = n;
  pd.components.reserve(n * (n + 1) / 2);
  std::vector<Element> ej_x;
  ej_x.reserve(n);
  for (std::size_t j = 0; j < n; ++j) ej_x.push_back(jordan_product(frame[j], x));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (i == j) {
        pd.components.push_back(inner(x, frame[i]) * frame[i]);
      } else {
        Element c = jordan_product(frame[i], ej_x[j]);
        c *= 4.0;
        pd.components.push_back(std::move(c));
      }
    }
  }
  return pd;
}

Element schur(const SchurMatrix& a, const JordanFrame& frame, const Element& x) {
  if (a.n() != x.descriptor().rank())
    throw ArgumentError("schur: multiplier is " + std::to_string(a.n()) + "x" + std::to_string(a.n()) +
                        " but algebra rank is " + std::to_string(x.descriptor().rank()));
  const PeirceDecomposition pd = peirce_project(frame, x);
  Element out = Element::zero(x.descriptor_ptr());
  auto dst = out.coords();
  for (std::size_t i = 0; i < pd.n; ++i)
    for (std::size_t j = i; j < pd.n; ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      auto src = pd.at(i, j).coords();
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += aij * src[k];
    }
  return out;
}

// ---------------------------------------------------------------------------
// Linear maps

LinearMap lyap_map(const Element& a) {
  return {a.descriptor_ptr(), [a](const Element& x) { return lyap(a, x); }, false, "L_a"};
}

LinearMap quad_rep_map(const Element& a) {
  return {a.descriptor_ptr(), [a](const Element& x) { return quad_rep(a, x); }, true, "P_a"};
}

LinearMap schur_map(const SchurMatrix& a, const JordanFrame& frame) {
  return {frame.descriptor_ptr(), [a, frame](const Element& x) { return schur(a, frame, x); }, a.is_psd(),
          "D_A"};
}

LinearMap compose(const LinearMap& outer, const LinearMap& inner_map) {
  if (!(*outer.descriptor == *inner_map.descriptor)) throw ArgumentError("compose: descriptor mismatch");
  auto f = outer.apply;
  auto g = inner_map.apply;
  return {outer.descriptor, [f, g](const Element& x) { return f(g(x)); },
          outer.positive_by_construction && inner_map.positive_by_construction,
          outer.name + "*" + inner_map.name};
}

LinearMap combine_maps(double s, const LinearMap& p, double t, const LinearMap& q) {
  if (!(*p.descriptor == *q.descriptor)) throw ArgumentError("combine_maps: descriptor mismatch");
  auto f = p.apply;
  auto g = q.apply;
  std::ostringstream name;
  name << s << "*" << p.name << "+" << t << "*" << q.name;
  return {p.descriptor, [f, g, s, t](const Element& x) { return s * f(x) + t * g(x); },
          s >= 0.0 && t >= 0.0 && p.positive_by_construction && q.positive_by_construction, name.str()};
}

namespace {

void basis_weights(const AlgebraDescriptor& d, std::span<double> w) {
  switch (d.kind()) {
    case AlgebraKind::SymMatrix: {
      std::size_t k = 0;
      for (std::size_t i = 0; i < d.order(); ++i)
        for (std::size_t j = i; j < d.order(); ++j, ++k) w[k] = i == j ? 1.0 : std::sqrt(2.0);
      return;
    }
    case AlgebraKind::SpinFactor:
      for (double& v : w) v = std::sqrt(2.0);
      return;
    case AlgebraKind::DirectSum:
      for (std::size_t f = 0; f < d.factors().size(); ++f) {
        const auto& fd = *d.factors()[f];
        basis_weights(fd, w.subspan(d.coord_offset(f), fd.dim()));
      }
      return;
  }
}

// Orthonormal coordinate k equals weight_k * packed coordinate k.
std::vector<double> basis_weights(const AlgebraDescriptor& d) {
  std::vector<double> w(d.dim());
  basis_weights(d, w);
  return w;
}

}  // namespace

std::vector<double> to_orthonormal(const Element& x) {
  const auto w = basis_weights(x.descriptor());
  std::vector<double> v(x.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = w[k] * x[k];
  return v;
}

Element from_orthonormal(const DescriptorPtr& d, std::span<const double> v) {
  const auto w = basis_weights(*d);
  if (v.size() != w.size()) throw ArgumentError("from_orthonormal: length mismatch");
  std::vector<double> c(v.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = v[k] / w[k];
  return Element(d, std::move(c));
}

Matrix as_matrix(const LinearMap& t) {
  const std::size_t n = t.descriptor->dim();
  Matrix m(n, n);
  std::vector<double> basis(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    basis[k] = 1.0;
    const auto col = to_orthonormal(t(from_orthonormal(t.descriptor, basis)));
    basis[k] = 0.0;
    for (std::size_t i = 0; i < n; ++i) m(i, k) = col[i];
  }
  return m;
}

// ---------------------------------------------------------------------------
// Sublinear functions

SublinearFn::SublinearFn(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw ArgumentError("SublinearFn: slopes must be finite");
  if (beta > alpha) throw ArgumentError("SublinearFn: need beta <= alpha");
}

std::string SublinearFn::label() const {
  std::ostringstream s;
  s << "(" << alpha_ << "," << beta_ << ")";
  return s.str();
}

Element apply_sublinear(const SublinearFn& phi, const Element& x) {
  return lowner([phi](double t) { return phi(t); }, x);
}

}  // namespace eja
