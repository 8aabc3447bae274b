#include "eja/algebra.hpp"

#include <cmath>
#include <sstream>

#include "eja/errors.hpp"

namespace eja {

AlgebraDescriptor AlgebraDescriptor::sym(std::size_t n) {
  if (n < 1) throw ArgumentError("sym: order must be >= 1");
  AlgebraDescriptor d;
  d.kind_ = AlgebraKind::SymMatrix;
  d.order_ = n;
  d.rank_ = n;
  d.dim_ = n * (n + 1) / 2;
  return d;
}

AlgebraDescriptor AlgebraDescriptor::spin(std::size_t n) {
  if (n < 2) throw ArgumentError("spin: dimension must be >= 2");
  AlgebraDescriptor d;
  d.kind_ = AlgebraKind::SpinFactor;
  d.order_ = n;
  d.rank_ = 2;
  d.dim_ = n;
  return d;
}

AlgebraDescriptor AlgebraDescriptor::direct_sum(const std::vector<AlgebraDescriptor>& factors) {
  if (factors.empty()) throw ArgumentError("direct_sum: needs at least one factor");
  AlgebraDescriptor d;
  d.kind_ = AlgebraKind::DirectSum;
  auto add = [&d](const AlgebraDescriptor& f) {
    d.coord_offsets_.push_back(d.dim_);
    d.rank_offsets_.push_back(d.rank_);
    d.dim_ += f.dim_;
    d.rank_ += f.rank_;
    d.factors_.push_back(std::make_shared<const AlgebraDescriptor>(f));
  };
  for (const auto& f : factors) {
    if (f.kind_ == AlgebraKind::DirectSum) {
      for (const auto& g : f.factors_) add(*g);
    } else {
      add(f);
    }
  }
  return d;
}

std::string AlgebraDescriptor::spec() const {
  switch (kind_) {
    case AlgebraKind::SymMatrix:
      return "sym:" + std::to_string(order_);
    case AlgebraKind::SpinFactor:
      return "spin:" + std::to_string(order_);
    case AlgebraKind::DirectSum: {
      std::string s = "sum:";
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += '+';
        s += factors_[i]->spec();
      }
      return s;
    }
  }
  return {};
}

bool operator==(const AlgebraDescriptor& a, const AlgebraDescriptor& b) {
  if (&a == &b) return true;
  if (a.kind_ != b.kind_ || a.order_ != b.order_ || a.dim_ != b.dim_ || a.rank_ != b.rank_ ||
      a.factors_.size() != b.factors_.size())
    return false;
  for (std::size_t i = 0; i < a.factors_.size(); ++i)
    if (!(*a.factors_[i] == *b.factors_[i])) return false;
  return true;
}

DescriptorPtr share(const AlgebraDescriptor& d) { return std::make_shared<const AlgebraDescriptor>(d); }

// ---------------------------------------------------------------------------
// Element

Element::Element(DescriptorPtr d, std::vector<double> coords)
    : desc_(std::move(d)), coords_(std::move(coords)) {
  if (!desc_) throw ArgumentError("Element: null descriptor");
  if (coords_.size() != desc_->dim())
    throw ArgumentError("Element: expected " + std::to_string(desc_->dim()) + " coordinates for " +
                        desc_->spec() + ", got " + std::to_string(coords_.size()));
}

Element::Element(const AlgebraDescriptor& d, std::vector<double> coords)
    : Element(share(d), std::move(coords)) {}

Element Element::zero(DescriptorPtr d) {
  const std::size_t n = d->dim();
  return Element(std::move(d), std::vector<double>(n, 0.0));
}

double Element::norm() const { return std::sqrt(std::max(0.0, inner(*this, *this))); }

Element Element::factor(std::size_t i) const {
  if (desc_->kind() != AlgebraKind::DirectSum) throw ArgumentError("factor: not a direct sum");
  const auto& f = desc_->factors().at(i);
  const std::size_t off = desc_->coord_offset(i);
  return Element(f, std::vector<double>(coords_.begin() + off, coords_.begin() + off + f->dim()));
}

Element Element::embed(const DescriptorPtr& sum, std::size_t i, const Element& part) {
  if (sum->kind() != AlgebraKind::DirectSum) throw ArgumentError("embed: not a direct sum");
  if (!(*sum->factors().at(i) == part.descriptor())) throw ArgumentError("embed: factor mismatch");
  Element out = zero(sum);
  std::copy(part.coords_.begin(), part.coords_.end(), out.coords_.begin() + sum->coord_offset(i));
  return out;
}

void require_same_algebra(const Element& x, const Element& y, const char* op) {
  if (x.descriptor_ptr() == y.descriptor_ptr()) return;
  if (!(x.descriptor() == y.descriptor()))
    throw ArgumentError(std::string(op) + ": descriptor mismatch (" + x.descriptor().spec() + " vs " +
                        y.descriptor().spec() + ")");
}

Element& Element::operator+=(const Element& o) {
  require_same_algebra(*this, o, "+");
  for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] += o.coords_[k];
  return *this;
}

Element& Element::operator-=(const Element& o) {
  require_same_algebra(*this, o, "-");
  for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] -= o.coords_[k];
  return *this;
}

Element& Element::operator*=(double s) {
  for (double& v : coords_) v *= s;
  return *this;
}

Element Element::operator-() const {
  Element r = *this;
  r *= -1.0;
  return r;
}

Element operator+(Element a, const Element& b) { return a += b; }
Element operator-(Element a, const Element& b) { return a -= b; }
Element operator*(Element a, double s) { return a *= s; }
Element operator*(double s, Element a) { return a *= s; }

Matrix to_matrix(const Element& x) {
  const auto& d = x.descriptor();
  if (d.kind() != AlgebraKind::SymMatrix) throw ArgumentError("to_matrix: not a Sym(n) element");
  const std::size_t n = d.order();
  Matrix m(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j, ++k) m(i, j) = m(j, i) = x[k];
  return m;
}

Element from_matrix(const Matrix& m) {
  if (!m.square() || m.rows() == 0) throw ArgumentError("from_matrix: need a non-empty square matrix");
  const std::size_t n = m.rows();
  std::vector<double> c;
  c.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) c.push_back(m(i, j));
  return Element(AlgebraDescriptor::sym(n), std::move(c));
}

// ---------------------------------------------------------------------------
// Products on raw coordinate spans, recursing through direct sums.

namespace {

void sym_product(std::size_t n, std::span<const double> x, std::span<const double> y,
                 std::span<double> out) {
  // Expand once; n is small.
  std::vector<double> X(n * n), Y(n * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j, ++k) {
      X[i * n + j] = X[j * n + i] = x[k];
      Y[i * n + j] = Y[j * n + i] = y[k];
    }
  k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j, ++k) {
      double s = 0.0;
      for (std::size_t l = 0; l < n; ++l) s += X[i * n + l] * Y[l * n + j] + Y[i * n + l] * X[l * n + j];
      out[k] = 0.5 * s;
    }
}

void spin_product(std::span<const double> x, std::span<const double> y, std::span<double> out) {
  double dot = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) dot += x[i] * y[i];
  out[0] = x[0] * y[0] + dot;
  for (std::size_t i = 1; i < x.size(); ++i) out[i] = x[0] * y[i] + y[0] * x[i];
}

void product(const AlgebraDescriptor& d, std::span<const double> x, std::span<const double> y,
             std::span<double> out) {
  switch (d.kind()) {
    case AlgebraKind::SymMatrix:
      sym_product(d.order(), x, y, out);
      return;
    case AlgebraKind::SpinFactor:
      spin_product(x, y, out);
      return;
    case AlgebraKind::DirectSum:
      for (std::size_t f = 0; f < d.factors().size(); ++f) {
        const auto& fd = *d.factors()[f];
        const std::size_t off = d.coord_offset(f);
        product(fd, x.subspan(off, fd.dim()), y.subspan(off, fd.dim()), out.subspan(off, fd.dim()));
      }
      return;
  }
}

double trace_form(const AlgebraDescriptor& d, std::span<const double> x, std::span<const double> y) {
  switch (d.kind()) {
    case AlgebraKind::SymMatrix: {
      const std::size_t n = d.order();
      double s = 0.0;
      std::size_t k = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j, ++k) s += (i == j ? 1.0 : 2.0) * x[k] * y[k];
      return s;
    }
    case AlgebraKind::SpinFactor: {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
      return 2.0 * s;
    }
    case AlgebraKind::DirectSum: {
      double s = 0.0;
      for (std::size_t f = 0; f < d.factors().size(); ++f) {
        const auto& fd = *d.factors()[f];
        const std::size_t off = d.coord_offset(f);
        s += trace_form(fd, x.subspan(off, fd.dim()), y.subspan(off, fd.dim()));
      }
      return s;
    }
  }
  return 0.0;
}

void fill_unit(const AlgebraDescriptor& d, std::span<double> out) {
  switch (d.kind()) {
    case AlgebraKind::SymMatrix:
      for (std::size_t i = 0; i < d.order(); ++i) out[packed_index(d.order(), i, i)] = 1.0;
      return;
    case AlgebraKind::SpinFactor:
      out[0] = 1.0;
      return;
    case AlgebraKind::DirectSum:
      for (std::size_t f = 0; f < d.factors().size(); ++f) {
        const auto& fd = *d.factors()[f];
        fill_unit(fd, out.subspan(d.coord_offset(f), fd.dim()));
      }
      return;
  }
}

void fill_random(const AlgebraDescriptor& d, Rng& rng, double scale, std::span<double> out) {
  switch (d.kind()) {
    case AlgebraKind::SymMatrix: {
      std::normal_distribution<double> diag(0.0, scale), off(0.0, scale / std::sqrt(2.0));
      const std::size_t n = d.order();
      std::size_t k = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j, ++k) out[k] = i == j ? diag(rng) : off(rng);
      return;
    }
    case AlgebraKind::SpinFactor: {
      std::normal_distribution<double> g(0.0, scale);
      for (double& v : out) v = g(rng);
      return;
    }
    case AlgebraKind::DirectSum:
      for (std::size_t f = 0; f < d.factors().size(); ++f) {
        const auto& fd = *d.factors()[f];
        fill_random(fd, rng, scale, out.subspan(d.coord_offset(f), fd.dim()));
      }
      return;
  }
}

}  // namespace

Element jordan_product(const Element& x, const Element& y) {
  require_same_algebra(x, y, "jordan_product");
  Element out = Element::zero(x.descriptor_ptr());
  product(x.descriptor(), x.coords(), y.coords(), out.coords());
  return out;
}

double inner(const Element& x, const Element& y) {
  require_same_algebra(x, y, "inner");
  return trace_form(x.descriptor(), x.coords(), y.coords());
}

Element unit(const DescriptorPtr& d) {
  Element e = Element::zero(d);
  fill_unit(*d, e.coords());
  return e;
}

Element unit(const AlgebraDescriptor& d) { return unit(share(d)); }

Element random_element(const DescriptorPtr& d, Rng& rng, double scale) {
  if (!(scale >= 0.0)) throw ArgumentError("random_element: scale must be >= 0");
  Element x = Element::zero(d);
  if (scale > 0.0) fill_random(*d, rng, scale, x.coords());
  return x;
}

Element random_cone_element(const DescriptorPtr& d, Rng& rng, double scale) {
  if (!(scale >= 0.0)) throw ArgumentError("random_cone_element: scale must be >= 0");
  return square(random_element(d, rng, std::sqrt(scale)));
}

bool operator_commutes(const Element& a, const Element& b, double tol) {
  require_same_algebra(a, b, "operator_commutes");
  Element z = Element::zero(a.descriptor_ptr());
  for (std::size_t k = 0; k < z.size(); ++k) {
    z[k] = 1.0;
    const Element lhs = jordan_product(a, jordan_product(b, z));
    const Element rhs = jordan_product(b, jordan_product(a, z));
    z[k] = 0.0;
    if ((lhs - rhs).norm() > tol) return false;
  }
  return true;
}

}  // namespace eja
