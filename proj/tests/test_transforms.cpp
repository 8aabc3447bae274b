#include <doctest.h>

#include "eja/errors.hpp"
#include "eja/majorization.hpp"
#include "eja/sampling.hpp"
#include "eja/spectral.hpp"
#include "eja/transforms.hpp"
#include "test_support.hpp"

using namespace eja;
using namespace eja::testing;

TEST_CASE("lyapunov and quadratic representation identities") {
  Rng rng(21);
  for (const auto& d : all_descriptors()) {
    const Element a = random_element(d, rng);
    const Element x = random_element(d, rng);
    const Element e = unit(d);
    CHECK(max_abs_diff(lyap(e, x), x) < 1e-15);
    CHECK(max_abs_diff(lyap(a, e), a) < 1e-15);
    CHECK(max_abs_diff(quad_rep(a, e), square(a)) < 1e-13);
    CHECK(max_abs_diff(quad_rep(e, x), x) < 1e-14);
    CHECK(max_abs_diff(quad_rep_sqrt(e, x), x) < 1e-13);
  }
  const Element a = from_matrix(Matrix{{8, 3}, {3, 0}});
  const Element b = from_matrix(Matrix{{0, 3}, {3, 8}});
  CHECK(to_matrix(lyap(a, b)) == Matrix{{9, 24}, {24, 9}});
}

TEST_CASE("oracle: quadratic representation equals AXA") {
  Rng rng(3);
  for (std::size_t n : {2u, 3u, 5u}) {
    const auto d = share(AlgebraDescriptor::sym(n));
    for (int trial = 0; trial < 500; ++trial) {
      const Element a = random_element(d, rng, 2.0);
      const Element x = random_element(d, rng, 2.0);
      const Matrix ma = to_matrix(a);
      const Matrix expect = ma * to_matrix(x) * ma;
      CHECK(max_abs_diff(to_matrix(quad_rep(a, x)), expect) <= 1e-10 * (1 + expect.frobenius()));
    }
  }
}

TEST_CASE("quad_rep_sqrt: determinant and swap symmetry") {
  Rng rng(17);
  for (const auto& d : all_descriptors()) {
    for (int trial = 0; trial < 100; ++trial) {
      const Element a = sample_cone(d, rng);
      const Element b = sample_cone(d, rng);
      const Element g = random_element(d, rng, 3.0);
      const double lhs = det(quad_rep_sqrt(a, g));
      const double rhs = det(a) * det(g);
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(rhs) + 1e-12);
      CHECK(max_abs_diff(eigvals(quad_rep_sqrt(a, b)), eigvals(quad_rep_sqrt(b, a))) <=
            1e-8 * (1 + a.norm() * b.norm()));
    }
  }
}

TEST_CASE("peirce components") {
  const auto d = share(AlgebraDescriptor::sym(2));
  const JordanFrame f = standard_frame(d);
  const auto p = peirce_project(f, from_matrix(Matrix{{0, 3}, {3, 8}}));
  CHECK(to_matrix(p.at(0, 1)) == Matrix{{0, 3}, {3, 0}});
  CHECK(to_matrix(p.at(1, 1)) == Matrix{{0, 0}, {0, 8}});

  const auto s3 = share(AlgebraDescriptor::sym(3));
  const JordanFrame f3 = standard_frame(s3);
  const auto q = peirce_project(f3, f3[1]);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) {
      if (i == 1 && j == 1) {
        CHECK(max_abs_diff(q.at(i, j), f3[1]) < 1e-15);
      } else {
        CHECK(q.at(i, j).norm() < 1e-15);
      }
    }
  JordanFrame bad = f3;
  bad.idempotents.pop_back();
  CHECK_THROWS_AS(peirce_project(bad, f3[0]), ArgumentError);
}

TEST_CASE("oracle: peirce components reconstruct and are mutually orthogonal") {
  Rng rng(99);
  for (const auto& d : all_descriptors()) {
    for (int trial = 0; trial < 100; ++trial) {
      const JordanFrame f = random_frame(d, rng);
      const Element x = random_element(d, rng, 3.0);
      const auto p = peirce_project(f, x);
      CHECK(max_abs_diff(p.sum(), x) <= 1e-9 * (1 + x.norm()));
      for (std::size_t u = 0; u < p.components.size(); ++u)
        for (std::size_t v = u + 1; v < p.components.size(); ++v)
          CHECK(std::abs(inner(p.components[u], p.components[v])) <= 1e-9 * (1 + x.norm() * x.norm()));
    }
  }
}

TEST_CASE("schur products reproduce the Lyapunov and quadratic maps") {
  Rng rng(123);
  for (const auto& d : all_descriptors()) {
    for (int trial = 0; trial < 50; ++trial) {
      const Element a = random_element(d, rng);
      const Element x = random_element(d, rng);
      const auto sd = spectral_decompose(a);
      CHECK(max_abs_diff(schur(SchurMatrix::ones(d->rank()), sd.frame, x), x) < 1e-10);
      CHECK(max_abs_diff(schur(SchurMatrix::lyapunov_form(sd.eigenvalues), sd.frame, x), lyap(a, x)) < 1e-9);
      CHECK(max_abs_diff(schur(SchurMatrix::quadratic_form(sd.eigenvalues), sd.frame, x), quad_rep(a, x)) < 1e-9);
    }
  }
}

TEST_CASE("schur matrices validate symmetry") {
  CHECK_THROWS_AS(SchurMatrix(Matrix{{1, 2}, {3, 1}}), ArgumentError);
  CHECK_THROWS_AS(SchurMatrix(Matrix(2, 3)), ArgumentError);
  const SchurMatrix a(Matrix{{1, 2 + 1e-13}, {2, 1}});
  CHECK(a(0, 1) == a(1, 0));
  CHECK_FALSE(SchurMatrix(Matrix{{1, 2}, {2, 1}}).is_psd());
  CHECK(SchurMatrix::ones(3).is_psd());
}

TEST_CASE("operator matrices") {
  Rng rng(5);
  for (const auto& d : all_descriptors()) {
    CHECK(max_abs_diff(as_matrix(lyap_map(unit(d))), Matrix::identity(d->dim())) < 1e-15);
    const Element a = random_element(d, rng);
    const Matrix m = as_matrix(lyap_map(a));
    CHECK(max_abs_diff(m, m.transpose()) < 1e-13);
    const LinearMap p = quad_rep_map(a);
    const Matrix mp = as_matrix(p);
    for (int trial = 0; trial < 100; ++trial) {
      const Element x = random_element(d, rng);
      const auto v = to_orthonormal(x);
      const Element viaMatrix = from_orthonormal(d, mp * std::span<const double>(v));
      CHECK(max_abs_diff(viaMatrix, p(x)) < 1e-10 * (1 + a.norm() * a.norm() * x.norm()));
    }
  }
}

TEST_CASE("sublinear functions") {
  Rng rng(6);
  CHECK_THROWS_AS(SublinearFn(-1, 1), ArgumentError);
  for (const auto& d : all_descriptors()) {
    const Element x = random_element(d, rng);
    const Element e = unit(d);
    CHECK(max_abs_diff(apply_sublinear(SublinearFn::abs(), x), abs_el(x)) < 1e-12);
    CHECK(apply_sublinear(SublinearFn::plus(), -e).norm() == 0.0);
    CHECK(max_abs_diff(apply_sublinear(SublinearFn::minus(), -e), e) < 1e-14);
    CHECK(max_abs_diff(apply_sublinear(SublinearFn::identity(), x), x) < 1e-12);
  }
  CHECK(SublinearFn::abs().label() == "(1,-1)");
}

TEST_CASE("property: positive maps keep the cone") {
  Rng rng(31);
  for (const auto& d : all_descriptors()) {
    for (int trial = 0; trial < 100; ++trial) {
      const Element c = sample_idempotent(d, rng);
      const Element x = sample_cone(d, rng);
      CHECK(eigvals(quad_rep(c, x)).back() >= -1e-10 * (1 + x.norm()));
      const SchurMatrix a = sample_psd_gram(d->rank(), rng);
      const JordanFrame f = random_frame(d, rng);
      CHECK(eigvals(schur(a, f, x)).back() >= -1e-10 * (1 + x.norm() * a.entries().frobenius()));
    }
  }
}

TEST_CASE("property: peirce pinching is majorized") {
  Rng rng(47);
  for (const auto& d : all_descriptors()) {
    for (int trial = 0; trial < 100; ++trial) {
      const JordanFrame f = random_frame(d, rng);
      const Element x = random_element(d, rng, 3.0);
      const auto p = peirce_project(f, x);
      std::vector<bool> in_c(d->rank());
      for (auto&& b : in_c) b = rng() & 1;
      // u + w keeps the blocks entirely inside or entirely outside c.
      Element uw = Element::zero(d);
      for (std::size_t i = 0; i < d->rank(); ++i)
        for (std::size_t j = i; j < d->rank(); ++j)
          if (in_c[i] == in_c[j]) uw += p.at(i, j);
      CHECK(major(eigvals(uw), eigvals(x)).holds);
    }
  }
}

TEST_CASE("property: submultiplicativity of spectral norms") {
  Rng rng(71);
  for (const auto& d : all_descriptors()) {
    for (int trial = 0; trial < 100; ++trial) {
      const Element x = random_element(d, rng, 3.0);
      const Element y = random_element(d, rng, 3.0);
      for (double p : {1.0, 2.0, 3.5, kInf}) {
        const double rhs = pnorm(x, p) * pnorm(y, kInf);
        CHECK(pnorm(jordan_product(x, y), p) <= rhs + 1e-10 * (1 + rhs));
      }
    }
  }
}
