#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "eja/errors.hpp"
#include "eja/majorization.hpp"

using namespace eja;

namespace {

using Vec = std::vector<double>;

/// p = a chain of T-transforms (convex mixing of two coordinates) applied to q,
/// so p < q holds exactly.
Vec t_transform_chain(const Vec& q, std::mt19937_64& rng, int steps) {
  Vec p = q;
  std::uniform_int_distribution<std::size_t> pick(0, q.size() - 1);
  std::uniform_real_distribution<double> mix(0.0, 1.0);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const double t = mix(rng);
    const double a = p[i], b = p[j];
    p[i] = t * a + (1 - t) * b;
    p[j] = (1 - t) * a + t * b;
  }
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

Vec gaussian(std::size_t n, std::mt19937_64& rng, double sigma = 3.0) {
  std::normal_distribution<double> g(0.0, sigma);
  Vec v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

}  // namespace

TEST_CASE("vector helpers") {
  CHECK(sort_desc(Vec{1, 3, 2}) == Vec{3, 2, 1});
  CHECK(compwise(Vec{9, 1}, Vec{9, 1}) == Vec{81, 1});
  CHECK(abs_vec(Vec{7, -1}) == Vec{7, 1});
  CHECK_THROWS_AS(compwise(Vec{1}, Vec{1, 2}), ArgumentError);
}

TEST_CASE("weak and strong majorization examples") {
  const auto w = weak_major(Vec{3, 1}, Vec{4, 1});
  CHECK(w.holds);
  CHECK(w.worst_slack == doctest::Approx(1.0));
  const auto s = major(Vec{2, 5, 1}, Vec{5, 1, 2});
  CHECK(s.holds);
  CHECK(s.worst_slack == 0.0);
  CHECK(weak_major(Vec{33, 15}, Vec{81, 1}).holds);
  const auto f = weak_major(Vec{33, 15}, Vec{44.52, -3.48});
  CHECK_FALSE(f.holds);
  CHECK(f.failing_k == 2);
  CHECK_FALSE(major(Vec{1, 1}, Vec{2, 1}).holds);
}

TEST_CASE("log majorization examples") {
  CHECK(log_major(Vec{2, 2}, Vec{4, 1}).holds);
  CHECK(weak_log_major(Vec{0, 0}, Vec{3, 0}).holds);
  CHECK(log_major(Vec{0, 0}, Vec{3, 0}).holds);
  const auto v = weak_log_major(Vec{3, 3}, Vec{4, 1});
  CHECK_FALSE(v.holds);
  CHECK(v.failing_k == 2);
  CHECK_THROWS_AS(weak_log_major(Vec{-1, 1}, Vec{1, 1}), ArgumentError);
  // Tiny negatives from rounding are treated as zero.
  CHECK(weak_log_major(Vec{1, -1e-12}, Vec{1, 0}).holds);
}

TEST_CASE("tolerance semantics are atol + rtol * scale") {
  const Tolerance tol{1e-9, 1e-8};
  CHECK(weak_major(Vec{1 + 5e-9, 0}, Vec{1, 0}, tol).holds);
  CHECK_FALSE(weak_major(Vec{1 + 5e-8, 0}, Vec{1, 0}, tol).holds);
  CHECK(weak_major(Vec{1e6 + 1e-3, 0}, Vec{1e6, 0}, tol).holds);
}

TEST_CASE("property: T-transform pairs majorize and imply weak majorization of absolute values") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const Vec q = gaussian(n, rng);
    const Vec p = t_transform_chain(q, rng, 3 * int(n));
    CHECK(major(p, q).holds);
    CHECK(weak_major(p, q).holds);
    CHECK(weak_major(abs_vec(p), abs_vec(q)).holds);
  }
}

TEST_CASE("property: increasing convex functions respect weak majorization") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> shrink(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const Vec q = gaussian(n, rng);
    Vec p = t_transform_chain(q, rng, 2 * int(n));
    // Lowering entries keeps p <_w q.
    for (auto& x : p) x -= shrink(rng);
    REQUIRE(weak_major(p, q).holds);
    auto total = [&](const Vec& v, auto phi) {
      return std::accumulate(v.begin(), v.end(), 0.0, [&](double s, double x) { return s + phi(x); });
    };
    auto pos = [](double t) { return std::max(t, 0.0); };
    auto ex = [](double t) { return std::exp(std::min(t, 20.0)); };
    auto sq = [](double t) { return (t + 20) * (t + 20); };
    CHECK(total(p, pos) <= total(q, pos) + 1e-9);
    CHECK(total(p, ex) <= total(q, ex) * (1 + 1e-12) + 1e-9);
    CHECK(total(p, sq) <= total(q, sq) * (1 + 1e-12) + 1e-9);
  }
}

TEST_CASE("property: monotone products preserve weak majorization") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const Vec q = sort_desc(gaussian(n, rng));
    const Vec p = sort_desc(t_transform_chain(q, rng, 2 * int(n)));
    Vec r(n);
    for (auto& x : r) x = u(rng);
    r = sort_desc(r);
    // Signed data: partial sums taken in the order p, q come in (no re-sorting of the products).
    const Vec pr = compwise(p, r), qr = compwise(q, r);
    double sp = 0, sq = 0;
    for (std::size_t k = 0; k < n; ++k) {
      sp += pr[k];
      sq += qr[k];
      CHECK(sp <= sq + 1e-9 * (1 + std::abs(sq)));
    }
    // Nonnegative data: the products stay sorted and the usual weak order holds.
    const Vec pa = sort_desc(abs_vec(p)), qa = sort_desc(abs_vec(q));
    CHECK(weak_major(compwise(pa, r), compwise(qa, r)).holds);
  }
}

TEST_CASE("re-sorting signed products can break weak majorization") {
  const Vec p{-2.23007, -2.52821, -2.60539};
  const Vec q{-1.84354, -2.22062, -3.2995};
  const Vec r{2.60804, 2.10954, 0.536762};
  REQUIRE(weak_major(p, q).holds);
  CHECK_FALSE(weak_major(compwise(p, r), compwise(q, r)).holds);
}

TEST_CASE("property: log majorization implies weak majorization on nonnegative data") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 2 + trial % 6;
    Vec lq = gaussian(n, rng, 1.0);
    const Vec lp = t_transform_chain(lq, rng, 2 * int(n));
    Vec p(n), q(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = std::exp(lp[i]);
      q[i] = std::exp(lq[i]);
    }
    REQUIRE(log_major(p, q).holds);
    CHECK(weak_major(p, q).holds);
  }
}

TEST_CASE("property: verdicts are invariant under common positive scaling") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 5;
    Vec p(n), q(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = u(rng);
      q[i] = u(rng);
    }
    const bool base = weak_log_major(p, q).holds;
    for (double c : {2.0, 7.0, 1e50}) {
      Vec ps = p, qs = q;
      for (auto& x : ps) x *= c;
      for (auto& x : qs) x *= c;
      CHECK(weak_log_major(ps, qs).holds == base);
    }
  }
}

TEST_CASE("partial products do not overflow") {
  const Vec p(20, 1e30);
  Vec q(20, 1e30);
  q[0] = 2e30;
  CHECK(weak_log_major(p, q).holds);
  CHECK_FALSE(weak_log_major(q, p).holds);
}
