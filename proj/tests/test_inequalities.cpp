#include <doctest.h>

#include <algorithm>

#include "eja/errors.hpp"
#include "eja/inequalities.hpp"
#include "eja/sampling.hpp"
#include "eja/sweeps.hpp"
#include "test_support.hpp"

using namespace eja;
using namespace eja::testing;

namespace {

const CheckItem& item(const VerificationReport& r, const std::string& label) {
  auto it = std::find_if(r.items.begin(), r.items.end(), [&](const CheckItem& c) { return c.label == label; });
  REQUIRE(it != r.items.end());
  return *it;
}

}  // namespace

TEST_CASE("log majorization of the quadratic representation") {
  Rng rng(1);
  for (const auto& d : all_descriptors()) {
    const Element b = sample_cone(d, rng);
    const auto at_unit = check_log_major_quadrep(unit(d), b);
    CHECK(at_unit.pass);
    CHECK(std::abs(item(at_unit, "weak").slack) < 1e-9);

    // Same frame: both sides reduce to vectors, equal products at k = n.
    const JordanFrame f = random_frame(d, rng);
    std::vector<double> la(d->rank()), lb(d->rank());
    for (auto& v : la) v = std::uniform_real_distribution<double>(0.0, 5.0)(rng);
    for (auto& v : lb) v = std::uniform_real_distribution<double>(0.0, 5.0)(rng);
    const auto r = check_log_major_quadrep(combine(f, la), combine(f, lb));
    CHECK(r.pass);
    CHECK(item(r, "det").holds);
  }
  CHECK_THROWS_AS(check_log_major_quadrep(-unit(AlgebraDescriptor::sym(2)), unit(AlgebraDescriptor::sym(2))),
                  ArgumentError);
}

TEST_CASE("componentwise bound by the sup norm") {
  Rng rng(2);
  for (const auto& d : all_descriptors()) {
    const Element b = sample_cone(d, rng);
    const auto r = check_sup_norm_bound(unit(d), b);
    CHECK(r.pass);
    CHECK(std::abs(r.worst_slack) < 1e-9);
    CHECK(max_abs_diff(eigvals(quad_rep_sqrt(2.0 * unit(d), b)), [&] {
            auto v = eigvals(b);
            for (auto& t : v) t *= 2;
            return v;
          }()) < 1e-10 * (1 + b.norm()));
  }
}

TEST_CASE("commuting factorization of an invertible element") {
  Rng rng(3);
  for (const auto& d : all_descriptors()) {
    for (std::size_t k = 1; k <= d->rank(); ++k) {
      const auto res = commuting_factorization(unit(d), k);
      CHECK(max_abs_diff(res.x, unit(d)) < 1e-12);
      CHECK(max_abs_diff(res.y, unit(d)) < 1e-12);
      CHECK(res.report.pass);
    }
    // Constant |eigenvalue| magnitude at k = n: x = e.
    const JordanFrame f = random_frame(d, rng);
    std::vector<double> signs(d->rank());
    for (std::size_t i = 0; i < signs.size(); ++i) signs[i] = i % 2 ? -2.0 : 2.0;
    const auto res = commuting_factorization(combine(f, signs), d->rank());
    CHECK(max_abs_diff(res.x, unit(d)) < 1e-10);
    CHECK(res.report.pass);
    CHECK_THROWS_AS(commuting_factorization(unit(d), 0), ArgumentError);
    CHECK_THROWS_AS(commuting_factorization(unit(d), d->rank() + 1), ArgumentError);
  }
  const auto s3 = share(AlgebraDescriptor::sym(3));
  for (int trial = 0; trial < 20; ++trial) {
    const auto res = commuting_factorization(sample_invertible(s3, rng), 2);
    CHECK(res.report.pass);
    CHECK(operator_commutes(res.x, res.y, 1e-9 * (1 + res.x.norm() * res.y.norm())));
  }
  CHECK_THROWS_AS(commuting_factorization(Element::zero(s3), 1), ArgumentError);
}

TEST_CASE("positive maps and sublinear functions") {
  Rng rng(4);
  for (const auto& d : all_descriptors()) {
    const Element c = random_element(d, rng);
    const LinearMap p = quad_rep_map(c);
    const Element x = random_element(d, rng, 3.0);
    for (const auto& phi : {SublinearFn::abs(), SublinearFn::plus(), SublinearFn::minus()})
      CHECK(check_positive_map_sublinear(p, x, phi).pass);
    const auto lin = check_positive_map_sublinear(p, x, SublinearFn::identity());
    CHECK(lin.pass);
    CHECK(std::abs(lin.worst_slack) <= 1e-10 * (1 + c.norm() * c.norm() * x.norm()));

    // L_a is not positive in general and cannot be certified.
    const JordanFrame f = standard_frame(d);
    std::vector<double> mixed(d->rank(), 1.0);
    mixed.back() = -1.0;
    CHECK_FALSE(certify_positive(lyap_map(combine(f, mixed))));
    CHECK_THROWS_AS(check_positive_map_sublinear(lyap_map(combine(f, mixed)), x, SublinearFn::abs()), ArgumentError);
    CHECK(certify_positive(schur_map(SchurMatrix::ones(d->rank()), f)));
  }
}

TEST_CASE("quadratic representation with nonnegative sublinear functions") {
  Rng rng(5);
  for (const auto& d : all_descriptors()) {
    const Element b = random_element(d, rng, 3.0);
    CHECK(check_pa_sublinear(unit(d), b, SublinearFn::abs()).pass);
    CHECK(std::abs(check_pa_sublinear(unit(d), b, SublinearFn::abs()).worst_slack) < 1e-9);
    const Element a = random_element(d, rng);
    CHECK(check_pa_sublinear(a, b, SublinearFn::abs()).pass);
    CHECK_THROWS_AS(check_pa_sublinear(a, b, SublinearFn::identity()), ArgumentError);

    // For b in the cone the |.| form is the weak consequence of the log form with a^2.
    const Element bc = sample_cone(d, rng);
    const auto via_pa = check_pa_sublinear(a, bc, SublinearFn::abs());
    const auto via_log = check_log_major_quadrep(square(a), bc);
    CHECK(via_pa.pass == via_log.pass);
  }
}

TEST_CASE("schur multipliers with PSD matrices") {
  Rng rng(6);
  for (const auto& d : all_descriptors()) {
    const JordanFrame f = standard_frame(d);
    const Element b = random_element(d, rng, 3.0);
    const std::size_t n = d->rank();
    Matrix id = Matrix::identity(n);
    CHECK(check_schur_diag(SchurMatrix(id), f, b, SublinearFn::abs()).pass);
    const auto ones = check_schur_diag(SchurMatrix::ones(n), f, b, SublinearFn::abs());
    CHECK(ones.pass);
    CHECK(std::abs(ones.worst_slack) < 1e-9);
    CHECK(check_schur_diag(sample_psd_gram(n, rng), random_frame(d, rng), b, SublinearFn::plus()).pass);
    CHECK_THROWS_AS(check_schur_diag(SchurMatrix(Matrix{{0, 1}, {1, 0}}), standard_frame(share(AlgebraDescriptor::sym(2))),
                                     unit(AlgebraDescriptor::sym(2)), SublinearFn::abs()),
                    ArgumentError);
  }
}

TEST_CASE("weak majorization of the Jordan product") {
  Rng rng(7);
  const Element a = from_matrix(Matrix{{8, 3}, {3, 0}});
  const Element b = from_matrix(Matrix{{0, 3}, {3, 8}});
  CHECK(check_jordan_weak(a, b).pass);
  for (const auto& d : all_descriptors()) {
    const Element x = random_element(d, rng, 3.0);
    const auto r = check_jordan_weak(x, unit(d));
    CHECK(r.pass);
    CHECK(std::abs(r.worst_slack) < 1e-9);
    // b = e is an equality case: recorded, not asserted.
    CHECK(r.near_equalities == 1);
    CHECK(r.near_equality.has_value());
  }
  // The Lyapunov multiplier need not be PSD, so this is not a Schur special case.
  const SchurMatrix lyap_form = SchurMatrix::lyapunov_form(std::vector<double>{1.0, -1.0});
  CHECK(lyap_form.entries() == Matrix{{1, 0}, {0, -1}});
  CHECK_FALSE(lyap_form.is_psd());
}

TEST_CASE("the 2x2 counterexample") {
  const auto ex = check_jordan_counterexample();
  CHECK(max_abs_diff(ex.abs_jordan, {33, 15}) < 1e-9);
  CHECK(max_abs_diff(ex.jordan_abs, {44.52, -3.48}) < 1e-2);
  CHECK_FALSE(ex.forward.holds);
  CHECK_FALSE(ex.backward.holds);
  CHECK(ex.report.pass);
  // Exact values from |A| = [[8.2,2.4],[2.4,1.8]] and |B| = [[1.8,2.4],[2.4,8.2]].
  CHECK(max_abs_diff(ex.jordan_abs, {44.52, -3.48}) < 1e-12);
}

TEST_CASE("quadratic representation is majorized by the Jordan product") {
  Rng rng(8);
  for (const auto& d : all_descriptors()) {
    const Element b = random_element(d, rng, 3.0);
    const auto r = check_pinching(unit(d), b, std::nullopt);
    CHECK(r.pass);
    const Element a = sample_cone(d, rng);
    CHECK(std::abs(trace(quad_rep_sqrt(a, b)) - trace(jordan_product(a, b))) < 1e-9 * (1 + a.norm() * b.norm()));
    CHECK(check_pinching(a, b, PinchLeg{sample_psd_gram(d->rank(), rng), random_frame(d, rng)}).pass);
  }
}

TEST_CASE("holder inequality") {
  CHECK(holder_exponent(2, 2) == doctest::Approx(1));
  CHECK(holder_exponent(kInf, 3) == doctest::Approx(3));
  CHECK(holder_exponent(kInf, kInf) == kInf);
  CHECK_THROWS_AS(holder_exponent(1, 1), ArgumentError);
  CHECK_THROWS_AS(holder_exponent(0.5, kInf), ArgumentError);
  for (const auto& d : all_descriptors()) {
    const auto r = check_holder(unit(d), unit(d), 2, 2);
    CHECK(r.pass);
    CHECK(std::abs(r.worst_slack) < 1e-9);
  }
}

TEST_CASE("sweeps pass on every descriptor") {
  SweepOptions opt;
  opt.samples = 200;
  opt.seed = 99;
  for (const auto& d : all_descriptors()) {
    for (const auto& r : verify_all(d, opt)) {
      INFO(r.check << " on " << r.descriptor);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("near-equality witnesses are collected but never fail a sweep") {
  const auto d = share(AlgebraDescriptor::sym(2));
  SweepOptions opt{40, 1, {}, 2};
  const auto r = run_sweep("jordan_weak", *d, opt, [&](Rng& rng) {
    const Element a = random_element(d, rng);
    return check_jordan_weak(a, rng() % 2 ? unit(d) : random_element(d, rng));
  });
  CHECK(r.pass);
  CHECK(r.near_equalities > 0);
  REQUIRE(r.near_equality_sample.has_value());
  CHECK(r.near_equality.has_value());
}

TEST_CASE("sweeps are deterministic regardless of thread count") {
  const auto d = share(AlgebraDescriptor::spin(5));
  SweepOptions one{300, 7, {}, 1};
  SweepOptions many{300, 7, {}, 4};
  const auto a = sweep_jordan_weak(d, one);
  const auto b = sweep_jordan_weak(d, many);
  CHECK(a.worst_slack == b.worst_slack);
  REQUIRE(a.items.size() == b.items.size());
  for (std::size_t i = 0; i < a.items.size(); ++i) CHECK(a.items[i].slack == b.items[i].slack);
}

TEST_CASE("sweep reports carry a witness from the first failing sample") {
  const auto d = share(AlgebraDescriptor::sym(2));
  SweepOptions opt{50, 3, {}, 2};
  const auto r = run_sweep("always_fails", *d, opt, [&](Rng& rng) {
    VerificationReport rep;
    rep.check = "always_fails";
    rep.descriptor = d->spec();
    rep.add(scalar_le("x<=0", 1.0, 0.0, {}));
    rep.witness = Witness{{{"x", random_element(d, rng)}}, {}, {}, {}};
    return rep;
  });
  CHECK_FALSE(r.pass);
  REQUIRE(r.witness_sample.has_value());
  CHECK(*r.witness_sample == 0);
  CHECK(r.witness.has_value());
}
