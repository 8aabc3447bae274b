#include <doctest.h>

#include "eja/errors.hpp"
#include "eja/prospector.hpp"
#include "eja/sampling.hpp"
#include "test_support.hpp"

using namespace eja;
using namespace eja::testing;

TEST_CASE("family names") {
  for (Family f : {Family::PsdGram, Family::LyapunovForm, Family::QuadraticForm, Family::RandomSym,
                   Family::RankOnePerturbed, Family::UserFile})
    CHECK(parse_family(to_string(f)) == f);
  CHECK(parse_family("psd") == Family::PsdGram);
  CHECK(parse_family("rank_one") == Family::RankOnePerturbed);
  CHECK_THROWS_AS(parse_family("nope"), ArgumentError);
}

TEST_CASE("hollow 2x2 multiplier is violated by an off-diagonal b") {
  const auto s2 = share(AlgebraDescriptor::sym(2));
  const SchurMatrix hollow(Matrix{{0, 1}, {1, 0}});
  const auto rec = test_candidate(hollow, standard_frame(s2), from_matrix(Matrix{{0, 1}, {1, 0}}));
  CHECK(rec.violated);
  CHECK(rec.margin < 0);
  CHECK(replay(rec).violated);
}

TEST_CASE("known-good multipliers are never violated") {
  Rng rng(1);
  for (std::size_t n : {2u, 3u, 4u}) {
    const auto d = share(AlgebraDescriptor::sym(n));
    const JordanFrame f = standard_frame(d);
    for (int t = 0; t < 100; ++t) {
      const Element b = random_element(d, rng, 3.0);
      const Element a = random_element(d, rng, 2.0);
      const auto la = eigvals(a);
      CHECK_FALSE(test_candidate(SchurMatrix::ones(n), f, b).violated);
      CHECK_FALSE(test_candidate(sample_psd_gram(n, rng), f, b).violated);
      CHECK_FALSE(test_candidate(SchurMatrix::lyapunov_form(la), f, b).violated);
      CHECK_FALSE(test_candidate(SchurMatrix::quadratic_form(la), f, b).violated);
    }
  }
}

TEST_CASE("sweeps over known families find nothing") {
  for (Family fam : {Family::PsdGram, Family::LyapunovForm, Family::QuadraticForm}) {
    FamilySpec spec;
    spec.family = fam;
    spec.n = 3;
    const auto res = sweep(spec, 40, 40, 11);
    CHECK(res.summary.violations == 0);
    CHECK(res.records.empty());
    CHECK(res.summary.samples == 1600);
  }
}

TEST_CASE("zero-diagonal random multipliers are violated and replay") {
  for (std::size_t n : {2u, 3u, 4u}) {
    FamilySpec spec;
    spec.family = Family::RandomSym;
    spec.n = n;
    spec.zero_diagonal = true;
    const auto res = sweep(spec, 1, 100, 5);
    CHECK(res.summary.violations > 0);
    REQUIRE_FALSE(res.records.empty());
    for (const auto& rec : res.records) {
      CHECK(rec.violated);
      CHECK(replay(rec).violated);
      CHECK(replay(rec).margin == rec.margin);
    }
  }
}

TEST_CASE("empty b budget yields empty output") {
  FamilySpec spec;
  spec.family = Family::RandomSym;
  spec.zero_diagonal = true;
  const auto res = sweep(spec, 10, 0, 1);
  CHECK(res.records.empty());
  CHECK(res.summary.samples == 0);
}

TEST_CASE("sweeps are deterministic") {
  FamilySpec spec;
  spec.family = Family::RankOnePerturbed;
  spec.n = 3;
  const auto a = sweep(spec, 30, 30, 8);
  const auto b = sweep(spec, 30, 30, 8);
  CHECK(a.summary.violations == b.summary.violations);
  CHECK(a.summary.min_margin == b.summary.min_margin);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i].margin == b.records[i].margin);
}

TEST_CASE("refinement") {
  FamilySpec spec;
  spec.family = Family::RandomSym;
  spec.n = 3;
  spec.zero_diagonal = true;
  const auto res = sweep(spec, 3, 50, 21);
  REQUIRE_FALSE(res.records.empty());
  for (const auto& rec : res.records) {
    const auto same = refine(rec, 0);
    CHECK(same.margin == rec.margin);
    CHECK(max_abs_diff(same.b, rec.b) == 0.0);

    double prev = rec.margin;
    SearchRecord cur = rec;
    for (int round = 0; round < 5; ++round) {
      cur = refine(cur, 10);
      CHECK(cur.violated);
      CHECK(cur.margin <= prev);
      prev = cur.margin;
      CHECK(replay(cur).violated);
      // The zero diagonal is kept, so the right-hand side stays zero.
      for (std::size_t i = 0; i < 3; ++i) CHECK(cur.a(i, i) == 0.0);
    }
  }
}

TEST_CASE("boundary classification") {
  Rng rng(3);
  const auto s3 = share(AlgebraDescriptor::sym(3));
  const auto ones = classify_boundary(SchurMatrix::ones(3), standard_frame(s3), 200, rng);
  CHECK_FALSE(ones.violated);
  CHECK(ones.min_margin >= -1e-9);
  const Element a = random_element(s3, rng);
  CHECK_FALSE(classify_boundary(SchurMatrix::quadratic_form(eigvals(a)), standard_frame(s3), 200, rng).violated);
  // Frame robustness: a PSD multiplier stays clean in a rotated frame.
  CHECK_FALSE(classify_boundary(sample_psd_gram(3, rng), random_frame(s3, rng), 200, rng).violated);
  // Indefinite with nonzero diagonal: open territory, only the bookkeeping is checked.
  const auto open = classify_boundary(SchurMatrix(Matrix{{1, 2, 0}, {2, 1, 0}, {0, 0, 1}}), standard_frame(s3), 100, rng);
  CHECK(open.samples >= 100);
  CHECK(open.violated == open.witness.has_value());
}

TEST_CASE("cone variant") {
  Rng rng(4);
  const auto s3 = share(AlgebraDescriptor::sym(3));
  const Element b = sample_cone(s3, rng);
  CHECK_FALSE(test_candidate_cone(sample_psd_gram(3, rng), standard_frame(s3), b).violated);
  CHECK_THROWS_AS(test_candidate_cone(SchurMatrix::ones(3), standard_frame(s3), -unit(s3)), ArgumentError);
}
