#include "bar_oracle.hpp"
#include "doctest.h"
#include "koszulkit/graded_algebra.hpp"
#include "koszulkit/presentation.hpp"
#include "koszulkit/tor.hpp"
#include "rings.hpp"

using kk::GradeKey;
using kk::kz::KoszulHomology;
using kk::la::Field;
using kk::la::Rational;
using kk::tor::PoincareTruncation;

namespace {

KoszulHomology homology(const kk::ca::QuotientRing& r, int imax, int jmax) {
  kk::kz::HomologyOptions o;
  o.max_hom = imax;
  o.max_int = jmax;
  return KoszulHomology::compute(r, o);
}

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long b = 1;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

}  // namespace

TEST_CASE("bar Betti numbers against the dense oracle") {
  SUBCASE("k[x]/(x^2)") {
    auto t = kk::tor::bar_betti(kk::alg::from_ring(kk::test::ring({"x"}, {"x^2"}), 6), 5, 6);
    auto oracle = kk::test::truncated_polynomial(2, 6);
    for (int p = 0; p <= 5; ++p) {
      for (int q = 0; q <= 6; ++q) {
        CHECK(t.at(p, q) == (p == q ? 1 : 0));
        CHECK(t.at(p, q) == kk::test::dense_bar_betti(oracle, p, q));
      }
    }
  }
  SUBCASE("k[x]/(x^3)") {
    auto t = kk::tor::bar_betti(kk::alg::from_ring(kk::test::ring({"x"}, {"x^3"}), 6), 4, 6);
    auto oracle = kk::test::truncated_polynomial(3, 6);
    for (int p = 0; p <= 4; ++p) {
      for (int q = 0; q <= 6; ++q) CHECK(t.at(p, q) == kk::test::dense_bar_betti(oracle, p, q));
    }
    CHECK(t.at(2, 3) == 1);
  }
  SUBCASE("exterior algebras") {
    for (int c = 1; c <= 3; ++c) {
      std::vector<std::string> rels;
      auto names = kk::ca::default_variable_names(c);
      for (const auto& v : names) rels.push_back(v + "^2");
      auto h = homology(kk::test::ring(names, rels), c, 2 * c);
      auto a = kk::alg::strand_totalize(h);
      int pmax = c == 3 ? 3 : 4;
      int D = a.trusted_bound()[0];
      auto t = kk::tor::bar_betti(a, pmax, std::min(D, pmax));
      auto oracle = kk::test::exterior(c, std::min(D, pmax));
      for (int p = 0; p <= pmax; ++p) {
        for (int q = 0; q <= std::min(D, pmax); ++q) {
          CHECK(t.at(p, q) == (p == q ? binom(c + p - 1, p) : 0));
          CHECK(t.at(p, q) == kk::test::dense_bar_betti(oracle, p, q));
        }
      }
    }
  }
  SUBCASE("63ne in low degrees") {
    auto r = kk::test::isotope_63ne();
    auto t = kk::tor::bar_betti(kk::alg::from_ring(r, 4), 3, 4);
    auto oracle = kk::test::from_normal_forms(r, 4);
    for (int p = 0; p <= 3; ++p) {
      for (int q = 0; q <= 4; ++q) CHECK(t.at(p, q) == kk::test::dense_bar_betti(oracle, p, q));
    }
  }
  SUBCASE("m = 0") {
    kk::alg::GradedAlgebra a(Field::rationals(), GradeKey{5});
    auto t = kk::tor::bar_betti(a, 3, 5);
    CHECK(t.entries.size() == 1);
    CHECK(t.at(0, 0) == 1);
  }
}

TEST_CASE("fine splitting does not change Betti numbers") {
  auto r = kk::test::isotope_63ne();
  auto fine = kk::alg::from_ring(r, 5);
  auto coarse = kk::alg::forget_fine(fine);
  auto a = kk::tor::bar_betti(fine, 4, 5);
  auto b = kk::tor::bar_betti(coarse, 4, 5);
  CHECK(a.entries == b.entries);
}

TEST_CASE("bar differential squares to zero") {
  auto r = kk::test::isotope_63ne();
  kk::tor::BarComplex bar(kk::alg::from_ring(r, 5), {4, GradeKey{5}, -1});
  CHECK_FALSE(bar.check_d_squared().has_value());
  auto h = homology(kk::test::path_ring(4), 4, 8);
  auto hb = kk::alg::from_homology(h);
  kk::tor::BarComplex bar2(hb, {3, GradeKey{hb.trusted_bound()[0], 8}, -1});
  CHECK_FALSE(bar2.check_d_squared().has_value());
}

TEST_CASE("region checks") {
  auto a = kk::alg::from_ring(kk::test::ring({"x"}, {"x^2"}), 3);
  CHECK_THROWS_AS(kk::tor::bar_betti(a, 2, 4), std::out_of_range);
  auto t = kk::tor::bar_betti(a, 2, 3);
  CHECK_THROWS_AS(t.at(3, 3), std::out_of_range);
}

TEST_CASE("Koszul verdicts") {
  SUBCASE("polynomial ring") {
    for (int n = 1; n <= 3; ++n) {
      auto v = kk::tor::is_koszul_up_to(kk::test::poly_ring(n), 4, 4);
      CHECK(v.koszul);
      for (int i = 0; i <= 4; ++i) CHECK(v.table.at(i, i) == binom(n, i));
    }
  }
  SUBCASE("k[x]/(x^3)") {
    auto v = kk::tor::is_koszul_up_to(kk::test::ring({"x"}, {"x^3"}), 3, 4);
    CHECK_FALSE(v.koszul);
    REQUIRE(v.witness);
    CHECK(*v.witness == std::make_pair(2, 3));
  }
  SUBCASE("first Betti numbers count minimal generators") {
    auto h = homology(kk::test::cycle_ring(6), 6, 9);
    auto a = kk::alg::strand_totalize(h);
    int D = a.trusted_bound()[0];
    auto gens = kk::alg::minimal_generators(a, D);
    auto t = kk::tor::bar_betti(a, 1, D);
    for (int q = 1; q <= D; ++q) CHECK(t.at(1, q) == static_cast<long long>(gens[static_cast<std::size_t>(q)].size()));
  }
}

TEST_CASE("strand Koszul verdicts") {
  SUBCASE("quadratic CI") {
    auto h = homology(kk::test::ring({"x", "y"}, {"x^2", "y^2"}), 2, 4);
    auto v = kk::tor::is_strand_koszul_up_to(h, 2, 2);
    CHECK(v.strand_koszul);
  }
  SUBCASE("path ring n=4") {
    auto h = homology(kk::test::path_ring(4), 4, 8);
    int D = kk::alg::strand_trusted_degree(h);
    auto v = kk::tor::is_strand_koszul_up_to(h, 3, std::min(D, 4));
    CHECK(v.strand_koszul);
  }
  SUBCASE("k[x]/(x^3): generator in strand degree 2") {
    auto h = homology(kk::test::ring({"x"}, {"x^3"}), 1, 6);
    auto v = kk::tor::is_strand_koszul_up_to(h, 3, 3);
    CHECK_FALSE(v.strand_koszul);
    REQUIRE(v.witness);
    CHECK(*v.witness == std::make_pair(1, 2));
    REQUIRE(v.trigraded_witness);
    CHECK(*v.trigraded_witness == std::array<int, 3>{1, 1, 3});
  }
}

TEST_CASE("trigraded Betti numbers") {
  SUBCASE("quadratic CI") {
    auto h = homology(kk::test::ring({"x", "y", "z"}, {"x^2", "y^2", "z^2"}), 3, 6);
    auto t = kk::tor::bar_betti_trigraded(h, 2, 6);
    CHECK(t.at(1, 1, 2) == 3);
    CHECK(t.at(2, 2, 4) == 6);
    CHECK(t.at(1, 2, 4) == 0);
  }
  SUBCASE("H = k") {
    auto h = homology(kk::test::poly_ring(2), 2, 4);
    auto t = kk::tor::bar_betti_trigraded(h, 2, 4);
    CHECK(t.entries.size() == 1);
    CHECK(t.at(0, 0, 0) == 1);
  }
  SUBCASE("strand table refines to the trigraded table") {
    auto h = homology(kk::test::path_ring(5), 5, 10);
    int D = kk::alg::strand_trusted_degree(h);
    auto v = kk::tor::is_strand_koszul_up_to(h, 3, D);
    auto tri = kk::tor::bar_betti_trigraded(h, 3, 10);
    auto refined = kk::tor::trigraded_from_strand(v.table);
    for (const auto& [k, beta] : refined) CHECK(tri.at(k[0], k[1], k[2]) == beta);
  }
}

TEST_CASE("shape check") {
  auto h = homology(kk::test::path_ring(4), 4, 8);
  auto a = kk::alg::from_homology(h);
  auto rep = kk::tor::shape_check(a, {3, GradeKey{a.trusted_bound()[0], 8}, -1});
  CHECK(rep.hypothesis);
  CHECK(rep.conclusion);

  kk::alg::GradedAlgebra bad(Field::rationals(), GradeKey{4, 4});
  bad.add_piece({GradeKey{0, 1}, GradeKey(), 1, {"g"}});
  auto rep2 = kk::tor::shape_check(bad, {2, GradeKey{4, 4}, -1});
  CHECK_FALSE(rep2.hypothesis);
  CHECK(rep2.bad_piece);

  kk::alg::GradedAlgebra trivial(Field::rationals(), GradeKey{4, 4});
  CHECK(kk::tor::shape_check(trivial, {2, GradeKey{4, 4}, -1}).conclusion);
}

TEST_CASE("Poincare truncations") {
  SUBCASE("k[x]/(x^2): division by 1+st") {
    PoincareTruncation pr(6, 6, 12);
    for (int i = 0; i <= 6; ++i) pr.set(i, i, 1);
    auto pk = kk::tor::poincare_K_from_R(pr, 1);
    // oracle: 1/((1-st)(1+st)) = 1/(1-s^2t^2)
    for (int i = 0; i <= 6; ++i) CHECK(pk.coefficient(i, i) == (i % 2 == 0 ? 1 : 0));
  }
  SUBCASE("polynomial ring") {
    PoincareTruncation pr(5, 5, 10);
    auto one_plus = pr.one_plus_st_power(3);
    auto pk = kk::tor::poincare_K_from_R(one_plus, 3);
    for (int a = 0; a <= 5; ++a) {
      for (int b = 0; b <= 5; ++b) CHECK(pk.coefficient(a, b) == (a == 0 && b == 0 ? 1 : 0));
    }
  }
  SUBCASE("negative quotient is an error") {
    PoincareTruncation p(3, 3, 6);
    p.set(0, 0, 1);
    CHECK_THROWS_AS(kk::tor::poincare_K_from_R(p, 1), std::domain_error);
  }
  SUBCASE("product and s = -1") {
    PoincareTruncation x(4, 4, 8);
    x.set(0, 0, 1);
    x.set(1, 1, 2);
    auto sq = x * x;
    CHECK(sq.coefficient(2, 2) == 4);
    CHECK(sq.at_s_minus_one()[1] == -4);
  }
  SUBCASE("quadratic CI n=c=2") {
    auto r = kk::test::ring({"x", "y"}, {"x^2", "y^2"});
    auto t = kk::tor::bar_betti(kk::alg::from_ring(r, 5), 5, 5);
    auto pr = kk::tor::poincare_from_betti(t, 5, 5, 10);
    // 1/(1-st)^2: coefficient i+1 on (st)^i
    for (int i = 0; i <= 5; ++i) CHECK(pr.coefficient(i, i) == i + 1);
    auto pk = kk::tor::poincare_K_from_R(pr, 2);
    for (int i = 0; i <= 5; ++i) CHECK(pk.coefficient(i, i) >= 0);
  }
}
