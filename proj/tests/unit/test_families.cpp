#include <algorithm>

#include "doctest.h"
#include "koszulkit/families.hpp"
#include "koszulkit/graded_algebra.hpp"
#include "koszulkit/presentation.hpp"
#include "koszulkit/tor.hpp"
#include "rings.hpp"

using kk::MultiDegree;
using kk::fam::Segment;
using kk::kz::KoszulHomology;
using kk::la::Field;
using kk::la::Rational;
using kk::nc::Word;

namespace {

KoszulHomology homology(const kk::ca::QuotientRing& r, int imax, int jmax) {
  kk::kz::HomologyOptions o;
  o.max_hom = imax;
  o.max_int = jmax;
  return KoszulHomology::compute(r, o);
}

MultiDegree bits(int n, std::uint32_t s) {
  MultiDegree u(n);
  for (int k = 0; k < n; ++k) {
    if (s & (1u << k)) u.set(k, 1);
  }
  return u;
}

bool generic_strand_koszul(const kk::ca::QuotientRing& r) {
  auto h = homology(r, r.nvars(), r.nvars() + 3);
  return kk::tor::is_strand_koszul_up_to(h, 3, 3).strand_koszul;
}

}  // namespace

TEST_CASE("complete decompositions") {
  auto u = MultiDegree::from_vector({1, 1, 1, 0, 1, 1, 0, 0, 1, 1, 1, 1});
  auto d = kk::fam::complete_decomposition(u);
  CHECK(d.segments == std::vector<Segment>{{1, 3}, {5, 2}, {9, 4}});
  CHECK(kk::fam::complete_decomposition(MultiDegree::unit(4, 0)).segments == std::vector<Segment>{{1, 1}});
  CHECK(kk::fam::complete_decomposition(MultiDegree::from_vector({1, 1, 0, 1, 1})).segments ==
        std::vector<Segment>{{1, 2}, {4, 2}});
  CHECK_THROWS_AS(kk::fam::complete_decomposition(MultiDegree::from_vector({2, 0})), std::invalid_argument);
  CHECK_THROWS_AS(kk::fam::complete_decomposition(MultiDegree(3)), std::invalid_argument);

  // Reconstruction is the identity and segments are separated by gaps.
  for (std::uint32_t s = 1; s < (1u << 10); ++s) {
    auto v = bits(10, s);
    auto dec = kk::fam::complete_decomposition(v);
    CHECK(dec.reconstruct(10) == v);
    for (std::size_t k = 1; k < dec.segments.size(); ++k) {
      CHECK(dec.segments[k].start > dec.segments[k - 1].start + dec.segments[k - 1].length);
    }
  }
}

TEST_CASE("closed path formula examples") {
  auto u = MultiDegree::from_vector({1, 1, 1, 0, 1, 1, 0, 0, 1, 1, 1, 1});
  CHECK(kk::fam::path_formula_dim(u).dim == 0);
  auto p12 = kk::fam::path_formula_dim(MultiDegree::from_vector({1, 1}));
  CHECK(p12.dim == 1);
  CHECK(p12.degree == 1);
  auto two_threes = kk::fam::path_formula_dim(MultiDegree::from_vector({1, 1, 1, 0, 1, 1, 1}));
  CHECK(two_threes.dim == 1);
  CHECK(two_threes.degree == 4);
  CHECK(kk::fam::path_formula_dim(MultiDegree(3)).dim == 1);
  CHECK_THROWS_AS(kk::fam::path_formula_dim(MultiDegree::from_vector({0, 2})), std::invalid_argument);
}

TEST_CASE("closed path formula against multigraded homology") {
  for (int n = 2; n <= 7; ++n) {
    auto r = kk::fam::build_path_ring(n);
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      auto u = bits(n, s);
      auto b = kk::fam::path_formula_dim(u);
      auto mh = kk::kz::multigraded_homology(r, u);
      for (int i = 0; i <= n; ++i) {
        CHECK(mh.dims[static_cast<std::size_t>(i)] == (b.dim == 1 && i == b.degree ? 1 : 0));
      }
    }
  }
}

TEST_CASE("cycle rings") {
  CHECK_THROWS_AS(kk::fam::build_cycle_ring(2), std::invalid_argument);
  CHECK(kk::fam::build_cycle_ring(3).relations().size() == 3);
  CHECK(kk::fam::build_cycle_ring(4).relations().size() == 4);
  auto c9 = kk::fam::build_cycle_ring(9);
  CHECK(c9.relations().size() == 9);
  CHECK(c9.is_squarefree_monomial());
  auto h = homology(c9, 2, 6);
  CHECK(h.dim(1, 2) == 9);
}

TEST_CASE("mu words") {
  using kk::fam::path_eta;
  using kk::fam::path_mu;
  using kk::fam::path_zeta;
  CHECK(path_mu(1, 2) == Word{path_zeta(1)});
  CHECK(path_mu(1, 3) == Word{path_eta(1)});
  CHECK(path_mu(1, 5) == Word{path_zeta(1), path_eta(3)});
  CHECK(path_mu(2, 6) == Word{path_eta(2), path_eta(5)});
  CHECK(path_mu(1, 8) == Word{path_zeta(1), path_eta(3), path_eta(6)});
  CHECK_THROWS_AS(path_mu(1, 4), std::invalid_argument);
  for (int r = 2; r <= 9; ++r) {
    if (r % 3 == 1) continue;
    auto u = kk::fam::path_word_multidegree(path_mu(1, r), 10);
    auto dec = kk::fam::complete_decomposition(u);
    CHECK(dec.segments == std::vector<Segment>{{1, r}});
  }
}

TEST_CASE("path Groebner certification") {
  CHECK_THROWS_AS(kk::fam::path_certify(2), std::invalid_argument);

  SUBCASE("n = 3 has no eta-eta commutators, shift binomials or zeta gap products") {
    auto G = kk::fam::path_groebner_set(Field::rationals(), 3);
    for (const auto& [p, type] : G) {
      CHECK(type != "eta-eta-commutator");
      CHECK(type != "shift-binomial");
      CHECK(type != "zeta-gap-product");
    }
    auto res = kk::fam::path_certify(3);
    CHECK(res.certificate.verdict == "STRAND-KOSZUL");
  }

  SUBCASE("n = 3..7") {
    for (int n = 3; n <= 7; ++n) {
      auto res = kk::fam::path_certify(n);
      CAPTURE(n);
      CHECK(res.certificate.verdict == "STRAND-KOSZUL");
      CHECK(res.certificate.g_in_ideal);
      CHECK(res.certificate.reduced_counts == res.certificate.target_dims);
      CHECK(res.formula_counts == res.certificate.target_dims);
      CHECK(res.degree_two_mismatches == 0);
      CHECK(res.mu_mismatches == 0);
      CHECK(res.mu_checked > 0);
      CHECK(res.certificate.generators.size() == static_cast<std::size_t>(2 * n - 3));
    }
  }

  SUBCASE("n = 5: zeta_1 eta_3 is reduced and equals mu_{1,5}") {
    auto res = kk::fam::path_certify(5);
    kk::nc::ReductionSystem rs(Field::rationals(), res.certificate.order);
    for (const auto& g : res.certificate.groebner) rs.add(g);
    Word w{kk::fam::path_zeta(1), kk::fam::path_eta(3)};
    auto reduced = kk::nc::reduced_monomials(rs, 2);
    CHECK(std::find(reduced.begin(), reduced.end(), w) != reduced.end());
    CHECK(kk::fam::path_mu(1, 5) == w);
  }

  SUBCASE("n = 6: dim H' in strand degree 2 is the number of reduced words") {
    auto res = kk::fam::path_certify(6, 3);
    auto h = homology(kk::fam::build_path_ring(6), 6, 9);
    auto a = kk::alg::strand_totalize(h);
    auto hilb = kk::alg::forget_fine(a).hilbert(2);
    kk::nc::ReductionSystem rs(Field::rationals(), res.certificate.order);
    for (const auto& g : res.certificate.groebner) rs.add(g);
    CHECK(static_cast<long long>(kk::nc::reduced_monomials(rs, 2).size()) == hilb[2]);
  }

  SUBCASE("G lies in the kernel through the structure constants of H'") {
    int n = 5;
    auto h = homology(kk::fam::build_path_ring(n), n, n + 2);
    auto a = kk::alg::forget_fine(kk::alg::strand_totalize(h));
    auto gens = kk::alg::minimal_generators(a, 2);
    REQUIRE(gens[1].size() == static_cast<std::size_t>(2 * n - 3));
    // Express each named class in the piece basis of H'_1 and rebuild the generator list.
    auto res = kk::fam::path_certify(n, 2);
    std::vector<kk::alg::Generator> named;
    int piece = a.find_piece(kk::GradeKey{1}, kk::GradeKey());
    REQUIRE(piece >= 0);
    const auto& labels = a.pieces()[static_cast<std::size_t>(piece)].labels;
    for (int g = 0; g < 2 * n - 3; ++g) {
      int s = g / 2;
      kk::kz::KoszulMonomial m{MultiDegree::unit(n, s + 1), g % 2 == 0 ? (1u << s) : ((1u << s) | (1u << (s + 2)))};
      int i = g % 2 == 0 ? 1 : 2;
      auto coords = h.coordinates(kk::kz::KoszulElement::monomial(m), i, i + 1);
      // Piece labels are "h<i>,<j>[<index>]" in basis order.
      kk::la::SparseVec v;
      std::string prefix = "h" + std::to_string(i) + "," + std::to_string(i + 1) + "[";
      for (const auto& e : coords) {
        for (std::size_t pos = 0; pos < labels.size(); ++pos) {
          if (labels[pos] == prefix + std::to_string(e.index) + "]") v.push_back({static_cast<int>(pos), e.value});
        }
      }
      std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.index < y.index; });
      named.push_back({res.certificate.generators[static_cast<std::size_t>(g)], 1, {piece, v}});
    }
    for (const auto& g : res.certificate.groebner) {
      auto val = kk::alg::evaluate(a, named, g);
      for (const auto& [pc, vec] : val) CHECK(vec.empty());
    }
  }
}

TEST_CASE("quadratic complete intersections") {
  auto Q = Field::rationals();
  SUBCASE("two and three squares") {
    auto ci2 = kk::fam::build_quadratic_ci(Q, {"x", "y"}, {"x^2", "y^2"});
    CHECK(ci2.certificate.verdict == "STRAND-KOSZUL");
    auto h = homology(ci2.ring, 2, 5);
    CHECK(h.dim(0, 0) == 1);
    CHECK(h.dim(1, 2) == 2);
    CHECK(h.dim(2, 4) == 1);
    auto ci3 = kk::fam::build_quadratic_ci(Q, {"x", "y", "z"}, {"x^2", "y^2", "z^2"});
    CHECK(ci3.certificate.verdict == "STRAND-KOSZUL");
    CHECK(ci3.certificate.target_dims == std::vector<long long>{1, 3, 3, 1, 0});
    CHECK(ci3.certificate.details.at("generated_by_cycles") == "true");
  }
  SUBCASE("non-diagonal quadrics") {
    auto ci = kk::fam::build_quadratic_ci(Q, {"x", "y", "z"}, {"x*y", "x^2-y^2+z^2"});
    CHECK(ci.certificate.verdict == "STRAND-KOSZUL");
    CHECK(generic_strand_koszul(ci.ring));
  }
  SUBCASE("regularity failures") {
    CHECK_THROWS_AS(kk::fam::build_quadratic_ci(Q, {"x"}, {"x^2", "x^2"}), std::invalid_argument);
    CHECK_THROWS_AS(kk::fam::build_quadratic_ci(Q, {"x", "y"}, {"x^2", "x^2"}), std::invalid_argument);
    CHECK_THROWS_AS(kk::fam::build_quadratic_ci(Q, {"x", "y"}, {"x^2", "x*y"}), std::invalid_argument);
    CHECK_THROWS_AS(kk::fam::build_quadratic_ci(Q, {"x", "y"}, {"x^3"}), std::invalid_argument);
  }
}

TEST_CASE("short Gorenstein certification") {
  SUBCASE("k[x,y]/(x^2,y^2)") {
    auto res = kk::fam::short_gorenstein_certify(kk::test::ring({"x", "y"}, {"x^2", "y^2"}));
    CHECK(res.certificate.verdict == "STRAND-KOSZUL");
    CHECK(res.pairing.middle_form == "alternating");
    CHECK(res.certificate.groebner.size() == 3);
  }
  SUBCASE("dual bases pair to the socle") {
    std::vector<kk::ca::QuotientRing> rings = {kk::test::gorenstein_diagonal(3), kk::test::gorenstein_diagonal(4),
                                               kk::test::gorenstein_hyperbolic4(),
                                               kk::test::ring({"x", "y"}, {"x*y", "x^2-y^2"})};
    for (const auto& r : rings) {
      auto res = kk::fam::short_gorenstein_certify(r);
      const auto& P = res.pairing;
      int n = P.n;
      CHECK(res.certificate.verdict == "STRAND-KOSZUL");
      for (int i = 0; i <= n; ++i) CHECK(P.b[static_cast<std::size_t>(i)] == P.b[static_cast<std::size_t>(n - i)]);
      for (const auto& [i, M] : P.pairing) CHECK(kk::la::rank(r.field(), M) == M.rows());
      auto h = homology(r, n, n + 2);
      for (const auto& [i, Z] : P.zeta) {
        if (!P.eta.count(n - i)) continue;
        const auto& E = P.eta.at(n - i);
        for (std::size_t a = 0; a < Z.size(); ++a) {
          for (std::size_t b = 0; b < E.size(); ++b) {
            auto prod = kk::kz::multiply(r, Z[a].representative, E[b].representative);
            auto c = prod.is_zero() ? kk::la::SparseVec{} : h.coordinates(prod, n, n + 2);
            if (a == b) CHECK(c == kk::la::SparseVec{{0, Rational(1)}});
            else CHECK(c.empty());
          }
        }
      }
      CHECK(generic_strand_koszul(r));
    }
  }
  SUBCASE("characteristic 2") {
    auto res = kk::fam::short_gorenstein_certify(kk::test::gorenstein_diagonal(3, Field::prime(2)));
    CHECK(res.certificate.verdict == "STRAND-KOSZUL");
    CHECK_THROWS_AS(kk::fam::short_gorenstein_certify(kk::test::ring({"x", "y"}, {"x^2", "y^2"}, Field::prime(2))),
                    std::invalid_argument);
  }
  SUBCASE("non-Gorenstein input") {
    CHECK_THROWS_AS(kk::fam::short_gorenstein_certify(kk::test::ring({"x", "y"}, {"x^2", "x*y"})), std::invalid_argument);
    CHECK_THROWS_AS(kk::fam::short_gorenstein_certify(kk::test::ring({"x"}, {"x^3"})), std::invalid_argument);
  }
}

TEST_CASE("three-relation certification") {
  SUBCASE("the four tables") {
    auto t1 = kk::fam::three_relation_certify(kk::test::ring({"x", "y"}, {"x^2", "x*y", "y^2"}));
    CHECK(t1.table == 1);
    auto t2 = kk::fam::three_relation_certify(kk::test::ring({"x", "y", "z"}, {"x^2", "x*y", "x*z"}));
    CHECK(t2.table == 2);
    auto t3 = kk::fam::three_relation_certify(kk::test::ring({"x", "y", "z"}, {"x^2", "y^2", "z^2"}));
    CHECK(t3.table == 3);
    auto t4 = kk::fam::three_relation_certify(kk::test::ring({"x", "y", "z"}, {"x^2", "x*y", "z^2"}));
    CHECK(t4.table == 4);
    for (const auto* t : {&t1, &t2, &t3, &t4}) CHECK(t->certificate.verdict == "STRAND-KOSZUL");
  }
  SUBCASE("c != 0 gives the reduced words zeta1 eta, zeta1 zeta2, zeta1 zeta3") {
    auto t = kk::fam::three_relation_certify(kk::test::ring({"x", "y", "z", "w"}, {"x*y+x*w", "2*w^2+x*y", "2*z*w"}));
    REQUIRE(t.table == 4);
    CHECK(t.relation_case == "c!=0");
    CHECK(t.certificate.g_in_ideal);
    auto reduced = t.reduced_degree_two;
    std::sort(reduced.begin(), reduced.end());
    CHECK(reduced == std::vector<Word>{{0, 1}, {0, 2}, {0, 3}});
    CHECK(t.certificate.reduced_counts == std::vector<long long>{1, 4, 3, 0, 0});
  }
  SUBCASE("with c = 0 and a, b != 0 the ten words leave zeta1 zeta2 zeta3 reduced") {
    // Degree-3 count for G built from a zeta1 zeta2 + b zeta1 zeta3 under zeta1 < zeta2 < zeta3 < eta.
    auto f = Field::rationals();
    kk::nc::VariableOrder order({1, 1, 1, 1});
    kk::nc::ReductionSystem rs(f, order);
    auto word = [](Word w) { return kk::nc::NCPolynomial::word(w); };
    auto bin = [&](Word a, Word b, int c) {
      auto p = word(a);
      p.add_term(f, b, Rational(c));
      return p;
    };
    for (int a = 0; a < 3; ++a) rs.add(bin({3, a}, {a, 3}, -1));
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) rs.add(bin({b, a}, {a, b}, 1));
    }
    for (int a = 0; a < 4; ++a) rs.add(word({a, a}));
    rs.add(word({1, 3}));
    rs.add(word({2, 3}));
    rs.add(bin({0, 1}, {0, 2}, 1));
    auto counts = kk::nc::reduced_monomial_counts(rs, 3);
    CHECK(counts == std::vector<long long>{1, 4, 3, 1});
    CHECK(kk::nc::reduced_monomials(rs, 3) == std::vector<Word>{{0, 1, 2}});
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(kk::fam::three_relation_certify(kk::test::ring({"x", "y"}, {"x^2", "y^2"})), std::invalid_argument);
    // Koszul failure appears at (3,4).
    CHECK_THROWS_AS(kk::fam::three_relation_certify(kk::test::ring({"x", "y", "z", "w"}, {"x*z", "y^2", "y*w+z^2"})),
                    std::invalid_argument);
  }
  SUBCASE("agreement with the bar complex of H'") {
    std::vector<kk::ca::QuotientRing> rings = {
        kk::test::ring({"x", "y"}, {"x^2", "x*y", "y^2"}), kk::test::ring({"x", "y", "z"}, {"x^2", "x*y", "x*z"}),
        kk::test::ring({"x", "y", "z"}, {"x^2", "y^2", "z^2"}), kk::test::ring({"x", "y", "z"}, {"x^2", "x*y", "z^2"})};
    for (const auto& r : rings) {
      CHECK(kk::fam::three_relation_certify(r).certificate.certified() == generic_strand_koszul(r));
    }
  }
}
