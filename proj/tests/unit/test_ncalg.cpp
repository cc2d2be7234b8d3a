#include "doctest.h"
#include "koszulkit/ncalg.hpp"

using kk::la::Field;
using kk::la::Rational;
using kk::nc::NCPolynomial;
using kk::nc::ReductionSystem;
using kk::nc::VariableOrder;
using kk::nc::Word;

namespace {

NCPolynomial poly(std::initializer_list<std::pair<Word, int>> terms) {
  NCPolynomial p;
  for (const auto& [w, c] : terms) p.add_term(Field::rationals(), w, Rational(c));
  return p;
}

ReductionSystem exterior2() {
  ReductionSystem g(Field::rationals(), VariableOrder({1, 1}));
  g.add(poly({{{1, 0}, 1}, {{0, 1}, 1}}));
  g.add(poly({{{0, 0}, 1}}));
  g.add(poly({{{1, 1}, 1}}));
  return g;
}

}  // namespace

TEST_CASE("deglex_compare") {
  VariableOrder o({1, 1});
  CHECK(kk::nc::deglex_compare({0}, {0, 1}, o) < 0);
  CHECK(kk::nc::deglex_compare({0, 1}, {1, 0}, o) < 0);
  CHECK(kk::nc::deglex_compare({1, 0}, {1, 0}, o) == 0);
  // generators: 0 = zeta12, 1 = zeta23, 2 = eta123 ranked zeta12 < eta123 < zeta23
  VariableOrder path({1, 1, 1}, {0, 2, 1});
  CHECK(kk::nc::deglex_compare({0}, {2}, path) < 0);
  CHECK(kk::nc::deglex_compare({2}, {1}, path) < 0);
  CHECK(path.ascending() == std::vector<int>{0, 2, 1});
  VariableOrder weighted({1, 2});
  CHECK(kk::nc::deglex_compare({1}, {0, 0, 0}, weighted) < 0);
}

TEST_CASE("reduce") {
  ReductionSystem g(Field::rationals(), VariableOrder({1, 1}));
  g.add(poly({{{1, 0}, 1}, {{0, 1}, 1}}));
  CHECK(kk::nc::reduce(NCPolynomial::word({1, 0}), g) == poly({{{0, 1}, -1}}));
  CHECK(kk::nc::reduce(NCPolynomial::word({0, 1}), g) == NCPolynomial::word({0, 1}));
  // reduce is idempotent and p - reduce(p) is the traced combination
  NCPolynomial p = poly({{{1, 1, 0}, 3}, {{1, 0, 1}, -2}, {{0, 1, 1}, 1}});
  std::vector<kk::nc::RewriteStep> trace;
  NCPolynomial r = kk::nc::reduce(p, g, &trace);
  CHECK(kk::nc::reduce(r, g) == r);
  NCPolynomial combo;
  for (const auto& st : trace) combo.add(Field::rationals(), g.elements()[static_cast<std::size_t>(st.element)].sandwich(Field::rationals(), st.left, st.right, st.coefficient));
  NCPolynomial diff = p;
  diff.add(Field::rationals(), r, Rational(-1));
  CHECK(diff == combo);
  for (const auto& [w, c] : r.terms()) CHECK_FALSE(kk::nc::contains_subword(w, {1, 0}));
}

TEST_CASE("reduced monomials and certification") {
  auto g = exterior2();
  CHECK(kk::nc::reduced_monomials(g, 2) == std::vector<Word>{{0, 1}});
  CHECK(kk::nc::reduced_monomials(g, 3).empty());
  auto rep = kk::nc::certify_groebner_by_dims(g, {1, 2, 1, 0, 0}, 4);
  CHECK(rep.pass);
  ReductionSystem empty(Field::rationals(), VariableOrder({1, 1}));
  CHECK(kk::nc::reduced_monomials(empty, 3).size() == 8);
  // dropping an element leaves excess reduced monomials
  ReductionSystem partial(Field::rationals(), VariableOrder({1, 1}));
  partial.add(poly({{{1, 0}, 1}, {{0, 1}, 1}}));
  partial.add(poly({{{0, 0}, 1}}));
  auto bad = kk::nc::certify_groebner_by_dims(partial, {1, 2, 1, 0}, 3);
  CHECK_FALSE(bad.pass);
  CHECK(bad.first_mismatch == 2);
  CHECK_THROWS_AS(kk::nc::certify_groebner_by_dims(g, {1, 2, 2}, 2), std::logic_error);
}

TEST_CASE("overlap completion") {
  Field q = Field::rationals();
  VariableOrder o2({1, 1});
  std::vector<NCPolynomial> ext{poly({{{1, 0}, 1}, {{0, 1}, 1}}), poly({{{0, 0}, 1}}), poly({{{1, 1}, 1}})};
  auto done = kk::nc::overlap_completion(q, o2, ext, 5);
  CHECK(done.size() == 3);
  CHECK(kk::nc::unresolved_ambiguities(done, 5) == 0);

  VariableOrder o3({1, 1, 1});
  std::vector<NCPolynomial> comm;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) comm.push_back(poly({{{b, a}, 1}, {{a, b}, -1}}));
  auto c = kk::nc::overlap_completion(q, o3, comm, 4);
  CHECK(c.size() == 3);
  auto counts = kk::nc::reduced_monomial_counts(c, 4);
  CHECK(counts == std::vector<long long>{1, 3, 6, 10, 15});

  CHECK(kk::nc::overlap_completion(q, o3, {}, 4).size() == 0);

  // x^2 - y*x in two variables needs new elements: y*x^2 style overlaps
  std::vector<NCPolynomial> g{poly({{{0, 0}, 1}, {{1, 0}, -1}})};
  auto grown = kk::nc::overlap_completion(q, o2, g, 4);
  CHECK(kk::nc::unresolved_ambiguities(grown, 4) == 0);
  // order independence of counts after completion
  VariableOrder rev({1, 1}, {1, 0});
  auto grown_rev = kk::nc::overlap_completion(q, rev, g, 4);
  CHECK(kk::nc::reduced_monomial_counts(grown, 4) == kk::nc::reduced_monomial_counts(grown_rev, 4));
}
