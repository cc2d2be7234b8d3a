#include "doctest.h"
#include "dense_oracle.hpp"
#include "koszulkit/quotient_ring.hpp"
#include "rings.hpp"

using kk::MultiDegree;
using kk::ca::Polynomial;
using kk::ca::QuotientRing;
using kk::la::Field;
using kk::la::Rational;

namespace {

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// dim R_d = dim of degree-d monomials minus rank of the span of (monomial * relation).
long long oracle_dim(const QuotientRing& r, int d) {
  Field f = r.field();
  QuotientRing poly = QuotientRing::polynomial_ring(f, r.nvars());
  auto all = poly.std_monomials(d);
  std::vector<std::vector<Rational>> rows;
  for (const auto& rel : r.relations()) {
    int e = d - rel.degree();
    if (e < 0) continue;
    for (const auto& m : poly.std_monomials(e)) {
      std::vector<Rational> row(all.size());
      for (const auto& [mono, c] : rel.terms()) {
        auto it = std::find(all.begin(), all.end(), mono + m);
        row[static_cast<std::size_t>(it - all.begin())] = c;
      }
      rows.push_back(row);
    }
  }
  return static_cast<long long>(all.size()) - kk::test::dense_rank(f, rows);
}

}  // namespace

TEST_CASE("parse and format round trip") {
  Field q = Field::rationals();
  auto names = kk::ca::default_variable_names(4);
  Polynomial p = kk::ca::parse_polynomial(" 3*x1^2*x2 - x3 * x4 + 1/2*x2^3", names, q);
  CHECK(p.size() == 3);
  std::string s = kk::ca::format_polynomial(p, names);
  CHECK(kk::ca::parse_polynomial(s, names, q) == p);
  CHECK(kk::ca::format_polynomial(kk::ca::parse_polynomial("x1*x1 - x1^2", names, q), names) == "0");
  CHECK_THROWS_AS(kk::ca::parse_polynomial("x1 + + x2", names, q), kk::ca::ParseError);
  CHECK_THROWS_AS(kk::ca::parse_polynomial("x9", names, q), kk::ca::ParseError);
  CHECK_THROWS_AS(kk::ca::parse_polynomial("", names, q), kk::ca::ParseError);
  try {
    kk::ca::parse_polynomial("x1*x2 + y", names, q);
  } catch (const kk::ca::ParseError& e) {
    CHECK(e.column() == 8);
  }
  Polynomial mod7 = kk::ca::parse_polynomial("x1^2 - 1/2*x2^2", names, Field::prime(7));
  CHECK(mod7.coefficient(MultiDegree{0, 2, 0, 0}) == Rational(3));
}

TEST_CASE("buchberger basic cases") {
  Field q = Field::rationals();
  auto names = kk::ca::default_variable_names(3);
  auto gb = kk::ca::buchberger(q, {kk::ca::parse_polynomial("x1*x2", names, q), kk::ca::parse_polynomial("x2*x3", names, q)});
  CHECK(gb.basis.size() == 2);
  CHECK(kk::ca::buchberger(q, {}).basis.empty());
  CHECK_THROWS_AS(kk::ca::buchberger(q, {kk::ca::parse_polynomial("x1^2 + x2", names, q)}), std::invalid_argument);
}

TEST_CASE("std_monomials and hilbert coefficients") {
  auto r = kk::test::ring({"x"}, {"x^2"});
  CHECK(r.std_monomials(1).size() == 1);
  CHECK(r.std_monomials(2).empty());
  CHECK(r.hilbert_coeffs(3) == std::vector<long long>{1, 1, 0, 0});

  auto p3 = kk::test::path_ring(3);
  auto s2 = p3.std_monomials(2);
  CHECK(s2.size() == 4);
  for (const auto& m : {MultiDegree{2, 0, 0}, MultiDegree{1, 0, 1}, MultiDegree{0, 2, 0}, MultiDegree{0, 0, 2}}) {
    CHECK(std::find(s2.begin(), s2.end(), m) != s2.end());
  }
  CHECK(p3.hilbert_coeffs(2) == std::vector<long long>{1, 3, 4});

  auto poly = kk::test::poly_ring(3);
  for (int d = 0; d <= 5; ++d) CHECK(static_cast<long long>(poly.std_monomials(d).size()) == binom(d + 2, d));

  auto ne = kk::test::isotope_63ne();
  CHECK(ne.hilbert_coeffs(2) == std::vector<long long>{1, 4, 4});
  CHECK_FALSE(ne.is_monomial());
  for (int d = 0; d <= 6; ++d) CHECK(static_cast<long long>(ne.std_monomials(d).size()) == oracle_dim(ne, d));
  auto p4 = kk::test::path_ring(4);
  for (int d = 0; d <= 5; ++d) CHECK(static_cast<long long>(p4.std_monomials(d).size()) == oracle_dim(p4, d));
}

TEST_CASE("multiply_mod and normal forms") {
  auto r = kk::test::ring({"x"}, {"x^2"});
  Field q = Field::rationals();
  Polynomial x = kk::ca::parse_polynomial("x", r.names(), q);
  CHECK(r.multiply(x, x).is_zero());

  auto ne = kk::test::isotope_63ne();
  Polynomial px = kk::ca::parse_polynomial("x", ne.names(), q);
  Polynomial pz = kk::ca::parse_polynomial("z", ne.names(), q);
  CHECK(ne.multiply(px, pz) == kk::ca::parse_polynomial("-u^2", ne.names(), q));
  Polynomial f = kk::ca::parse_polynomial("x*z + y^2 + 3*u^2", ne.names(), q);
  Polynomial one = kk::ca::parse_polynomial("1", ne.names(), q);
  CHECK(ne.multiply(one, f) == ne.normal_form(f));
  CHECK(ne.normal_form(ne.normal_form(f)) == ne.normal_form(f));
}

TEST_CASE("normal form difference lies in the ideal") {
  auto ne = kk::test::isotope_63ne();
  Field q = ne.field();
  // f - NF(f) must reduce to zero by the relations' Gröbner basis and have the
  // same coordinates as a combination of monomial multiples of relations.
  Polynomial f = kk::ca::parse_polynomial("x^2*y + x*z*u + 2*y^2*z + z^3 - u^3 + y*z*u", ne.names(), q);
  Polynomial diff = Polynomial::sub(q, f, ne.normal_form(f));
  CHECK(kk::ca::reduce_fully(q, diff, ne.groebner_basis()).is_zero());
  // membership via dense linear algebra over monomial multiples of the original relations
  auto all = QuotientRing::polynomial_ring(q, 4).std_monomials(3);
  std::vector<std::vector<Rational>> rows;
  for (const auto& rel : ne.relations()) {
    for (int i = 0; i < 4; ++i) {
      std::vector<Rational> row(all.size());
      for (const auto& [m, c] : rel.terms()) {
        auto it = std::find(all.begin(), all.end(), m + MultiDegree::unit(4, i));
        row[static_cast<std::size_t>(it - all.begin())] = c;
      }
      rows.push_back(row);
    }
  }
  int base = kk::test::dense_rank(q, rows);
  std::vector<Rational> drow(all.size());
  for (const auto& [m, c] : diff.terms()) drow[static_cast<std::size_t>(std::find(all.begin(), all.end(), m) - all.begin())] = c;
  rows.push_back(drow);
  CHECK(kk::test::dense_rank(q, rows) == base);
}

TEST_CASE("fine weights") {
  auto ne = kk::test::isotope_63ne();
  CHECK(ne.fine_weights().size() == 2);
  for (const auto& g : ne.groebner_basis()) {
    auto key = ne.fine_key(g.leading_monomial());
    for (const auto& [m, c] : g.terms()) CHECK(ne.fine_key(m) == key);
  }
  auto p = kk::test::path_ring(4);
  CHECK(p.is_squarefree_monomial());
  CHECK(p.fine_weights().size() == 4);
  CHECK(p.fine_key(MultiDegree{1, 0, 2, 0}) == kk::GradeKey{1, 0, 2, 0});
  CHECK_THROWS(kk::test::ring({"x", "y"}, {"x^2 + y"}));
  CHECK_THROWS(kk::test::ring({"x", "y"}, {"x"}));
}
