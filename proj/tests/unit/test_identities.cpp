#include "doctest.h"
#include "koszulkit/identities.hpp"
#include "rings.hpp"

using kk::id::Report;

namespace {

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long b = 1;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

std::string detail(const Report& r, const std::string& key) {
  for (const auto& [k, v] : r.details) {
    if (k == key) return v;
  }
  return "";
}

}  // namespace

TEST_CASE("P^R of a polynomial ring is (1+st)^n") {
  for (int n = 1; n <= 3; ++n) {
    auto p = kk::id::poincare_R(kk::test::poly_ring(n), 4, 4, 8);
    for (int a = 0; a <= 4; ++a) {
      for (int b = 0; b <= 4; ++b) CHECK(p.coefficient(a, b) == (a == b ? binom(n, a) : 0));
    }
  }
}

TEST_CASE("P^R when the square of the maximal ideal vanishes") {
  // Tor^R_p(k,k) has dimension n^p, concentrated in internal degree p.
  auto r = kk::test::ring({"x", "y"}, {"x^2", "x*y", "y^2"});
  auto p = kk::id::poincare_R(r, 5, 5, 10);
  long long pw = 1;
  for (int a = 0; a <= 5; ++a, pw *= 2) {
    CHECK(p.coefficient(a, a) == pw);
    for (int b = a + 1; b <= 5; ++b) CHECK(p.coefficient(a, b) == 0);
  }
  auto x3 = kk::id::poincare_R(kk::test::ring({"x"}, {"x^3"}), 4, 8, 12);
  // k[x]/(x^3): one class in each (2m, 3m) and (2m+1, 3m+1).
  CHECK(x3.coefficient(1, 1) == 1);
  CHECK(x3.coefficient(2, 3) == 1);
  CHECK(x3.coefficient(3, 4) == 1);
  CHECK(x3.coefficient(4, 6) == 1);
  CHECK(x3.coefficient(2, 2) == 0);
}

TEST_CASE("unconditional identities hold on the test rings") {
  std::vector<kk::ca::QuotientRing> rings = {
      kk::test::poly_ring(2),
      kk::test::path_ring(4),
      kk::test::cycle_ring(5),
      kk::test::ring({"x"}, {"x^3"}),
      kk::test::ring({"x", "y"}, {"x^2", "y^2"}),
      kk::test::ring({"x", "y", "z"}, {"x^2", "x*y", "z^2"}),
      kk::test::ring({"x", "y", "z"}, {"x*y - z^2", "x^3"}),
  };
  for (std::size_t k = 0; k < rings.size(); ++k) {
    CAPTURE(k);
    const auto& r = rings[k];
    CHECK(kk::id::check_poincare_factorization(r, 6).passed());
    CHECK(kk::id::check_hilbert_identity(r, 6).passed());
    CHECK(kk::id::check_low_degree_betti(r, 6).passed());
    CHECK(kk::id::check_tor_over_H(kk::id::full_homology(r, 6), r.nvars(), 6).passed());
    auto qf = kk::id::check_quasi_formal(r, 6);
    CHECK(qf.passed());
    CHECK(kk::id::check_strand_equivalences(r, 6).passed());
    CHECK(kk::id::check_golod(r, 6).passed());
  }
}

TEST_CASE("Koszul verdicts agree between R and K") {
  auto a = kk::id::check_poincare_factorization(kk::test::ring({"x"}, {"x^3"}), 6);
  CHECK(a.verdict == "BOTH-NOT-KOSZUL");
  auto b = kk::id::check_poincare_factorization(kk::test::path_ring(3), 6);
  CHECK(b.verdict == "BOTH-KOSZUL-UP-TO-BOUND");
  CHECK(detail(b, "R") == "KOSZUL-UP-TO-BOUND");
}

TEST_CASE("Golod verdicts") {
  CHECK(kk::id::check_golod(kk::test::ring({"x", "y"}, {"x^2", "x*y", "y^2"}), 6).verdict == "GOLOD-UP-TO-BOUND");
  CHECK(kk::id::check_golod(kk::test::ring({"x"}, {"x^3"}), 6).verdict == "GOLOD-UP-TO-BOUND");
  CHECK(kk::id::check_golod(kk::test::path_ring(3), 6).verdict == "GOLOD-UP-TO-BOUND");
  auto ci = kk::id::check_golod(kk::test::ring({"x", "y"}, {"x^2", "y^2"}), 6);
  CHECK(ci.verdict == "NOT-GOLOD");
  CHECK(!detail(ci, "deficit").empty());
}

TEST_CASE("strand-Koszulness and its equivalents") {
  CHECK(kk::id::check_strand_equivalences(kk::test::path_ring(4), 6).verdict == "ALL-EQUIVALENT-TRUE");
  CHECK(kk::id::check_strand_equivalences(kk::test::ring({"x", "y"}, {"x^2", "y^2"}), 6).verdict == "ALL-EQUIVALENT-TRUE");
  auto cubic = kk::id::check_strand_equivalences(kk::test::ring({"x"}, {"x^3"}), 6);
  CHECK(cubic.verdict == "ALL-EQUIVALENT-FALSE");
  CHECK(detail(cubic, "H strand-Koszul") == "false");
}

TEST_CASE("63ne: Koszul but neither strand-Koszul, quasi-formal nor Golod") {
  auto r = kk::test::isotope_63ne();
  auto b = kk::id::check_strand_equivalences(r, 8);
  CHECK(b.passed());
  CHECK(b.verdict == "ALL-EQUIVALENT-FALSE");
  auto q = kk::id::check_quasi_formal(r, 8);
  CHECK(q.passed());
  CHECK(q.verdict == "NOT-QUASI-FORMAL");
  CHECK(detail(q, "quasi-formal witness").find("s^7 t^8: 0 vs 1") != std::string::npos);
  CHECK(kk::id::check_quasi_formal(r, 7).verdict == "QUASI-FORMAL-UP-TO-BOUND");
  auto g = kk::id::check_golod(r, 6);
  CHECK(g.verdict == "NOT-GOLOD");
}
