#include "koszulkit/groebner.hpp"

#include <algorithm>
#include <stdexcept>

namespace kk::ca {

using la::Field;
using la::Rational;

Polynomial reduce_fully(const Field& f, const Polynomial& p, const std::vector<Polynomial>& basis) {
  Polynomial rest = p;
  Polynomial out(p.nvars());
  while (!rest.is_zero()) {
    const MultiDegree m = rest.leading_monomial();
    const Rational c = rest.leading_coefficient();
    const Polynomial* divisor = nullptr;
    for (const auto& g : basis) {
      if (g.leading_monomial().divides(m)) {
        divisor = &g;
        break;
      }
    }
    if (divisor == nullptr) {
      out.add_term(f, m, c);
      rest.add_term(f, m, f.neg(c));
      continue;
    }
    rest = Polynomial::sub(f, rest, divisor->times_monomial(f, m - divisor->leading_monomial(), c));
  }
  return out;
}

namespace {

struct Pair {
  int i;
  int j;
  MultiDegree lcm;
};

Polynomial s_polynomial(const Field& f, const Polynomial& a, const Polynomial& b, const MultiDegree& l) {
  Polynomial pa = a.times_monomial(f, l - a.leading_monomial(), Rational(1));
  Polynomial pb = b.times_monomial(f, l - b.leading_monomial(), Rational(1));
  return Polynomial::sub(f, pa, pb);
}

std::vector<Polynomial> interreduce(const Field& f, std::vector<Polynomial> g) {
  // Drop elements whose leading monomial is divisible by another's.
  std::sort(g.begin(), g.end(), [](const Polynomial& a, const Polynomial& b) {
    return grevlex_greater(b.leading_monomial(), a.leading_monomial());
  });
  std::vector<Polynomial> minimal;
  for (const auto& p : g) {
    bool redundant = false;
    for (const auto& q : minimal) {
      if (q.leading_monomial().divides(p.leading_monomial())) redundant = true;
    }
    if (!redundant) minimal.push_back(p);
  }
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      if (k != i) others.push_back(minimal[k]);
    }
    const Polynomial& p = minimal[i];
    Polynomial tail = p;
    tail.add_term(f, p.leading_monomial(), f.neg(p.leading_coefficient()));
    Polynomial r = Polynomial::monomial(p.leading_monomial(), p.leading_coefficient());
    r = Polynomial::add(f, r, reduce_fully(f, tail, others));
    out.push_back(r.monic(f));
  }
  return out;
}

}  // namespace

GroebnerResult buchberger(const Field& f, const std::vector<Polynomial>& relations, int degree_bound) {
  std::vector<Polynomial> g;
  for (const auto& r : relations) {
    if (!r.is_homogeneous()) throw std::invalid_argument("buchberger: relation is not homogeneous");
    if (r.is_zero()) continue;
    Polynomial red = reduce_fully(f, r, g);
    if (!red.is_zero()) g.push_back(red.monic(f));
  }
  std::vector<Pair> pairs;
  auto add_pairs = [&](int j) {
    for (int i = 0; i < j; ++i) {
      const auto& a = g[static_cast<std::size_t>(i)].leading_monomial();
      const auto& b = g[static_cast<std::size_t>(j)].leading_monomial();
      if (MultiDegree::coprime(a, b)) continue;
      pairs.push_back({i, j, MultiDegree::lcm(a, b)});
    }
  };
  for (int j = 0; j < static_cast<int>(g.size()); ++j) add_pairs(j);

  while (!pairs.empty()) {
    // Lowest-degree pair first; ties broken by insertion order for determinism.
    auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      return a.lcm.total() < b.lcm.total();
    });
    Pair pr = *best;
    pairs.erase(best);
    if (degree_bound >= 0 && pr.lcm.total() > degree_bound) continue;
    Polynomial s = s_polynomial(f, g[static_cast<std::size_t>(pr.i)], g[static_cast<std::size_t>(pr.j)], pr.lcm);
    Polynomial r = reduce_fully(f, s, g);
    if (r.is_zero()) continue;
    g.push_back(r.monic(f));
    add_pairs(static_cast<int>(g.size()) - 1);
  }

  GroebnerResult out;
  if (!g.empty()) out.basis = interreduce(f, g);
  out.trusted_degree = degree_bound;
  return out;
}

}  // namespace kk::ca
