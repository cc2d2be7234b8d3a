#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "dense_oracle.hpp"
#include "koszulkit/field.hpp"
#include "koszulkit/quotient_ring.hpp"

namespace kk::test {

// A connected graded algebra in degrees 1..D given by dense multiplication.
struct DenseAlgebra {
  la::Field field = la::Field::rationals();
  std::vector<int> dims;  // dims[d], d = 0..D; dims[0] ignored
  std::function<std::vector<la::Rational>(int, int, int, int)> mult;  // (d1, i1, d2, i2) -> coords in degree d1+d2
  int top() const { return static_cast<int>(dims.size()) - 1; }
};

inline DenseAlgebra truncated_polynomial(int e, int D) {
  DenseAlgebra a;
  a.dims.assign(static_cast<std::size_t>(D + 1), 0);
  for (int d = 1; d <= D && d < e; ++d) a.dims[static_cast<std::size_t>(d)] = 1;
  a.mult = [e](int d1, int, int d2, int) {
    return std::vector<la::Rational>{la::Rational(d1 + d2 < e ? 1 : 0)};
  };
  return a;
}

// Exterior algebra on c degree-one generators; basis of degree d = subsets of size d in increasing bitmask order.
inline DenseAlgebra exterior(int c, int D) {
  std::vector<std::vector<unsigned>> subsets(static_cast<std::size_t>(D + 1));
  for (unsigned m = 0; m < (1u << c); ++m) {
    int d = __builtin_popcount(m);
    if (d >= 1 && d <= D) subsets[static_cast<std::size_t>(d)].push_back(m);
  }
  DenseAlgebra a;
  a.dims.assign(static_cast<std::size_t>(D + 1), 0);
  for (int d = 1; d <= D; ++d) a.dims[static_cast<std::size_t>(d)] = static_cast<int>(subsets[static_cast<std::size_t>(d)].size());
  a.mult = [subsets](int d1, int i1, int d2, int i2) {
    std::vector<la::Rational> out(subsets[static_cast<std::size_t>(d1 + d2)].size());
    unsigned x = subsets[static_cast<std::size_t>(d1)][static_cast<std::size_t>(i1)];
    unsigned y = subsets[static_cast<std::size_t>(d2)][static_cast<std::size_t>(i2)];
    if (x & y) return out;
    int swaps = 0;
    for (unsigned b = y; b; b &= b - 1) swaps += __builtin_popcount(x >> __builtin_ctz(b));
    const auto& tgt = subsets[static_cast<std::size_t>(d1 + d2)];
    for (std::size_t k = 0; k < tgt.size(); ++k) {
      if (tgt[k] == (x | y)) out[k] = la::Rational(swaps % 2 ? -1 : 1);
    }
    return out;
  };
  return a;
}

// Multiplication of a commutative quotient ring via polynomial normal forms.
inline DenseAlgebra from_normal_forms(const ca::QuotientRing& r, int D) {
  DenseAlgebra a;
  a.field = r.field();
  a.dims.assign(static_cast<std::size_t>(D + 1), 0);
  for (int d = 1; d <= D; ++d) a.dims[static_cast<std::size_t>(d)] = static_cast<int>(r.std_monomials(d).size());
  const ca::QuotientRing* rp = &r;
  a.mult = [rp](int d1, int i1, int d2, int i2) {
    ca::Polynomial x(rp->nvars()), y(rp->nvars());
    x.add_term(rp->field(), rp->std_monomials(d1)[static_cast<std::size_t>(i1)], la::Rational(1));
    y.add_term(rp->field(), rp->std_monomials(d2)[static_cast<std::size_t>(i2)], la::Rational(1));
    ca::Polynomial z = rp->multiply(x, y);
    const auto& basis = rp->std_monomials(d1 + d2);
    std::vector<la::Rational> out(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) out[k] = z.coefficient(basis[k]);
    return out;
  };
  return a;
}

// beta_{p,q} of the whole bar complex in degree q with dense matrices.
inline long long dense_bar_betti(const DenseAlgebra& a, int p, int q) {
  if (p == 0) return q == 0 ? 1 : 0;
  // Tensor basis of B_k in degree q: (composition, coordinate tuple).
  using Basis = std::vector<std::pair<std::vector<int>, std::vector<int>>>;
  auto basis = [&](int k) {
    Basis out;
    std::vector<int> comp;
    std::function<void(int)> parts = [&](int rest) {
      if (static_cast<int>(comp.size()) == k) {
        if (rest != 0) return;
        std::vector<int> idx(static_cast<std::size_t>(k), 0);
        for (;;) {
          out.push_back({comp, idx});
          int t = k - 1;
          while (t >= 0 && ++idx[static_cast<std::size_t>(t)] == a.dims[static_cast<std::size_t>(comp[static_cast<std::size_t>(t)])]) idx[static_cast<std::size_t>(t--)] = 0;
          if (t < 0) break;
        }
        return;
      }
      for (int d = 1; d <= rest && d <= a.top(); ++d) {
        if (a.dims[static_cast<std::size_t>(d)] == 0) continue;
        comp.push_back(d);
        parts(rest - d);
        comp.pop_back();
      }
    };
    if (k > 0) parts(q);
    return out;
  };
  auto matrix = [&](int k) {  // d: B_k -> B_{k-1}
    Basis src = basis(k), dst = basis(k - 1);
    std::map<std::pair<std::vector<int>, std::vector<int>>, int> pos;
    for (std::size_t r = 0; r < dst.size(); ++r) pos[dst[r]] = static_cast<int>(r);
    std::vector<std::vector<la::Rational>> m(dst.size(), std::vector<la::Rational>(src.size()));
    for (std::size_t c = 0; c < src.size(); ++c) {
      const auto& [comp, idx] = src[c];
      for (int t = 0; t + 1 < k; ++t) {
        int d1 = comp[static_cast<std::size_t>(t)], d2 = comp[static_cast<std::size_t>(t) + 1];
        if (d1 + d2 > a.top()) continue;
        auto prod = a.mult(d1, idx[static_cast<std::size_t>(t)], d2, idx[static_cast<std::size_t>(t) + 1]);
        for (std::size_t e = 0; e < prod.size(); ++e) {
          if (prod[e].is_zero()) continue;
          auto nc = comp;
          auto ni = idx;
          nc.erase(nc.begin() + t + 1);
          ni.erase(ni.begin() + t + 1);
          nc[static_cast<std::size_t>(t)] = d1 + d2;
          ni[static_cast<std::size_t>(t)] = static_cast<int>(e);
          auto& cell = m[static_cast<std::size_t>(pos.at({nc, ni}))][c];
          la::Rational v = (t + 1) % 2 ? a.field.neg(prod[e]) : prod[e];
          cell = a.field.add(cell, v);
        }
      }
    }
    return m;
  };
  long long dim = static_cast<long long>(basis(p).size());
  long long r_out = p >= 2 ? dense_rank(a.field, matrix(p)) : 0;
  long long r_in = dense_rank(a.field, matrix(p + 1));
  return dim - r_out - r_in;
}

}  // namespace kk::test
