#pragma once

#include <cstdint>
#include <vector>

#include "dense_oracle.hpp"
#include "koszulkit/field.hpp"

namespace kk::test {

// Betti numbers of a squarefree monomial ring over the polynomial ring via
// Hochster's formula: beta_{i,u} = dim reduced H_{|u|-i-1} of the
// Stanley-Reisner complex restricted to supp(u). Faces are the subsets not
// containing any of the given minimal nonfaces.
inline int hochster_betti(const std::vector<std::uint32_t>& nonfaces, std::uint32_t u, int i) {
  la::Field q = la::Field::rationals();
  auto is_face = [&](std::uint32_t s) {
    for (auto g : nonfaces) {
      if ((s & g) == g) return false;
    }
    return true;
  };
  std::vector<std::vector<std::uint32_t>> faces_by_dim(34);
  // faces of dimension d have d+1 vertices; the empty face has dimension -1 (index 0)
  for (std::uint32_t s = u;; s = (s - 1) & u) {
    if (is_face(s)) faces_by_dim[static_cast<std::size_t>(__builtin_popcount(s))].push_back(s);
    if (s == 0) break;
  }
  int size = __builtin_popcount(u);
  int d = size - i - 1;  // reduced homology degree
  if (d < -1) return 0;
  auto boundary_rank = [&](int k) {  // boundary from faces with k vertices to k-1 vertices
    if (k <= 0 || k > 33) return 0;
    const auto& src = faces_by_dim[static_cast<std::size_t>(k)];
    const auto& dst = faces_by_dim[static_cast<std::size_t>(k - 1)];
    if (src.empty() || dst.empty()) return 0;
    std::vector<std::vector<la::Rational>> m(dst.size(), std::vector<la::Rational>(src.size()));
    for (std::size_t c = 0; c < src.size(); ++c) {
      int pos = 0;
      for (int b = 0; b < 32; ++b) {
        if (!(src[c] & (1u << b))) continue;
        std::uint32_t face = src[c] & ~(1u << b);
        for (std::size_t r = 0; r < dst.size(); ++r) {
          if (dst[r] == face) m[r][c] = la::Rational(pos % 2 == 0 ? 1 : -1);
        }
        ++pos;
      }
    }
    return dense_rank(q, m);
  };
  int k = d + 1;  // number of vertices of faces in degree d
  int chains = static_cast<int>(faces_by_dim[static_cast<std::size_t>(k)].size());
  return chains - boundary_rank(k) - boundary_rank(k + 1);
}

}  // namespace kk::test
