#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "koszulkit/linalg.hpp"
#include "koszulkit/multidegree.hpp"
#include "koszulkit/quotient_ring.hpp"

namespace kk::kz {

/// x^v t^w with w a subset of {0..n-1} stored as a bitmask.
struct KoszulMonomial {
  MultiDegree v;
  std::uint32_t w = 0;

  int hom_degree() const noexcept { return __builtin_popcount(w); }
  int internal_degree() const noexcept { return v.total() + hom_degree(); }
  /// v + sum of e_i over i in w.
  MultiDegree multidegree() const;
  std::vector<int> exterior_indices() const;

  friend bool operator==(const KoszulMonomial& a, const KoszulMonomial& b) { return a.w == b.w && a.v == b.v; }
};

/// Basis order: w lexicographic as an ascending index list, then v in the
/// ring's standard-monomial order (descending grevlex).
struct KoszulOrder {
  bool operator()(const KoszulMonomial& a, const KoszulMonomial& b) const;
};

struct KoszulElement {
  std::map<KoszulMonomial, la::Rational, KoszulOrder> terms;

  bool is_zero() const noexcept { return terms.empty(); }
  void add(const la::Field& f, const KoszulMonomial& m, const la::Rational& c);
  static KoszulElement monomial(const KoszulMonomial& m, const la::Rational& c = la::Rational(1));
};

std::string format_koszul_monomial(const KoszulMonomial& m, const std::vector<std::string>& names);
std::string format_koszul_element(const KoszulElement& e, const std::vector<std::string>& names);

/// Basis of K_{i,j}: x^v t^w with x^v standard of degree j-i and |w| = i.
std::vector<KoszulMonomial> koszul_basis(const ca::QuotientRing& r, int i, int j);

KoszulElement differential(const ca::QuotientRing& r, const KoszulElement& e);
/// Product in K (exterior signs, ring parts reduced).
KoszulElement multiply(const ca::QuotientRing& r, const KoszulElement& a, const KoszulElement& b);

/// Fine grading key of a Koszul monomial: the ring's fine weights applied to
/// its multidegree. Differential and product preserve (and add) it.
GradeKey koszul_fine_key(const ca::QuotientRing& r, const KoszulMonomial& m);

struct HomologyClass {
  int i = 0;
  int j = 0;
  GradeKey key;
  KoszulElement representative;
  la::SparseVec coordinates;  ///< over the basis of H_{i,j}
};

struct HomologyOptions {
  int max_hom = 0;
  int max_int = 0;
  /// For squarefree monomial ideals, skip non-squarefree multidegrees (their
  /// homology vanishes).
  bool squarefree_shortcut = true;
  int jobs = 1;
};

/// Koszul homology H = H(K) within a bidegree box, split by fine key.
class KoszulHomology {
 public:
  struct Slice {
    int i = 0;
    int j = 0;
    GradeKey key;
    int offset = 0;  ///< position of the first class in the basis of H_{i,j}
    std::vector<KoszulMonomial> basis;
    std::map<KoszulMonomial, int, KoszulOrder> index;
    std::vector<la::SparseVec> reps;
    std::shared_ptr<la::EchelonBasis> cycles;  ///< boundaries (tag -1), then classes (tag = class index)

    int dim() const noexcept { return static_cast<int>(reps.size()); }
  };

  static KoszulHomology compute(const ca::QuotientRing& r, const HomologyOptions& opts);

  const ca::QuotientRing& ring() const noexcept { return *ring_; }
  int max_hom() const noexcept { return max_hom_; }
  int max_int() const noexcept { return max_int_; }
  bool in_bounds(int i, int j) const noexcept { return i >= 0 && j >= 0 && i <= max_hom_ && j <= max_int_; }

  int dim(int i, int j) const;
  /// dims[i][j] for the whole box.
  std::vector<std::vector<long long>> dims_table() const;

  /// Slices with nonzero homology, ordered by (i, j, key).
  const std::vector<Slice>& slices() const noexcept { return slices_; }
  const Slice* find_slice(int i, int j, const GradeKey& key) const;
  std::vector<const Slice*> slices_at(int i, int j) const;

  HomologyClass basis_class(int i, int j, int index) const;
  std::vector<HomologyClass> basis(int i, int j) const;

  /// Coordinates of a cycle in the basis of H_{i,j}. Throws std::invalid_argument
  /// if the element is not a cycle of that bidegree, std::out_of_range outside
  /// the bounds.
  la::SparseVec coordinates(const KoszulElement& cycle, int i, int j) const;

  /// Coordinates of h1*h2 in H_{i1+i2, j1+j2}; std::out_of_range outside the bounds.
  la::SparseVec product(const HomologyClass& a, const HomologyClass& b) const;

  /// Product of basis class a (index ia in slice sa) and b, as coordinates in
  /// slice `target` (which must have key sa.key + sb.key).
  la::SparseVec slice_product(const Slice& sa, int ia, const Slice& sb, int ib, const Slice& target) const;

  bool shortcut_used() const noexcept { return shortcut_; }

 private:
  std::shared_ptr<const ca::QuotientRing> ring_;
  int max_hom_ = 0;
  int max_int_ = 0;
  bool shortcut_ = false;
  std::vector<Slice> slices_;
  std::map<std::tuple<int, int, GradeKey>, int> slice_index_;
  std::map<std::pair<int, int>, int> dims_;
};

struct MultigradedHomology {
  MultiDegree u;
  std::vector<int> dims;  ///< dims[i] = dim H_{i,u}, i = 0..n
  std::vector<std::vector<KoszulElement>> bases;
};

/// H_{i,u} for a monomial ideal. Throws std::invalid_argument for a
/// non-monomial ring.
MultigradedHomology multigraded_homology(const ca::QuotientRing& r, const MultiDegree& u, bool squarefree_shortcut = true);

}  // namespace kk::kz
