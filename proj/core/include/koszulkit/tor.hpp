#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "koszulkit/graded_algebra.hpp"
#include "koszulkit/koszul.hpp"
#include "koszulkit/linalg.hpp"

namespace kk::tor {

/// Region of bar degrees p and grades G: p <= p_max, G <= grade_max
/// componentwise, and p + (sum of G) <= total_max when total_max >= 0.
struct BarBounds {
  int p_max = 0;
  GradeKey grade_max;
  int total_max = -1;

  bool contains(int p, const GradeKey& g) const;
};

/// dim Tor^A_p(k,k)_G inside a region. Only nonzero entries are stored.
struct BettiTable {
  BarBounds bounds;
  std::map<std::pair<int, GradeKey>, long long> entries;
  /// Same numbers refined by the fine key of the algebra.
  std::map<std::tuple<int, GradeKey, GradeKey>, long long> fine_entries;

  /// Throws std::out_of_range outside the region.
  long long at(int p, const GradeKey& g) const;
  long long at(int p, int q) const { return at(p, GradeKey{q}); }
  long long at(int p, int i, int j) const { return at(p, GradeKey{i, j}); }
  bool in_region(int p, const GradeKey& g) const { return bounds.contains(p, g); }
};

/// Reduced bar complex sum of m_{a_1} x ... x m_{a_p}, split into blocks of
/// equal (p, grade, fine key). d = sum_{t=1}^{p-1} (-1)^t (multiply t, t+1).
class BarComplex {
 public:
  struct BlockId {
    int p;
    GradeKey grade;
    GradeKey fine;
    friend bool operator<(const BlockId& a, const BlockId& b) {
      return std::tie(a.p, a.grade, a.fine) < std::tie(b.p, b.grade, b.fine);
    }
  };

  /// Builds the blocks needed for Betti numbers in the region (bar degrees up
  /// to p_max + 1). Throws std::out_of_range when the region leaves the
  /// algebra's trusted bound.
  BarComplex(const alg::GradedAlgebra& a, BarBounds bounds);

  const BarBounds& bounds() const noexcept { return bounds_; }
  std::vector<BlockId> blocks() const;
  long long dim(const BlockId& b) const;
  /// Matrix of d: B_p -> B_{p-1} on one block (p >= 2).
  la::Matrix differential(const BlockId& b) const;

  BettiTable betti(int jobs = 1) const;
  /// d o d = 0 on every block with p >= 3; returns the first failing block.
  std::optional<BlockId> check_d_squared() const;

 private:
  struct Block {
    int p = 0;
    std::vector<int> flat;  ///< tensor words of length p, concatenated
    std::vector<long long> offsets;
    std::unordered_map<std::string, int> seq_index;  ///< packed word -> position in seqs
    long long dim = 0;
  };
  struct BlockIdHash {
    std::size_t operator()(const BlockId& b) const noexcept { return b.grade.hash() * 31 + b.fine.hash() * 7 + static_cast<std::size_t>(b.p); }
  };
  struct BlockIdEq {
    bool operator()(const BlockId& x, const BlockId& y) const noexcept { return x.p == y.p && x.grade == y.grade && x.fine == y.fine; }
  };
  void enumerate(std::vector<int>& seq, const GradeKey& grade, const GradeKey& fine,
                 std::unordered_map<BlockId, Block*, BlockIdHash, BlockIdEq>& lookup);
  long long position(const Block& blk, const std::vector<int>& seq, const std::vector<int>& coords) const;

  std::shared_ptr<const alg::GradedAlgebra> a_;
  BarBounds bounds_;
  std::vector<int> by_weight_;  ///< pieces by ascending grade sum
  std::vector<int> weight_;
  std::map<BlockId, Block> blocks_;
};

BettiTable bar_betti(const alg::GradedAlgebra& a, const BarBounds& bounds, int jobs = 1);

/// Single-graded convenience: p <= p_max, q <= q_max.
BettiTable bar_betti(const alg::GradedAlgebra& a, int p_max, int q_max, int jobs = 1);

/// Trigraded Betti numbers of H: bar complex over H with bigraded factors,
/// p <= p_max, j <= j_max (and i <= i_max when given).
BettiTable bar_betti_trigraded(const kz::KoszulHomology& h, int p_max, int j_max, int jobs = 1, int i_max = -1);

struct KoszulVerdict {
  bool koszul = true;
  int p_max = 0;
  int q_max = 0;
  std::optional<std::pair<int, int>> witness;  ///< (p, q) with p != q and beta_{p,q} > 0
  BettiTable table;
};

/// Up-to-bound Koszul test on a singly graded algebra.
KoszulVerdict is_koszul_up_to(const alg::GradedAlgebra& a, int p_max, int q_max, int jobs = 1);
KoszulVerdict is_koszul_up_to(const ca::QuotientRing& r, int p_max, int q_max, int jobs = 1);

struct StrandVerdict {
  bool strand_koszul = true;
  int p_max = 0;
  int q_max = 0;
  std::optional<std::pair<int, int>> witness;             ///< (p, strand q)
  std::optional<std::array<int, 3>> trigraded_witness;    ///< (p, i, j) with p != j - i
  BettiTable table;                                        ///< over the strand totalization
};

/// Koszul test on the strand totalization of H; q_max must not exceed the
/// trusted strand degree. Throws std::domain_error outside positive strands.
StrandVerdict is_strand_koszul_up_to(const kz::KoszulHomology& h, int p_max, int q_max, int jobs = 1);

/// Trigraded Betti numbers recovered from the fine refinement of a strand table.
std::map<std::array<int, 3>, long long> trigraded_from_strand(const BettiTable& strand_table);

struct ShapeReport {
  bool hypothesis = true;  ///< every piece has i > 0 and j - i > 0
  bool conclusion = true;  ///< nonzero beta_{p,(i,j)} implies i >= p and j - i >= p
  std::optional<std::array<int, 2>> bad_piece;
  std::optional<std::array<int, 3>> violation;
};

/// For a bigraded algebra (grades (i, j)); the conclusion is only evaluated
/// when the hypothesis holds.
ShapeReport shape_check(const alg::GradedAlgebra& a, const BarBounds& bounds, int jobs = 1);

/// Truncated bivariate integer series in s, t. Exponents (a, b) kept when
/// a <= s_max, b <= t_max and a + b <= total_max; the region is downward
/// closed so products are exact.
class PoincareTruncation {
 public:
  PoincareTruncation() = default;
  PoincareTruncation(int s_max, int t_max, int total_max);

  int s_max() const noexcept { return s_max_; }
  int t_max() const noexcept { return t_max_; }
  int total_max() const noexcept { return total_max_; }
  bool in_range(int a, int b) const noexcept { return a >= 0 && b >= 0 && a <= s_max_ && b <= t_max_ && a + b <= total_max_; }

  long long coefficient(int a, int b) const;
  void set(int a, int b, long long v);
  void add(int a, int b, long long v);

  PoincareTruncation operator*(const PoincareTruncation& o) const;
  /// Same region, the series (1 + s t)^n.
  PoincareTruncation one_plus_st_power(int n) const;
  /// Exact division by (1 + s t)^n.
  PoincareTruncation divide_one_plus_st(int n) const;
  /// Coefficients of the specialization s = -1, t^b for b <= t_max (requires
  /// every (a, b) with a <= b to be in range).
  std::vector<long long> at_s_minus_one() const;

  /// First exponent (in (b, a) order) where the two series differ.
  std::optional<std::pair<int, int>> first_difference(const PoincareTruncation& o) const;
  bool coefficientwise_leq(const PoincareTruncation& o, std::pair<int, int>* first_strict = nullptr) const;
  friend bool operator==(const PoincareTruncation& x, const PoincareTruncation& y) { return !x.first_difference(y); }
  std::string to_string() const;

 private:
  int s_max_ = 0;
  int t_max_ = 0;
  int total_max_ = 0;
  std::vector<long long> c_;  ///< (s_max+1) x (t_max+1), zero outside the region
};

/// sum beta_{p,q} s^p t^q over a singly graded table, restricted to the series region.
PoincareTruncation poincare_from_betti(const BettiTable& t, int s_max, int t_max, int total_max);

/// P^K from P^R: division by (1 + s t)^n. Throws std::domain_error when a
/// coefficient of the quotient is negative.
PoincareTruncation poincare_K_from_R(const PoincareTruncation& p_r, int n);

}  // namespace kk::tor
