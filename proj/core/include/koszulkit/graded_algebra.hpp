#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "koszulkit/field.hpp"
#include "koszulkit/koszul.hpp"
#include "koszulkit/linalg.hpp"
#include "koszulkit/multidegree.hpp"
#include "koszulkit/quotient_ring.hpp"

namespace kk::alg {

/// A homogeneous component of the augmentation ideal: coarse grade plus an
/// optional finer key that the multiplication also respects.
struct Piece {
  GradeKey grade;
  GradeKey fine;
  int dim = 0;
  std::vector<std::string> labels;
};

/// Connected graded algebra given by its augmentation ideal m = sum of pieces
/// and structure constants m_a x m_b -> m_c. The unit is implicit.
///
/// Grades are nonnegative vectors and every piece has a nonzero grade. The
/// data is exact for every grade dominated by trusted_bound().
class GradedAlgebra {
 public:
  struct ProductBlock {
    int target = -1;
    std::vector<la::SparseVec> table;  ///< entry ia * dim_b + ib, coordinates in the target piece
  };

  GradedAlgebra() = default;
  GradedAlgebra(la::Field f, GradeKey trusted_bound) : field_(f), bound_(std::move(trusted_bound)) {}

  const la::Field& field() const noexcept { return field_; }
  int grade_length() const noexcept { return bound_.size(); }
  const GradeKey& trusted_bound() const noexcept { return bound_; }
  bool trusted(const GradeKey& grade) const { return grade.dominated_by(bound_); }

  int add_piece(Piece p);
  void set_product(int a, int b, int target, std::vector<la::SparseVec> table);

  int piece_count() const noexcept { return static_cast<int>(pieces_.size()); }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  const Piece& piece(int i) const { return pieces_.at(static_cast<std::size_t>(i)); }
  int find_piece(const GradeKey& grade, const GradeKey& fine) const;
  /// Null when the product of the two pieces is zero.
  const ProductBlock* product(int a, int b) const;

  /// Product of x in piece a and y in piece b; returns the target piece (or -1
  /// for zero) and fills out.
  int multiply(int a, const la::SparseVec& x, int b, const la::SparseVec& y, la::SparseVec& out) const;

  /// Total dimension of m in each coarse grade.
  std::map<GradeKey, long long> dims_by_grade() const;
  /// For single-coordinate grades: dims[d] for d = 0..max_degree (dims[0] = 1).
  std::vector<long long> hilbert(int max_degree) const;

  /// Checks (xy)z = x(yz) on all basis triples whose total grade is trusted.
  bool check_associativity() const;

 private:
  la::Field field_ = la::Field::rationals();
  GradeKey bound_;
  std::vector<Piece> pieces_;
  std::map<std::pair<GradeKey, GradeKey>, int> index_;
  std::map<std::pair<int, int>, ProductBlock> products_;
};

/// R in internal degrees 1..max_degree, pieces split by the ring's fine key.
GradedAlgebra from_ring(const ca::QuotientRing& r, int max_degree);

/// H with grades (i, j), pieces = the nonzero fine slices other than (0,0).
GradedAlgebra from_homology(const kz::KoszulHomology& h);

/// The trusted strand degree of H' given the bounds H was computed with.
int strand_trusted_degree(const kz::KoszulHomology& h);

/// H' = strand totalization: grade j - i, fine key (i, j, slice key).
/// Throws std::domain_error if some H_{ij} with (i,j) != (0,0) has j - i <= 0.
GradedAlgebra strand_totalize(const kz::KoszulHomology& h);

/// Merges pieces of equal coarse grade, dropping fine keys.
GradedAlgebra forget_fine(const GradedAlgebra& a);

}  // namespace kk::alg
