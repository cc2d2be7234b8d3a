#pragma once

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "koszulkit/field.hpp"
#include "koszulkit/rational.hpp"

namespace kk::la {

struct Entry {
  int index;
  Rational value;

  friend bool operator==(const Entry& a, const Entry& b) { return a.index == b.index && a.value == b.value; }
};

/// Sparse vector: strictly increasing indices, no stored zeros.
using SparseVec = std::vector<Entry>;

/// y + c*x.
SparseVec axpy(const Field& f, const SparseVec& y, const Rational& c, const SparseVec& x);
SparseVec scaled(const Field& f, const SparseVec& x, const Rational& c);
Rational value_at(const SparseVec& v, int index);
/// Builds a canonical sparse vector from unsorted (index, value) pairs, summing duplicates.
SparseVec collect(const Field& f, std::vector<Entry> raw);
SparseVec from_dense(const Field& f, const std::vector<Rational>& dense);
std::vector<Rational> to_dense(const SparseVec& v, int size);

/// Sparse matrix stored by columns.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), columns_(static_cast<std::size_t>(cols)) {}

  static Matrix identity(const Field& f, int n);
  static Matrix from_dense(const Field& f, const std::vector<std::vector<Rational>>& rows);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  const SparseVec& column(int c) const { return columns_.at(static_cast<std::size_t>(c)); }
  void set_column(int c, SparseVec v);
  Rational at(int r, int c) const;
  void set(int r, int c, const Rational& v);

  std::vector<SparseVec> row_vectors() const;
  std::vector<std::vector<Rational>> to_dense() const;
  std::size_t nonzeros() const;

  SparseVec apply(const Field& f, const SparseVec& x) const;
  Matrix transpose() const;
  static Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SparseVec> columns_;
};

struct RankKernel {
  int rank = 0;
  std::vector<SparseVec> kernel;  ///< basis of the null space, one vector per free column
};

/// Rank and null-space basis. Sparse Gauss-Jordan elimination; the pivot is
/// taken in the column with fewest nonzeros among remaining rows (ties: lowest
/// column), from the sparsest row in that column (ties: lowest row).
RankKernel rank_kernel(const Field& f, const Matrix& m);

int rank(const Field& f, const Matrix& m);
/// Rank of the span of the given rows, each a vector in F^ncols.
int rank_of_rows(const Field& f, std::vector<SparseVec> rows, int ncols);

/// x with m*x = b, or nullopt when b is outside the column space.
/// Throws std::invalid_argument on a length mismatch.
std::optional<SparseVec> solve_in_image(const Field& f, const Matrix& m, const SparseVec& b, int b_length);

/// P with P^T g P diagonal. g must be symmetric; characteristic 2 is rejected.
Matrix diagonalize_symmetric_form(const Field& f, const Matrix& g);

/// For a nondegenerate alternating form g (g^T = -g, zero diagonal), returns P
/// whose columns are ordered (e_1..e_m, f_1..f_m) with e_a^T g f_b = delta_ab
/// and every other pairing zero.
Matrix symplectic_basis(const Field& f, const Matrix& g);

std::optional<Matrix> inverse(const Field& f, const Matrix& m);

/// Incrementally built echelon basis of a subspace. Each stored pivot vector
/// has coefficient 1 at its lowest index and carries a caller-supplied tag.
class EchelonBasis {
 public:
  explicit EchelonBasis(Field f) : field_(f) {}

  /// Reduces v; stores the normalized remainder when it is nonzero.
  /// Returns the new pivot id, or -1 if v was already in the span.
  int insert(const SparseVec& v, int tag);

  /// Remainder of v after reduction; optionally reports (pivot id, coefficient)
  /// pairs with v = sum coeff * pivot + remainder.
  SparseVec reduce(const SparseVec& v, std::vector<std::pair<int, Rational>>* used = nullptr) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  int size() const noexcept { return static_cast<int>(pivots_.size()); }
  const SparseVec& pivot(int id) const { return pivots_.at(static_cast<std::size_t>(id)); }
  int tag(int id) const { return tags_.at(static_cast<std::size_t>(id)); }
  const Field& field() const noexcept { return field_; }

 private:
  Field field_;
  std::vector<SparseVec> pivots_;
  std::vector<int> tags_;
  std::unordered_map<int, int> lead_to_pivot_;
};

}  // namespace kk::la
