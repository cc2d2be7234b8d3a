#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "koszulkit/field.hpp"
#include "koszulkit/groebner.hpp"
#include "koszulkit/linalg.hpp"
#include "koszulkit/multidegree.hpp"
#include "koszulkit/polynomial.hpp"

namespace kk::ca {

/// R = k[X1..Xn]/J for a homogeneous ideal J generated in degrees >= 2.
///
/// Degreewise bases are the grevlex standard monomials. Caches are filled on
/// demand behind a mutex, so a shared ring can be read from several threads.
class QuotientRing {
 public:
  /// Throws std::invalid_argument for non-homogeneous relations, relations of
  /// degree < 2, or a variable-count mismatch.
  QuotientRing(la::Field f, std::vector<std::string> names, std::vector<Polynomial> relations, int degree_bound = -1);

  static QuotientRing polynomial_ring(la::Field f, int n);
  /// Relations given as strings in the variables x1..xn (or the given names).
  static QuotientRing parse(la::Field f, const std::vector<std::string>& names, const std::vector<std::string>& relations);

  int nvars() const noexcept { return n_; }
  const la::Field& field() const noexcept { return field_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<Polynomial>& relations() const noexcept { return relations_; }
  const std::vector<Polynomial>& groebner_basis() const noexcept { return gb_.basis; }
  /// -1 when the Gröbner basis is complete.
  int trusted_degree() const noexcept { return gb_.trusted_degree; }

  bool is_monomial() const noexcept { return monomial_; }
  bool is_squarefree_monomial() const noexcept { return squarefree_; }

  bool is_standard(const MultiDegree& m) const;
  /// Standard monomials of degree d in descending grevlex order.
  const std::vector<MultiDegree>& std_monomials(int d) const;
  /// Position of a standard monomial in std_monomials(|m|); -1 if m is not standard.
  int std_index(const MultiDegree& m) const;
  std::vector<long long> hilbert_coeffs(int max_degree) const;

  Polynomial normal_form(const Polynomial& p) const;
  Polynomial multiply(const Polynomial& a, const Polynomial& b) const;

  /// Normal form of the monomial m, as coordinates over std_monomials(|m|).
  la::SparseVec reduce_monomial(const MultiDegree& m) const;
  /// Converts coordinates over std_monomials(d) to a polynomial.
  Polynomial from_coordinates(int d, const la::SparseVec& v) const;

  /// Integer basis of the weight vectors w with every Gröbner basis element
  /// w-homogeneous. Always contains a vector with positive total; for a
  /// monomial ideal it is the standard basis.
  const std::vector<std::vector<int>>& fine_weights() const noexcept { return fine_weights_; }
  GradeKey fine_key(const MultiDegree& m) const;

 private:
  void check_degree(int d) const;
  void compute_fine_weights();

  la::Field field_;
  int n_;
  std::vector<std::string> names_;
  std::vector<Polynomial> relations_;
  GroebnerResult gb_;
  bool monomial_ = true;
  bool squarefree_ = true;
  std::vector<std::vector<int>> fine_weights_;

  struct Cache {
    std::mutex mutex;
    std::unordered_map<int, std::vector<MultiDegree>> std_by_degree;
    std::unordered_map<MultiDegree, int> std_index;
    std::unordered_map<MultiDegree, la::SparseVec> reduced;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

}  // namespace kk::ca
