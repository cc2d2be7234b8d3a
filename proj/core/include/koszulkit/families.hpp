#pragma once

#include <map>
#include <string>
#include <vector>

#include "koszulkit/koszul.hpp"
#include "koszulkit/ncalg.hpp"
#include "koszulkit/quotient_ring.hpp"

namespace kk::fam {

/// A run of consecutive variables: p_{start,length} = e_start + ... + e_{start+length-1}.
/// Indices are 1-based.
struct Segment {
  int start = 0;
  int length = 0;

  friend bool operator==(const Segment& a, const Segment& b) { return a.start == b.start && a.length == b.length; }
};

struct PathDecomposition {
  std::vector<Segment> segments;  ///< ascending, pairwise separated by a gap

  MultiDegree reconstruct(int n) const;
};

/// Maximal runs of the support of u. Throws std::invalid_argument unless u is
/// squarefree and nonzero.
PathDecomposition complete_decomposition(const MultiDegree& u);

struct PathFormulaDim {
  int dim = 0;
  int degree = -1;  ///< homological degree when dim == 1
};

/// dim H_{*,u} for the path ideal. u = 0 gives (1, 0). Throws
/// std::invalid_argument for non-squarefree u.
PathFormulaDim path_formula_dim(const MultiDegree& u);

/// k[x1..xn]/(x1x2, ..., x_{n-1}xn); n >= 2.
ca::QuotientRing build_path_ring(int n, la::Field f = la::Field::rationals());
/// Path ideal plus xn*x1; throws std::invalid_argument for n < 3.
ca::QuotientRing build_cycle_ring(int n, la::Field f = la::Field::rationals());

/// Homology classes named as generators of the free algebra, evaluated
/// through products of cycle representatives in K.
class ClassEvaluator {
 public:
  struct Gen {
    std::string name;
    int i = 0;
    int j = 0;
    kz::KoszulElement rep;
  };

  explicit ClassEvaluator(const kz::KoszulHomology& h) : h_(&h) {}

  int add(std::string name, int i, int j, kz::KoszulElement rep);
  int add(std::string name, const kz::HomologyClass& c) { return add(std::move(name), c.i, c.j, c.representative); }

  const std::vector<Gen>& generators() const noexcept { return gens_; }
  std::vector<std::string> names() const;
  /// Strand degrees j - i.
  std::vector<int> strand_degrees() const;

  /// Bidegree of a word.
  std::pair<int, int> bidegree(const nc::Word& w) const;
  kz::KoszulElement word_cycle(const nc::Word& w) const;
  /// Coordinates of a homogeneous polynomial in H_{i,j}; empty for zero.
  la::SparseVec evaluate(const nc::NCPolynomial& p) const;
  la::SparseVec evaluate(const nc::Word& w) const { return evaluate(nc::NCPolynomial::word(w)); }

 private:
  const kz::KoszulHomology* h_;
  std::vector<Gen> gens_;
};

/// Result common to every family certification.
struct FamilyCertificate {
  std::string family;
  std::string verdict;  ///< STRAND-KOSZUL or NOT-CERTIFIED
  std::vector<std::string> generators;
  std::vector<int> generator_degrees;  ///< strand degrees
  nc::VariableOrder order;
  std::vector<nc::NCPolynomial> groebner;  ///< empty when no presentation is needed
  std::vector<std::string> groebner_types;  ///< one label per element of `groebner`
  bool g_in_ideal = true;
  std::vector<std::string> nonzero_elements;  ///< elements of G with nonzero image
  std::vector<long long> reduced_counts;
  std::vector<long long> target_dims;  ///< dim H' per strand degree
  bool counts_match = true;
  std::vector<std::string> failures;
  std::map<std::string, std::string> details;

  bool certified() const noexcept { return verdict == "STRAND-KOSZUL"; }
  std::vector<std::string> groebner_strings() const;
};

/// dim H' by strand degree 0..d_max.
std::vector<long long> strand_dims(const kz::KoszulHomology& h, int d_max);

struct CIResult {
  ca::QuotientRing ring;
  FamilyCertificate certificate;
  std::vector<kz::KoszulElement> cycles;  ///< z_h with boundary f_h
};

/// R = k[names]/(quadrics). Throws std::invalid_argument unless every
/// quadric is homogeneous of degree 2 and the Hilbert series equals
/// (1+t)^c / (1-t)^{n-c} through degree n + 2c + 2.
CIResult build_quadratic_ci(la::Field f, const std::vector<std::string>& names, const std::vector<std::string>& quadrics,
                            int jobs = 1);

struct GorensteinPairingData {
  int n = 0;
  kz::HomologyClass socle;
  std::vector<int> b;  ///< b[i] = dim H_{i,i+1}, i = 0..n
  std::map<int, la::Matrix> pairing;  ///< i -> Gram matrix of H_{i,i+1} x H_{n-i,n-i+1} -> k.socle, i <= n/2
  std::map<int, std::vector<kz::HomologyClass>> zeta;
  std::map<int, std::vector<kz::HomologyClass>> eta;  ///< keyed by n - i
  /// Middle degree with n even: "alternating" or "symmetric".
  std::string middle_form;
};

struct GorensteinResult {
  GorensteinPairingData pairing;
  FamilyCertificate certificate;
};

/// Socle degree 2 Gorenstein rings. Throws std::invalid_argument when the
/// Hilbert series is not (1, n, 1), n < 2, dim H_{n,n+2} != 1, a pairing is
/// degenerate, or the characteristic is 2 and n is even.
GorensteinResult short_gorenstein_certify(const ca::QuotientRing& r, int jobs = 1);

struct ThreeRelationResult {
  /// 1 = (1; 3,2), 2 = (1; 3,3,1), 3 = complete intersection, 4 = (1; 3,1; -,2,1).
  int table = 0;
  std::string table_name;
  /// (a, b, c) for table 4.
  std::vector<la::Rational> coefficients;
  std::string relation_case;
  std::vector<nc::Word> reduced_degree_two;
  FamilyCertificate certificate;
};

/// Defining ideal minimally generated by three quadrics, R Koszul up to
/// p <= 4, q <= 6. Throws std::invalid_argument when the hypotheses fail and
/// std::runtime_error when the homology table matches none of the four shapes.
ThreeRelationResult three_relation_certify(const ca::QuotientRing& r, int jobs = 1);

struct PathResult {
  int n = 0;
  int strand_max = 0;
  FamilyCertificate certificate;
  std::vector<long long> formula_counts;  ///< per strand degree
  int degree_two_checked = 0;
  int degree_two_mismatches = 0;
  long long mu_checked = 0;
  long long mu_mismatches = 0;
};

/// Generator index of zeta_{i,i+1} (1 <= i <= n-1) and eta_{j,j+1,j+2} (1 <= j <= n-2)
/// in the order zeta_1 < eta_1 < zeta_2 < eta_2 < ...
inline int path_zeta(int i) { return 2 * (i - 1); }
inline int path_eta(int j) { return 2 * (j - 1) + 1; }

/// The ten-type set for the path on n vertices, with type labels.
std::vector<std::pair<nc::NCPolynomial, std::string>> path_groebner_set(const la::Field& f, int n);
/// mu_{i,r} as a word; r must be >= 2 and not 1 mod 3.
nc::Word path_mu(int i, int r);
/// Multidegree of a word in the path generators.
MultiDegree path_word_multidegree(const nc::Word& w, int n);

/// Throws std::invalid_argument for n < 3.
PathResult path_certify(int n, int strand_max = 5, la::Field f = la::Field::rationals(), int jobs = 1);

}  // namespace kk::fam
