#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "koszulkit/field.hpp"
#include "koszulkit/rational.hpp"

namespace kk::nc {

/// Word in the free algebra: a sequence of generator indices.
using Word = std::vector<int>;

/// Generator degrees plus a total order on the generators.
class VariableOrder {
 public:
  VariableOrder() = default;
  /// Generators 0..k-1 with the given degrees, ordered 0 < 1 < ... < k-1.
  explicit VariableOrder(std::vector<int> degrees);
  /// ranking[g] is the position of generator g in the order (smallest first).
  VariableOrder(std::vector<int> degrees, std::vector<int> ranking);

  int size() const noexcept { return static_cast<int>(degrees_.size()); }
  int degree(int g) const { return degrees_.at(static_cast<std::size_t>(g)); }
  int rank(int g) const { return ranking_.at(static_cast<std::size_t>(g)); }
  /// Generators sorted from smallest to largest.
  const std::vector<int>& ascending() const noexcept { return ascending_; }
  int word_degree(const Word& w) const;

 private:
  std::vector<int> degrees_;
  std::vector<int> ranking_;
  std::vector<int> ascending_;
};

/// Degree first, then lexicographic in the variable order. Returns -1, 0, 1.
int deglex_compare(const Word& a, const Word& b, const VariableOrder& order);

struct DeglexLess {
  const VariableOrder* order;
  bool operator()(const Word& a, const Word& b) const { return deglex_compare(a, b, *order) < 0; }
};

class NCPolynomial {
 public:
  using Terms = std::map<Word, la::Rational>;

  NCPolynomial() = default;
  static NCPolynomial word(const Word& w, const la::Rational& c = la::Rational(1));

  bool is_zero() const noexcept { return terms_.empty(); }
  const Terms& terms() const noexcept { return terms_; }
  la::Rational coefficient(const Word& w) const;
  void add_term(const la::Field& f, const Word& w, const la::Rational& c);
  void add(const la::Field& f, const NCPolynomial& p, const la::Rational& c = la::Rational(1));

  /// Largest word under the order; throws on zero.
  const Word& leading_word(const VariableOrder& order) const;
  bool is_homogeneous(const VariableOrder& order) const;
  int degree(const VariableOrder& order) const;
  NCPolynomial monic(const la::Field& f, const VariableOrder& order) const;
  /// left * this * right.
  NCPolynomial sandwich(const la::Field& f, const Word& left, const Word& right, const la::Rational& c) const;

  friend bool operator==(const NCPolynomial& a, const NCPolynomial& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

std::string format_word(const Word& w, const std::vector<std::string>& names);
/// Terms listed from the largest word down.
std::string format_nc_polynomial(const NCPolynomial& p, const std::vector<std::string>& names, const VariableOrder& order);

/// True when `needle` occurs as a contiguous subword of `hay` at some position.
bool contains_subword(const Word& hay, const Word& needle);

/// Monic homogeneous elements with cached leading words.
class ReductionSystem {
 public:
  ReductionSystem(la::Field f, VariableOrder order) : field_(f), order_(std::move(order)) {}

  /// Adds g made monic; zero is ignored. Throws on non-homogeneous input.
  void add(const NCPolynomial& g);

  const la::Field& field() const noexcept { return field_; }
  const VariableOrder& order() const noexcept { return order_; }
  int size() const noexcept { return static_cast<int>(elements_.size()); }
  const std::vector<NCPolynomial>& elements() const noexcept { return elements_; }
  const std::vector<Word>& leading_words() const noexcept { return leads_; }

 private:
  la::Field field_;
  VariableOrder order_;
  std::vector<NCPolynomial> elements_;
  std::vector<Word> leads_;
};

/// One rewriting step: coefficient * left * G[element] * right was subtracted.
struct RewriteStep {
  Word left;
  int element;
  Word right;
  la::Rational coefficient;
};

/// Normal form: no term contains a leading word of G as a subword.
NCPolynomial reduce(const NCPolynomial& p, const ReductionSystem& g, std::vector<RewriteStep>* trace = nullptr);

/// Degree-d words (in generator degrees) avoiding every leading word,
/// enumerated in lexicographic order of the variable order.
std::vector<Word> reduced_monomials(const ReductionSystem& g, int d);
/// Number of such words per degree 0..d_max, without materializing them.
std::vector<long long> reduced_monomial_counts(const ReductionSystem& g, int d_max);

struct CertificateReport {
  bool pass = false;
  int d_max = 0;
  std::vector<long long> counts;  ///< reduced monomials per degree
  std::vector<long long> targets;
  int first_mismatch = -1;  ///< first degree with count > target, or -1
};

/// PASS iff the reduced-monomial count equals target_dims[d] for every
/// d <= d_max. Throws std::logic_error when a count falls below its target:
/// G cannot lie in the ideal, or the dimensions are wrong.
CertificateReport certify_groebner_by_dims(const ReductionSystem& g, const std::vector<long long>& target_dims, int d_max);

/// Bounded Bergman completion: adds reductions of overlap and inclusion
/// ambiguities of degree <= d_max until every such ambiguity resolves to 0.
ReductionSystem overlap_completion(const la::Field& f, const VariableOrder& order, const std::vector<NCPolynomial>& gens, int d_max);

/// Ambiguities of degree <= d_max that do not resolve to zero.
int unresolved_ambiguities(const ReductionSystem& g, int d_max);

}  // namespace kk::nc
