#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "koszulkit/field.hpp"
#include "koszulkit/multidegree.hpp"
#include "koszulkit/rational.hpp"

namespace kk::ca {

struct GrevlexDescending {
  bool operator()(const MultiDegree& a, const MultiDegree& b) const { return grevlex_greater(a, b); }
};

/// Commutative polynomial in n variables. Terms are kept in descending
/// grevlex order, so the first term is the leading term.
class Polynomial {
 public:
  using Terms = std::map<MultiDegree, la::Rational, GrevlexDescending>;

  Polynomial() = default;
  explicit Polynomial(int n) : n_(n) {}
  static Polynomial monomial(const MultiDegree& m, const la::Rational& c = la::Rational(1));

  int nvars() const noexcept { return n_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  const MultiDegree& leading_monomial() const;
  const la::Rational& leading_coefficient() const;
  la::Rational coefficient(const MultiDegree& m) const;

  /// Adds c*m, dropping the term if it cancels.
  void add_term(const la::Field& f, const MultiDegree& m, const la::Rational& c);

  bool is_homogeneous() const;
  /// Total degree of a homogeneous polynomial; -1 for zero.
  int degree() const;

  Polynomial scaled(const la::Field& f, const la::Rational& c) const;
  Polynomial times_monomial(const la::Field& f, const MultiDegree& m, const la::Rational& c) const;
  Polynomial monic(const la::Field& f) const;

  static Polynomial add(const la::Field& f, const Polynomial& a, const Polynomial& b);
  static Polynomial sub(const la::Field& f, const Polynomial& a, const Polynomial& b);
  static Polynomial mul(const la::Field& f, const Polynomial& a, const Polynomial& b);

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  int n_ = 0;
  Terms terms_;
};

/// Thrown by parse_polynomial; column() is the 0-based offset of the problem.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : std::runtime_error(what + " at column " + std::to_string(column)), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// Grammar (whitespace-insensitive):
///   poly   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := number | var ['^' digits]
///   number := digits ['/' digits]
///   var    := one of the supplied names
/// Coefficients are mapped into the field.
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names, const la::Field& f);

/// Inverse of parse_polynomial: "3*x1^2*x2 - x3*x4", "0" for zero.
std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names);
std::string format_monomial(const MultiDegree& m, const std::vector<std::string>& names);

/// x1..xn.
std::vector<std::string> default_variable_names(int n);

}  // namespace kk::ca
