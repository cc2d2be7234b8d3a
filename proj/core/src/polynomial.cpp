#include "koszulkit/polynomial.hpp"

#include <cctype>

namespace kk::ca {

using la::Field;
using la::Rational;

Polynomial Polynomial::monomial(const MultiDegree& m, const Rational& c) {
  Polynomial p(m.size());
  if (!c.is_zero()) p.terms_.emplace(m, c);
  return p;
}

const MultiDegree& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw std::logic_error("Polynomial: zero has no leading monomial");
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw std::logic_error("Polynomial: zero has no leading coefficient");
  return terms_.begin()->second;
}

Rational Polynomial::coefficient(const MultiDegree& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Field& f, const MultiDegree& m, const Rational& c) {
  if (c.is_zero()) return;
  if (m.size() != n_) throw std::invalid_argument("Polynomial: variable count mismatch");
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second = f.add(it->second, c);
  if (it->second.is_zero()) terms_.erase(it);
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = terms_.begin()->first.total();
  for (const auto& [m, c] : terms_) {
    if (m.total() != d) return false;
  }
  return true;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  if (!is_homogeneous()) throw std::logic_error("Polynomial::degree: not homogeneous");
  return terms_.begin()->first.total();
}

Polynomial Polynomial::scaled(const Field& f, const Rational& c) const {
  Polynomial p(n_);
  if (c.is_zero()) return p;
  for (const auto& [m, v] : terms_) p.terms_.emplace_hint(p.terms_.end(), m, f.mul(c, v));
  return p;
}

Polynomial Polynomial::times_monomial(const Field& f, const MultiDegree& mono, const Rational& c) const {
  Polynomial p(n_);
  if (c.is_zero()) return p;
  // Multiplying by a monomial preserves the order.
  for (const auto& [m, v] : terms_) p.terms_.emplace_hint(p.terms_.end(), m + mono, f.mul(c, v));
  return p;
}

Polynomial Polynomial::monic(const Field& f) const {
  if (terms_.empty()) return *this;
  return scaled(f, f.inv(leading_coefficient()));
}

Polynomial Polynomial::add(const Field& f, const Polynomial& a, const Polynomial& b) {
  Polynomial p = a;
  p.n_ = std::max(a.n_, b.n_);
  for (const auto& [m, c] : b.terms_) p.add_term(f, m, c);
  return p;
}

Polynomial Polynomial::sub(const Field& f, const Polynomial& a, const Polynomial& b) {
  Polynomial p = a;
  p.n_ = std::max(a.n_, b.n_);
  for (const auto& [m, c] : b.terms_) p.add_term(f, m, f.neg(c));
  return p;
}

Polynomial Polynomial::mul(const Field& f, const Polynomial& a, const Polynomial& b) {
  Polynomial p(a.n_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) p.add_term(f, ma + mb, f.mul(ca, cb));
  }
  return p;
}

std::vector<std::string> default_variable_names(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& names, const Field& f)
      : text_(text), names_(names), f_(f) {}

  Polynomial run() {
    Polynomial p(static_cast<int>(names_.size()));
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      auto [m, c] = term();
      if (sign < 0) c = f_.neg(c);
      p.add_term(f_, m, c);
      first = false;
      skip_ws();
    }
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::pair<MultiDegree, Rational> term() {
    MultiDegree m(static_cast<int>(names_.size()));
    Rational c = f_.from_int(1);
    factor(m, c);
    skip_ws();
    while (!at_end() && peek() == '*') {
      ++pos_;
      skip_ws();
      factor(m, c);
      skip_ws();
    }
    return {m, c};
  }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected digits", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  void factor(MultiDegree& m, Rational& c) {
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::size_t start = pos_;
      std::string num = digits();
      skip_ws();
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip_ws();
        std::string den = digits();
        if (den.find_first_not_of('0') == std::string::npos) throw ParseError("zero denominator", start);
        num += "/" + den;
      }
      try {
        c = f_.mul(c, f_.embed(Rational::parse(num)));
      } catch (const std::domain_error& e) {
        throw ParseError(e.what(), start);
      }
      return;
    }
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    if (start == pos_) throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
    std::string_view name = text_.substr(start, pos_ - start);
    int var = -1;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) var = static_cast<int>(i);
    }
    if (var < 0) throw ParseError("unknown variable '" + std::string(name) + "'", start);
    int e = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_ws();
      std::size_t at = pos_;
      std::string d = digits();
      if (d.size() > 3) throw ParseError("exponent too large", at);
      e = std::stoi(d);
    }
    if (m[var] + e > 255) throw ParseError("exponent too large", start);
    m.set(var, m[var] + e);
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  const Field& f_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names, const Field& f) {
  if (static_cast<int>(names.size()) > kMaxVars) throw std::invalid_argument("parse_polynomial: too many variables");
  return Parser(text, names, f).run();
}

std::string format_monomial(const MultiDegree& m, const std::vector<std::string>& names) {
  std::string s;
  for (int i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names.at(static_cast<std::size_t>(i));
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational a = c;
    bool neg = a.sign() < 0;
    if (neg) a = -a;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    if (m.is_zero()) {
      s += a.to_string();
    } else if (a.is_one()) {
      s += format_monomial(m, names);
    } else {
      s += a.to_string() + "*" + format_monomial(m, names);
    }
  }
  return s;
}

}  // namespace kk::ca
