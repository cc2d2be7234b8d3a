#pragma once

#include <cstdint>
#include <string>

#include "koszulkit/rational.hpp"

namespace kk::la {

/// Ground field: the rationals, or a prime field GF(p) with p < 2^31.
///
/// Prime-field elements are carried as small integer Rationals in [0, p), so
/// every module can pass scalars around as Rational regardless of the field.
/// All arithmetic goes through the Field so that reduction mod p happens in
/// one place.
class Field {
 public:
  enum class Kind { Rationals, Prime };

  static Field rationals() { return Field(Kind::Rationals, 0); }
  /// Throws std::invalid_argument unless p is a prime below 2^31.
  static Field prime(std::uint32_t p);

  Kind kind() const noexcept { return kind_; }
  bool is_rationals() const noexcept { return kind_ == Kind::Rationals; }
  /// 0 for the rationals.
  std::uint32_t characteristic() const noexcept { return p_; }
  std::string name() const;

  /// Image of a rational number in this field. Throws std::domain_error when
  /// the denominator vanishes mod p.
  Rational embed(const Rational& q) const;
  Rational from_int(std::int64_t v) const { return embed(Rational(v)); }

  Rational add(const Rational& a, const Rational& b) const;
  Rational sub(const Rational& a, const Rational& b) const;
  Rational mul(const Rational& a, const Rational& b) const;
  Rational neg(const Rational& a) const;
  Rational inv(const Rational& a) const;
  Rational div(const Rational& a, const Rational& b) const { return mul(a, inv(b)); }

  /// a - c*b, the inner step of every elimination.
  Rational sub_mul(const Rational& a, const Rational& c, const Rational& b) const;

  friend bool operator==(const Field& a, const Field& b) { return a.kind_ == b.kind_ && a.p_ == b.p_; }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  Field(Kind k, std::uint32_t p) : kind_(k), p_(p) {}

  std::int64_t mod(std::int64_t v) const {
    v %= static_cast<std::int64_t>(p_);
    return v < 0 ? v + p_ : v;
  }

  Kind kind_;
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

}  // namespace kk::la
