#include "koszulkit/field.hpp"

#include <stdexcept>

namespace kk::la {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw std::invalid_argument("Field::prime: " + std::to_string(p) + " is not a prime below 2^31");
  }
  return Field(Kind::Prime, p);
}

std::string Field::name() const {
  if (is_rationals()) return "QQ";
  return "GF(" + std::to_string(p_) + ")";
}

Rational Field::embed(const Rational& q) const {
  if (is_rationals()) return q;
  mpq_class v = q.to_mpq();
  mpz_class pz(static_cast<unsigned long>(p_));
  mpz_class n = v.get_num() % pz;
  mpz_class d = v.get_den() % pz;
  if (d == 0) throw std::domain_error("Field::embed: denominator vanishes in " + name());
  mpz_class dinv;
  mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t());
  mpz_class r = (n * dinv) % pz;
  if (r < 0) r += pz;
  return Rational(static_cast<std::int64_t>(r.get_si()));
}

Rational Field::add(const Rational& a, const Rational& b) const {
  if (is_rationals()) return a + b;
  return Rational(mod(a.small_num() + b.small_num()));
}

Rational Field::sub(const Rational& a, const Rational& b) const {
  if (is_rationals()) return a - b;
  return Rational(mod(a.small_num() - b.small_num()));
}

Rational Field::mul(const Rational& a, const Rational& b) const {
  if (is_rationals()) return a * b;
  return Rational(mod(a.small_num() * b.small_num()));
}

Rational Field::neg(const Rational& a) const {
  if (is_rationals()) return -a;
  return Rational(mod(-a.small_num()));
}

Rational Field::inv(const Rational& a) const {
  if (a.is_zero()) throw std::domain_error("Field::inv: zero has no inverse");
  if (is_rationals()) return a.inverse();
  // Fermat: a^(p-2)
  std::int64_t base = a.small_num();
  std::int64_t e = static_cast<std::int64_t>(p_) - 2;
  std::int64_t result = 1;
  while (e > 0) {
    if (e & 1) result = mod(result * base);
    base = mod(base * base);
    e >>= 1;
  }
  return Rational(result);
}

Rational Field::sub_mul(const Rational& a, const Rational& c, const Rational& b) const {
  if (is_rationals()) {
    Rational t = c;
    t *= b;
    Rational r = a;
    r -= t;
    return r;
  }
  return Rational(mod(a.small_num() - mod(c.small_num() * b.small_num())));
}

}  // namespace kk::la
