#include "koszulkit/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace kk::la {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr std::int64_t kSmallMax = INT64_MAX;

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 v) { return v <= kSmallMax && v >= -kSmallMax; }

mpz_class mpz_from(i128 v) {
  u128 m = abs128(v);
  auto hi = static_cast<std::uint64_t>(m >> 64);
  auto lo = static_cast<std::uint64_t>(m);
  mpz_class r;
  mpz_class h;
  mpz_import(h.get_mpz_t(), 1, 1, sizeof(hi), 0, 0, &hi);
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(lo), 0, 0, &lo);
  r += h << 64;
  if (v < 0) r = -r;
  return r;
}

bool mpz_fits_small(const mpz_class& z) {
  return mpz_sizeinbase(z.get_mpz_t(), 2) <= 63;
}

std::int64_t mpz_to_i64(const mpz_class& z) {
  std::uint64_t out = 0;
  std::size_t count = 0;
  mpz_export(&out, &count, 1, sizeof(out), 0, 0, z.get_mpz_t());
  auto v = static_cast<std::int64_t>(out);
  return sgn(z) < 0 ? -v : v;
}

}  // namespace

Rational::Rational(std::int64_t n) : num_(n) {
  if (n == INT64_MIN) assign_big(mpq_class(mpz_from(n)));
}

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  assign_wide(n, d);
}

Rational::Rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  assign_big(std::move(c));
}

Rational::Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
  if (other.big_) big_ = std::make_unique<mpq_class>(*other.big_);
}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  num_ = other.num_;
  den_ = other.den_;
  if (other.big_) {
    if (big_) *big_ = *other.big_;
    else big_ = std::make_unique<mpq_class>(*other.big_);
  } else {
    big_.reset();
  }
  return *this;
}

void Rational::assign_big(mpq_class q) {
  if (mpz_fits_small(q.get_num()) && mpz_fits_small(q.get_den())) {
    num_ = mpz_to_i64(q.get_num());
    den_ = mpz_to_i64(q.get_den());
    big_.reset();
    return;
  }
  num_ = 0;
  den_ = 1;
  if (big_) *big_ = std::move(q);
  else big_ = std::make_unique<mpq_class>(std::move(q));
}

void Rational::assign_wide(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return;
  }
  u128 g = gcd128(abs128(n), static_cast<u128>(d));
  if (g != 1) {
    n /= static_cast<i128>(g);
    d /= static_cast<i128>(g);
  }
  if (fits(n) && fits(d)) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
    big_.reset();
    return;
  }
  mpq_class q(mpz_from(n), mpz_from(d));
  num_ = 0;
  den_ = 1;
  if (big_) *big_ = std::move(q);
  else big_ = std::make_unique<mpq_class>(std::move(q));
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational::parse: bad number '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("Rational::parse: zero denominator");
  q.canonicalize();
  return Rational(q);
}

bool Rational::is_integer() const {
  if (!big_) return den_ == 1;
  return big_->get_den() == 1;
}

int Rational::sign() const {
  if (!big_) return (num_ > 0) - (num_ < 0);
  return sgn(*big_);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_from(num_), mpz_from(den_));
  return q;
}

std::string Rational::to_string() const {
  if (!big_) {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  return big_->get_str();
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  Rational r;
  if (!big_) {
    r.assign_wide(den_, num_);
    return r;
  }
  mpq_class q = 1 / *big_;
  r.assign_big(std::move(q));
  return r;
}

Rational Rational::operator-() const {
  Rational r(*this);
  if (!r.big_) r.num_ = -r.num_;
  else *r.big_ = -*r.big_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      i128 s = static_cast<i128>(num_) + o.num_;
      if (fits(s)) {
        num_ = static_cast<std::int64_t>(s);
        return *this;
      }
    }
    std::int64_t g = gcd64(den_, o.den_);
    i128 n = static_cast<i128>(num_) * (o.den_ / g) + static_cast<i128>(o.num_) * (den_ / g);
    i128 d = static_cast<i128>(den_ / g) * o.den_;
    assign_wide(n, d);
    return *this;
  }
  assign_big(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      i128 s = static_cast<i128>(num_) - o.num_;
      if (fits(s)) {
        num_ = static_cast<std::int64_t>(s);
        return *this;
      }
    }
    std::int64_t g = gcd64(den_, o.den_);
    i128 n = static_cast<i128>(num_) * (o.den_ / g) - static_cast<i128>(o.num_) * (den_ / g);
    i128 d = static_cast<i128>(den_ / g) * o.den_;
    assign_wide(n, d);
    return *this;
  }
  assign_big(to_mpq() - o.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (den_ == 1 && o.den_ == 1) {
      i128 p = static_cast<i128>(num_) * o.num_;
      if (fits(p)) {
        num_ = static_cast<std::int64_t>(p);
        return *this;
      }
    }
    std::int64_t g1 = gcd64(num_, o.den_);
    std::int64_t g2 = gcd64(o.num_, den_);
    i128 n = static_cast<i128>(num_ / g1) * (o.num_ / g2);
    i128 d = static_cast<i128>(den_ / g2) * (o.den_ / g1);
    if (fits(n) && fits(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
    assign_wide(n, d);
    return *this;
  }
  assign_big(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) { return *this *= o.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical forms differ in representation class
}

bool operator<(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
  }
  return a.to_mpq() < b.to_mpq();
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

}  // namespace kk::la
