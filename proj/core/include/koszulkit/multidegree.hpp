#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace kk {

inline constexpr int kMaxVars = 16;

/// Exponent vector of a monomial in at most kMaxVars variables.
class MultiDegree {
 public:
  MultiDegree() = default;
  explicit MultiDegree(int n) : n_(check_n(n)) {}
  MultiDegree(std::initializer_list<int> exps) : n_(check_n(static_cast<int>(exps.size()))) {
    int i = 0;
    for (int v : exps) set(i++, v);
  }
  static MultiDegree from_vector(const std::vector<int>& v) {
    MultiDegree m(static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) m.set(static_cast<int>(i), v[i]);
    return m;
  }
  static MultiDegree unit(int n, int i) {
    MultiDegree m(n);
    m.set(i, 1);
    return m;
  }

  int size() const noexcept { return n_; }
  int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  void set(int i, int v) {
    if (i < 0 || i >= n_) throw std::out_of_range("MultiDegree: index out of range");
    if (v < 0 || v > 255) throw std::out_of_range("MultiDegree: exponent out of range");
    e_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
  }

  int total() const noexcept {
    int s = 0;
    for (int i = 0; i < n_; ++i) s += e_[static_cast<std::size_t>(i)];
    return s;
  }
  bool divides(const MultiDegree& o) const noexcept {
    for (int i = 0; i < n_; ++i) {
      if (e_[static_cast<std::size_t>(i)] > o.e_[static_cast<std::size_t>(i)]) return false;
    }
    return true;
  }
  bool is_squarefree() const noexcept {
    for (int i = 0; i < n_; ++i) {
      if (e_[static_cast<std::size_t>(i)] > 1) return false;
    }
    return true;
  }
  bool is_zero() const noexcept { return total() == 0; }
  std::vector<int> to_vector() const { return {e_.begin(), e_.begin() + n_}; }

  friend MultiDegree operator+(MultiDegree a, const MultiDegree& b) {
    for (int i = 0; i < a.n_; ++i) a.set(i, a[i] + b[i]);
    return a;
  }
  /// Componentwise difference; requires b to divide a.
  friend MultiDegree operator-(MultiDegree a, const MultiDegree& b) {
    for (int i = 0; i < a.n_; ++i) a.set(i, a[i] - b[i]);
    return a;
  }
  static MultiDegree lcm(const MultiDegree& a, const MultiDegree& b) {
    MultiDegree m(a.n_);
    for (int i = 0; i < a.n_; ++i) m.set(i, std::max(a[i], b[i]));
    return m;
  }
  static bool coprime(const MultiDegree& a, const MultiDegree& b) {
    for (int i = 0; i < a.n_; ++i) {
      if (a[i] != 0 && b[i] != 0) return false;
    }
    return true;
  }

  friend bool operator==(const MultiDegree& a, const MultiDegree& b) { return a.n_ == b.n_ && a.e_ == b.e_; }
  friend bool operator!=(const MultiDegree& a, const MultiDegree& b) { return !(a == b); }
  /// Plain lexicographic comparison of exponent vectors (container order only).
  friend bool operator<(const MultiDegree& a, const MultiDegree& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.e_ < b.e_;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ n_;
    for (int i = 0; i < n_; ++i) {
      h ^= e_[static_cast<std::size_t>(i)];
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

  std::string to_string() const {
    std::string s = "(";
    for (int i = 0; i < n_; ++i) {
      if (i) s += ",";
      s += std::to_string(e_[static_cast<std::size_t>(i)]);
    }
    return s + ")";
  }

 private:
  static int check_n(int n) {
    if (n < 0 || n > kMaxVars) throw std::invalid_argument("MultiDegree: at most 16 variables are supported");
    return n;
  }

  std::array<std::uint8_t, kMaxVars> e_{};
  int n_ = 0;
};

/// Graded-reverse-lexicographic order with X1 > X2 > ... > Xn.
/// Returns true when a is strictly greater than b.
inline bool grevlex_greater(const MultiDegree& a, const MultiDegree& b) {
  int da = a.total();
  int db = b.total();
  if (da != db) return da > db;
  for (int i = a.size() - 1; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

/// Small integer vector used as a grading key (coarse degrees, fine weight
/// degrees, or both).
class GradeKey {
 public:
  static constexpr int kCapacity = 24;

  GradeKey() = default;
  explicit GradeKey(int len) : len_(check_len(len)) {}
  GradeKey(std::initializer_list<int> v) : len_(check_len(static_cast<int>(v.size()))) {
    int i = 0;
    for (int x : v) set(i++, x);
  }
  static GradeKey from_vector(const std::vector<int>& v) {
    GradeKey k(static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) k.set(static_cast<int>(i), v[i]);
    return k;
  }

  int size() const noexcept { return len_; }
  int operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  void set(int i, int v) {
    if (i < 0 || i >= len_) throw std::out_of_range("GradeKey: index out of range");
    if (v < INT16_MIN || v > INT16_MAX) throw std::out_of_range("GradeKey: entry out of range");
    c_[static_cast<std::size_t>(i)] = static_cast<std::int16_t>(v);
  }
  std::vector<int> to_vector() const { return {c_.begin(), c_.begin() + len_}; }

  GradeKey& operator+=(const GradeKey& o) {
    if (len_ == 0) return *this = o;
    if (o.len_ == 0) return *this;
    if (o.len_ != len_) throw std::invalid_argument("GradeKey: length mismatch");
    for (int i = 0; i < len_; ++i) set(i, (*this)[i] + o[i]);
    return *this;
  }
  friend GradeKey operator+(GradeKey a, const GradeKey& b) { return a += b; }

  /// Concatenation.
  friend GradeKey concat(const GradeKey& a, const GradeKey& b) {
    GradeKey k(a.len_ + b.len_);
    for (int i = 0; i < a.len_; ++i) k.set(i, a[i]);
    for (int i = 0; i < b.len_; ++i) k.set(a.len_ + i, b[i]);
    return k;
  }

  /// Componentwise <=.
  bool dominated_by(const GradeKey& o) const {
    for (int i = 0; i < len_; ++i) {
      if ((*this)[i] > o[i]) return false;
    }
    return true;
  }

  friend bool operator==(const GradeKey& a, const GradeKey& b) { return a.len_ == b.len_ && a.c_ == b.c_; }
  friend bool operator!=(const GradeKey& a, const GradeKey& b) { return !(a == b); }
  friend bool operator<(const GradeKey& a, const GradeKey& b) {
    if (a.len_ != b.len_) return a.len_ < b.len_;
    return a.c_ < b.c_;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(len_);
    for (int i = 0; i < len_; ++i) {
      h ^= static_cast<std::uint16_t>(c_[static_cast<std::size_t>(i)]);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

  std::string to_string() const {
    std::string s = "(";
    for (int i = 0; i < len_; ++i) {
      if (i) s += ",";
      s += std::to_string(c_[static_cast<std::size_t>(i)]);
    }
    return s + ")";
  }

 private:
  static int check_len(int len) {
    if (len < 0 || len > kCapacity) throw std::invalid_argument("GradeKey: too many components");
    return len;
  }

  std::array<std::int16_t, kCapacity> c_{};
  int len_ = 0;
};

}  // namespace kk

template <>
struct std::hash<kk::MultiDegree> {
  std::size_t operator()(const kk::MultiDegree& m) const noexcept { return m.hash(); }
};

template <>
struct std::hash<kk::GradeKey> {
  std::size_t operator()(const kk::GradeKey& k) const noexcept { return k.hash(); }
};
