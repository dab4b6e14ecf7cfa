#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <string>

#include "stab/errors.hpp"

namespace stab {

// Exact rational number on 64-bit numerator/denominator.
// Invariant: den > 0 and gcd(|num|, den) == 1. Intermediate products use
// 128-bit arithmetic; results that do not fit back into 64 bits throw.
class Rat {
 public:
  constexpr Rat() = default;
  Rat(std::int64_t n) : num_(n) {}
  Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  bool positive() const { return num_ > 0; }

  Rat operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) fail(Errc::bad_params, "rational division by zero");
    return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    i128 lhs = i128(a.num_) * b.den_;
    i128 rhs = i128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // Largest integer <= value.
  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  std::int64_t ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  Rat abs() const { return num_ < 0 ? -*this : *this; }

  static Rat pow(const Rat& base, int exp) {
    Rat r(1);
    for (int i = 0; i < (exp < 0 ? -exp : exp); ++i) r *= base;
    if (exp < 0) r = Rat(1) / r;
    return r;
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Parses "p", "p/q" or a plain integer literal. Throws Errc::parse_error.
  static Rat parse(const std::string& s);

 private:
  using i128 = __int128;

  static Rat from_i128(i128 n, i128 d) {
    if (d == 0) fail(Errc::bad_params, "rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr i128 lo = -i128(INT64_MAX) - 1, hi = i128(INT64_MAX);
    if (n < lo || n > hi || d > hi)
      fail(Errc::bad_params, "rational overflow");
    Rat r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void normalize() { *this = from_i128(num_, den_); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Number of lattice steps of size `step` from `base` that floor/ceil x.
// floor_steps: largest t with base + t*step <= x.
std::int64_t floor_steps(const Rat& x, const Rat& base, const Rat& step);
std::int64_t ceil_steps(const Rat& x, const Rat& base, const Rat& step);

}  // namespace stab
