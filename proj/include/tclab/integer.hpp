#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace tclab {

// Exact integer with an int64 fast path. Values that overflow are promoted to
// a GMP integer and demoted again whenever they fit.
class Integer {
 public:
  Integer() = default;
  Integer(int v) : small_(v) {}
  Integer(long v) : small_(v) {}
  Integer(long long v) : small_(static_cast<std::int64_t>(v)) {}
  explicit Integer(const mpz_class& z) { assign(z); }

  static Integer parse(std::string_view text);

  bool is_small() const { return !big_; }
  std::int64_t small_value() const { return small_; }
  mpz_class to_mpz() const;
  std::optional<std::int64_t> to_int64() const;
  std::string str() const;

  int sign() const;
  bool is_zero() const { return !big_ && small_ == 0; }
  bool is_one() const { return !big_ && small_ == 1; }
  bool is_unit() const { return !big_ && (small_ == 1 || small_ == -1); }

  Integer operator-() const;
  Integer& operator+=(const Integer& o);
  Integer& operator-=(const Integer& o);
  Integer& operator*=(const Integer& o);

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  friend int compare(const Integer& a, const Integer& b);
  friend bool operator==(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    return compare(a, b) == 0;
  }
  friend bool operator!=(const Integer& a, const Integer& b) { return !(a == b); }
  friend bool operator<(const Integer& a, const Integer& b) { return compare(a, b) < 0; }
  friend bool operator>(const Integer& a, const Integer& b) { return compare(a, b) > 0; }
  friend bool operator<=(const Integer& a, const Integer& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const Integer& a, const Integer& b) { return compare(a, b) >= 0; }

  // Floor division and the matching nonnegative-for-positive-divisor remainder.
  static Integer floor_div(const Integer& a, const Integer& b);
  static Integer floor_mod(const Integer& a, const Integer& b);
  // Quotient rounded to nearest (ties toward negative infinity).
  static Integer round_div(const Integer& a, const Integer& b);
  // Division known to be exact; throws std::domain_error otherwise.
  static Integer exact_div(const Integer& a, const Integer& b);
  static bool divides(const Integer& d, const Integer& a);
  static Integer gcd(const Integer& a, const Integer& b);
  // g = gcd(a,b) >= 0 together with s, t such that s*a + t*b = g.
  static void xgcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t);

  Integer abs() const { return sign() < 0 ? -*this : *this; }
  std::size_t hash() const;

 private:
  void assign(const mpz_class& z);
  std::int64_t small_ = 0;
  std::shared_ptr<const mpz_class> big_;
};

inline Integer abs(const Integer& a) { return a.abs(); }

// Reduce x into [0, p).
inline Integer mod_reduce(const Integer& x, const Integer& p) { return Integer::floor_mod(x, p); }
// Inverse of a unit modulo p (p = 0 means over Z, where only +-1 are units).
Integer unit_inverse(const Integer& u, const Integer& p);

}  // namespace tclab
