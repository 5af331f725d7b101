#include "tclab/integer.hpp"

#include <stdexcept>

namespace tclab {

namespace {

mpz_class mpz_of(std::int64_t v) {
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
  return z;
}

}  // namespace

void Integer::assign(const mpz_class& z) {
  if (mpz_fits_slong_p(z.get_mpz_t())) {
    small_ = mpz_get_si(z.get_mpz_t());
    big_.reset();
  } else {
    small_ = 0;
    big_ = std::make_shared<const mpz_class>(z);
  }
}

Integer Integer::parse(std::string_view text) {
  mpz_class z;
  if (z.set_str(std::string(text), 10) != 0) throw std::invalid_argument("not an integer: " + std::string(text));
  return Integer(z);
}

mpz_class Integer::to_mpz() const { return big_ ? *big_ : mpz_of(small_); }

std::optional<std::int64_t> Integer::to_int64() const {
  if (big_) return std::nullopt;
  return small_;
}

std::string Integer::str() const { return big_ ? big_->get_str() : std::to_string(small_); }

int Integer::sign() const {
  if (big_) return mpz_sgn(big_->get_mpz_t());
  return (small_ > 0) - (small_ < 0);
}

Integer Integer::operator-() const {
  if (!big_) {
    std::int64_t r;
    if (!__builtin_sub_overflow(std::int64_t{0}, small_, &r)) return Integer(static_cast<long long>(r));
  }
  return Integer(mpz_class(-to_mpz()));
}

Integer& Integer::operator+=(const Integer& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_add_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign(mpz_class(to_mpz() + o.to_mpz()));
  return *this;
}

Integer& Integer::operator-=(const Integer& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_sub_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign(mpz_class(to_mpz() - o.to_mpz()));
  return *this;
}

Integer& Integer::operator*=(const Integer& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_mul_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign(mpz_class(to_mpz() * o.to_mpz()));
  return *this;
}

int compare(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return (a.small_ > b.small_) - (a.small_ < b.small_);
  int c = cmp(a.to_mpz(), b.to_mpz());
  return (c > 0) - (c < 0);
}

Integer Integer::floor_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_ && !(a.small_ == INT64_MIN && b.small_ == -1)) {
    std::int64_t q = a.small_ / b.small_;
    std::int64_t r = a.small_ % b.small_;
    if (r != 0 && ((r < 0) != (b.small_ < 0))) --q;
    return Integer(static_cast<long long>(q));
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(q);
}

Integer Integer::floor_mod(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_ && b.small_ != -1) {
    std::int64_t r = a.small_ % b.small_;
    if (r != 0 && ((r < 0) != (b.small_ < 0))) r += b.small_;
    return Integer(static_cast<long long>(r));
  }
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(r);
}

Integer Integer::round_div(const Integer& a, const Integer& b) {
  // floor((2a + |b|) / 2b) for b > 0, symmetric for b < 0.
  Integer bb = b.sign() < 0 ? -b : b;
  Integer aa = b.sign() < 0 ? -a : a;
  return floor_div(aa + aa + bb, bb + bb);
}

Integer Integer::exact_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_ && !(a.small_ == INT64_MIN && b.small_ == -1)) {
    if (a.small_ % b.small_ != 0) throw std::domain_error("inexact division");
    return Integer(static_cast<long long>(a.small_ / b.small_));
  }
  mpz_class az = a.to_mpz(), bz = b.to_mpz();
  if (!mpz_divisible_p(az.get_mpz_t(), bz.get_mpz_t())) throw std::domain_error("inexact division");
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), az.get_mpz_t(), bz.get_mpz_t());
  return Integer(q);
}

bool Integer::divides(const Integer& d, const Integer& a) {
  if (d.is_zero()) return a.is_zero();
  return floor_mod(a, d).is_zero();
}

Integer Integer::gcd(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_ && a.small_ != INT64_MIN && b.small_ != INT64_MIN) {
    std::int64_t x = a.small_ < 0 ? -a.small_ : a.small_;
    std::int64_t y = b.small_ < 0 ? -b.small_ : b.small_;
    while (y != 0) {
      std::int64_t t = x % y;
      x = y;
      y = t;
    }
    return Integer(static_cast<long long>(x));
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(g);
}

void Integer::xgcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  mpz_class gz, sz, tz;
  mpz_gcdext(gz.get_mpz_t(), sz.get_mpz_t(), tz.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  g = Integer(gz);
  s = Integer(sz);
  t = Integer(tz);
}

std::size_t Integer::hash() const {
  if (!big_) return std::hash<std::int64_t>{}(small_);
  return std::hash<std::string>{}(big_->get_str(16));
}

Integer unit_inverse(const Integer& u, const Integer& p) {
  if (p.is_zero()) {
    if (!u.is_unit()) throw std::domain_error("not a unit over Z");
    return u;
  }
  Integer g, s, t;
  Integer::xgcd(mod_reduce(u, p), p, g, s, t);
  if (!g.is_one()) throw std::domain_error("not a unit modulo p");
  return mod_reduce(s, p);
}

}  // namespace tclab
