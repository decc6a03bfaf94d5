#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace gridpm {

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Scalar domain selector: characteristic 0 means exact rationals, a prime
// p < 2^16 means the field with p elements.
struct FieldSpec {
  std::uint32_t characteristic = 0;

  FieldSpec() = default;
  explicit FieldSpec(std::uint32_t ch) : characteristic(ch) {
    if (ch != 0) {
      if (ch >= (1u << 16) || !is_prime_u32(ch))
        throw std::invalid_argument("field characteristic must be 0 or a prime < 2^16, got " +
                                    std::to_string(ch));
    }
  }

  static FieldSpec rationals() { return FieldSpec(0); }
  static FieldSpec prime(std::uint32_t p) { return FieldSpec(p); }

  bool operator==(const FieldSpec&) const = default;
};

// GF(p) with runtime modulus. Elements are canonically reduced to [0, p).
class PrimeField {
 public:
  using elem = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime_u32(p) || p >= (1u << 16))
      throw std::invalid_argument("PrimeField needs a prime < 2^16");
  }

  FieldSpec spec() const { return FieldSpec(p_); }
  std::uint32_t characteristic() const { return p_; }

  elem zero() const { return 0; }
  elem one() const { return 1 % p_; }
  elem from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<elem>(r);
  }
  bool is_zero(elem a) const { return a == 0; }

  elem add(elem a, elem b) const {
    elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  elem sub(elem a, elem b) const { return a >= b ? a - b : a + p_ - b; }
  elem neg(elem a) const { return a == 0 ? 0 : p_ - a; }
  elem mul(elem a, elem b) const {
    return static_cast<elem>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  elem inv(elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    // extended Euclid on (a, p)
    long long t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      long long q = r / new_r;
      long long tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<elem>(t);
  }
  elem div(elem a, elem b) const { return mul(a, inv(b)); }

  std::string to_string(elem a) const { return std::to_string(a); }
  long long to_canonical_int(elem a) const { return a; }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

// Exact rationals on GMP. mpq_class keeps values canonically reduced.
class RationalField {
 public:
  using elem = mpq_class;

  RationalField() = default;

  FieldSpec spec() const { return FieldSpec(0); }
  std::uint32_t characteristic() const { return 0; }

  elem zero() const { return elem(0); }
  elem one() const { return elem(1); }
  elem from_int(long long v) const {
    elem e;
    e = static_cast<long>(v);
    return e;
  }
  bool is_zero(const elem& a) const { return sgn(a) == 0; }

  elem add(const elem& a, const elem& b) const { return a + b; }
  elem sub(const elem& a, const elem& b) const { return a - b; }
  elem neg(const elem& a) const { return -a; }
  elem mul(const elem& a, const elem& b) const { return a * b; }
  elem inv(const elem& a) const {
    if (sgn(a) == 0) throw std::domain_error("inverse of zero");
    return 1 / a;
  }
  elem div(const elem& a, const elem& b) const { return a / b; }

  std::string to_string(const elem& a) const { return a.get_str(); }
  // Valid only for integral values; callers check via denominator.
  long long to_canonical_int(const elem& a) const {
    if (a.get_den() != 1) throw std::domain_error("rational is not an integer");
    return mpz_get_si(a.get_num().get_mpz_t());
  }

  bool operator==(const RationalField&) const { return true; }
};

}  // namespace gridpm
