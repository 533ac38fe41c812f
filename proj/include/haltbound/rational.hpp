#pragma once

#include <gmp.h>

#include <string>
#include <string_view>

#include "haltbound/bigint.hpp"

namespace haltbound {

/// Exact rational number in canonical form: coprime numerator/denominator,
/// denominator > 0. Backed by GMP's mpq_t, which maintains exactly that
/// invariant. All probability values in this project are carried exactly;
/// there is no floating-point path anywhere.
class ExactRational {
 public:
  ExactRational() { mpq_init(q_); }
  ExactRational(long v) {  // NOLINT: implicit by design
    mpq_init(q_);
    mpq_set_si(q_, v, 1);
  }
  ExactRational(int v) : ExactRational(static_cast<long>(v)) {}

  ExactRational(const ExactRational& o) {
    mpq_init(q_);
    mpq_set(q_, o.q_);
  }
  ExactRational(ExactRational&& o) noexcept {
    mpq_init(q_);
    mpq_swap(q_, o.q_);
  }
  ExactRational& operator=(const ExactRational& o) {
    if (this != &o) mpq_set(q_, o.q_);
    return *this;
  }
  ExactRational& operator=(ExactRational&& o) noexcept {
    mpq_swap(q_, o.q_);
    return *this;
  }
  ~ExactRational() { mpq_clear(q_); }

  /// num/den, canonicalized. Throws std::domain_error on zero denominator.
  static ExactRational fraction(const BigInt& num, const BigInt& den);

  /// 2^e for any signed exponent, exactly.
  static ExactRational pow2(long e);

  /// 1 - 2^e (e typically negative).
  static ExactRational one_minus_pow2(long e) { return ExactRational(1) - pow2(e); }

  /// Parses "a/b", "2^-N" / "2^N", or a plain integer.
  /// Throws std::invalid_argument on anything else.
  static ExactRational parse(std::string_view s);

  ExactRational operator+(const ExactRational& o) const {
    ExactRational r;
    mpq_add(r.q_, q_, o.q_);
    return r;
  }
  ExactRational operator-(const ExactRational& o) const {
    ExactRational r;
    mpq_sub(r.q_, q_, o.q_);
    return r;
  }
  ExactRational operator*(const ExactRational& o) const {
    ExactRational r;
    mpq_mul(r.q_, q_, o.q_);
    return r;
  }
  ExactRational operator/(const ExactRational& o) const;

  int cmp(const ExactRational& o) const { return mpq_cmp(q_, o.q_); }
  bool operator==(const ExactRational& o) const { return mpq_equal(q_, o.q_) != 0; }
  bool operator!=(const ExactRational& o) const { return !(*this == o); }
  bool operator<(const ExactRational& o) const { return cmp(o) < 0; }
  bool operator<=(const ExactRational& o) const { return cmp(o) <= 0; }
  bool operator>(const ExactRational& o) const { return cmp(o) > 0; }
  bool operator>=(const ExactRational& o) const { return cmp(o) >= 0; }

  int sign() const { return mpq_sgn(q_); }
  bool is_zero() const { return sign() == 0; }

  ExactRational abs() const {
    ExactRational r;
    mpq_abs(r.q_, q_);
    return r;
  }

  BigInt numerator() const {
    BigInt n;
    mpz_set(n.raw(), mpq_numref(q_));
    return n;
  }
  BigInt denominator() const {
    BigInt d;
    mpz_set(d.raw(), mpq_denref(q_));
    return d;
  }

  /// Canonical "a/b" (just "a" when b = 1).
  std::string to_string() const;

  /// Fixed significant-digit decimal rendering for report/CSV output,
  /// correctly rounded to nearest (ties away from zero). Exact integer
  /// arithmetic only; deterministic across runs and platforms.
  std::string to_decimal(unsigned significant_digits) const;

  mpq_srcptr raw() const { return q_; }
  mpq_ptr raw() { return q_; }

 private:
  mpq_t q_;
};

}  // namespace haltbound
