#pragma once

#include <gmp.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace haltbound {

/// Arbitrary-precision signed integer. Thin RAII value wrapper over GMP's
/// mpz_t, exposing only the operations this project needs.
class BigInt {
 public:
  BigInt() { mpz_init(z_); }
  BigInt(long v) { mpz_init_set_si(z_, v); }  // NOLINT: implicit by design
  BigInt(unsigned long v) { mpz_init_set_ui(z_, v); }
  BigInt(int v) : BigInt(static_cast<long>(v)) {}
  BigInt(unsigned v) : BigInt(static_cast<unsigned long>(v)) {}

  BigInt(const BigInt& o) { mpz_init_set(z_, o.z_); }
  BigInt(BigInt&& o) noexcept {
    mpz_init(z_);
    mpz_swap(z_, o.z_);
  }
  BigInt& operator=(const BigInt& o) {
    if (this != &o) mpz_set(z_, o.z_);
    return *this;
  }
  BigInt& operator=(BigInt&& o) noexcept {
    mpz_swap(z_, o.z_);
    return *this;
  }
  ~BigInt() { mpz_clear(z_); }

  /// Parses a decimal string (optional leading '-'). Throws std::invalid_argument.
  static BigInt from_decimal(std::string_view s);

  static BigInt pow2(unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.z_, 2, e);
    return r;
  }
  /// 2^e - d, the ubiquitous "count of strings" denominator shape.
  static BigInt pow2_minus(unsigned long e, unsigned long d) {
    BigInt r = pow2(e);
    mpz_sub_ui(r.z_, r.z_, d);
    return r;
  }

  BigInt operator+(const BigInt& o) const {
    BigInt r;
    mpz_add(r.z_, z_, o.z_);
    return r;
  }
  BigInt operator-(const BigInt& o) const {
    BigInt r;
    mpz_sub(r.z_, z_, o.z_);
    return r;
  }
  BigInt operator*(const BigInt& o) const {
    BigInt r;
    mpz_mul(r.z_, z_, o.z_);
    return r;
  }
  BigInt& operator+=(const BigInt& o) {
    mpz_add(z_, z_, o.z_);
    return *this;
  }
  BigInt& operator-=(const BigInt& o) {
    mpz_sub(z_, z_, o.z_);
    return *this;
  }
  BigInt& operator+=(unsigned long v) {
    mpz_add_ui(z_, z_, v);
    return *this;
  }
  BigInt& operator-=(unsigned long v) {
    mpz_sub_ui(z_, z_, v);
    return *this;
  }
  BigInt& operator<<=(unsigned long bits) {
    mpz_mul_2exp(z_, z_, bits);
    return *this;
  }

  int cmp(const BigInt& o) const { return mpz_cmp(z_, o.z_); }
  bool operator==(const BigInt& o) const { return cmp(o) == 0; }
  bool operator!=(const BigInt& o) const { return cmp(o) != 0; }
  bool operator<(const BigInt& o) const { return cmp(o) < 0; }
  bool operator<=(const BigInt& o) const { return cmp(o) <= 0; }
  bool operator>(const BigInt& o) const { return cmp(o) > 0; }
  bool operator>=(const BigInt& o) const { return cmp(o) >= 0; }

  bool is_zero() const { return mpz_sgn(z_) == 0; }
  int sign() const { return mpz_sgn(z_); }

  /// Number of binary digits: floor(log2 v) + 1 for v >= 1, and 0 for 0.
  unsigned long bit_length() const {
    if (is_zero()) return 0;
    return mpz_sizeinbase(z_, 2);
  }

  bool fits_u64() const { return mpz_fits_ulong_p(z_) != 0; }
  std::uint64_t to_u64() const { return mpz_get_ui(z_); }

  std::string to_decimal() const;

  mpz_srcptr raw() const { return z_; }
  mpz_ptr raw() { return z_; }

 private:
  mpz_t z_;
};

}  // namespace haltbound
