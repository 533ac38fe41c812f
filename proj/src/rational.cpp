#include "haltbound/rational.hpp"

#include <gmp.h>

#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>

#include "haltbound/bigint.hpp"

namespace haltbound {

namespace {

std::string mpz_to_decimal(mpz_srcptr z) {
  std::unique_ptr<char, decltype(&std::free)> buf(mpz_get_str(nullptr, 10, z), &std::free);
  return std::string(buf.get());
}

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

BigInt BigInt::from_decimal(std::string_view s) {
  if (!is_integer_token(s)) throw std::invalid_argument("not a decimal integer: '" + std::string(s) + "'");
  BigInt r;
  if (mpz_set_str(r.z_, std::string(s).c_str(), 10) != 0)
    throw std::invalid_argument("not a decimal integer: '" + std::string(s) + "'");
  return r;
}

std::string BigInt::to_decimal() const { return mpz_to_decimal(z_); }

ExactRational ExactRational::fraction(const BigInt& num, const BigInt& den) {
  if (den.is_zero()) throw std::domain_error("rational with zero denominator");
  ExactRational r;
  mpz_set(mpq_numref(r.q_), num.raw());
  mpz_set(mpq_denref(r.q_), den.raw());
  mpq_canonicalize(r.q_);
  return r;
}

ExactRational ExactRational::pow2(long e) {
  ExactRational r;
  if (e >= 0) {
    mpz_ui_pow_ui(mpq_numref(r.q_), 2, static_cast<unsigned long>(e));
  } else {
    mpz_ui_pow_ui(mpq_denref(r.q_), 2, static_cast<unsigned long>(-e));
    mpz_set_ui(mpq_numref(r.q_), 1);
  }
  return r;
}

ExactRational ExactRational::parse(std::string_view s) {
  if (s.rfind("2^", 0) == 0) {
    std::string_view exp = s.substr(2);
    if (!is_integer_token(exp)) throw std::invalid_argument("bad power-of-two literal: '" + std::string(s) + "'");
    long e = std::strtol(std::string(exp).c_str(), nullptr, 10);
    return pow2(e);
  }
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    BigInt num = BigInt::from_decimal(s.substr(0, slash));
    BigInt den = BigInt::from_decimal(s.substr(slash + 1));
    if (den.sign() <= 0) throw std::invalid_argument("denominator must be positive: '" + std::string(s) + "'");
    return fraction(num, den);
  }
  if (is_integer_token(s)) {
    return fraction(BigInt::from_decimal(s), BigInt(1));
  }
  throw std::invalid_argument("expected 'a/b', '2^-N' or an integer, got '" + std::string(s) + "'");
}

ExactRational ExactRational::operator/(const ExactRational& o) const {
  if (o.is_zero()) throw std::domain_error("division by zero");
  ExactRational r;
  mpq_div(r.q_, q_, o.q_);
  return r;
}

std::string ExactRational::to_string() const {
  std::string num = mpz_to_decimal(mpq_numref(q_));
  if (mpz_cmp_ui(mpq_denref(q_), 1) == 0) return num;
  return num + "/" + mpz_to_decimal(mpq_denref(q_));
}

std::string ExactRational::to_decimal(unsigned significant_digits) const {
  if (significant_digits == 0) throw std::invalid_argument("significant_digits must be >= 1");
  if (is_zero()) return "0";
  bool negative = sign() < 0;

  mpz_t p, q;
  mpz_init(p);
  mpz_init(q);
  mpz_abs(p, mpq_numref(q_));
  mpz_set(q, mpq_denref(q_));

  // Find e, the decimal exponent with |v| * 10^-e in [1, 10): scale p up or
  // down by tens until p/q lands in [q, 10q).
  long e = 0;
  mpz_t t;
  mpz_init(t);
  while (mpz_cmp(p, q) < 0) {
    mpz_mul_ui(p, p, 10);
    --e;
  }
  mpz_mul_ui(t, q, 10);
  while (mpz_cmp(p, t) >= 0) {
    mpz_mul_ui(q, q, 10);
    mpz_mul_ui(t, q, 10);
    ++e;
  }

  // digits = round(p * 10^(sig-1) / q), ties away from zero.
  mpz_ui_pow_ui(t, 10, significant_digits - 1);
  mpz_mul(p, p, t);
  mpz_mul_2exp(p, p, 1);  // 2p
  mpz_add(p, p, q);       // 2p + q
  mpz_mul_2exp(q, q, 1);  // 2q
  mpz_fdiv_q(p, p, q);    // floor((2p+q)/(2q)) = round-half-up(p/q)

  std::string digits = mpz_to_decimal(p);
  if (digits.size() > significant_digits) {  // rounding carried into a new digit
    digits.pop_back();
    ++e;
  }
  mpz_clear(p);
  mpz_clear(q);
  mpz_clear(t);

  std::string out;
  if (negative) out.push_back('-');
  if (e >= 0) {
    std::size_t int_digits = static_cast<std::size_t>(e) + 1;
    if (digits.size() <= int_digits) {
      out += digits;
      out.append(int_digits - digits.size(), '0');
    } else {
      out += digits.substr(0, int_digits);
      out.push_back('.');
      out += digits.substr(int_digits);
    }
  } else {
    out += "0.";
    out.append(static_cast<std::size_t>(-e - 1), '0');
    out += digits;
  }
  return out;
}

}  // namespace haltbound
