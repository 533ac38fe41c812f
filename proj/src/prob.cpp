#include "haltbound/prob.hpp"

#include <gmp.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace haltbound::prob {

namespace {

constexpr unsigned kDepthMargin = 128;

unsigned default_depth(unsigned a, unsigned b) { return std::max(a, b) + kDepthMargin; }

/// Series term exponent: term i is 1/(2^e(i) - 2) with e(i) = i + 1 for the
/// plain model and e(i) = i + g(i) + 1 for the self-delimiting one.
unsigned long term_exponent(const ComplexityModel& model, unsigned i) {
  if (model.is_plain()) return static_cast<unsigned long>(i) + 1;
  return static_cast<unsigned long>(i) + model.g(i) + 1;
}

/// Remainder bracket exponents after the last included index `m_last`:
/// termwise 2^-e(i) < 1/(2^e(i) - 2) <= 2^-(e(i)-1), so the plain remainder
/// lies in [2^-(M+1), 2^-M] (geometric, closed form). For self-delimiting the
/// upper side uses g's monotonicity (sum 2^-(i+g(i)) <= 2^-(M+g(M+1))) and
/// the lower side keeps just the first remainder term, sound for every
/// admissible g.
struct BracketExponents {
  unsigned long lo;
  unsigned long hi;
};

BracketExponents bracket_exponents(const ComplexityModel& model, unsigned long m_last) {
  if (model.is_plain()) return {m_last + 1, m_last};
  unsigned long e_next = term_exponent(model, static_cast<unsigned>(m_last + 1));
  return {e_next, e_next - 2};
}

// ---------------------------------------------------------------------------
// Exact partial sums (used by tail_sum, whose endpoints are the series
// enclosure itself).

struct Fraction {
  BigInt num;
  BigInt den;

  Fraction() : num(0), den(1) {}
  Fraction(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {}

  Fraction plus_pow2(long e) const {
    if (e >= 0) return Fraction(num + den * BigInt::pow2(static_cast<unsigned long>(e)), den);
    BigInt scale = BigInt::pow2(static_cast<unsigned long>(-e));
    return Fraction(num * scale + den, den * scale);
  }

  ExactRational canonical() const { return ExactRational::fraction(num, den); }
};

/// Balanced pairwise reduction of a sum of fractions. Keeps operand sizes
/// near-equal so GMP's subquadratic multiplication carries the large-k cases.
Fraction sum_tree(std::vector<Fraction> terms) {
  if (terms.empty()) return Fraction();
  while (terms.size() > 1) {
    std::vector<Fraction> next;
    next.reserve(terms.size() / 2 + 1);
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) {
      Fraction& a = terms[i];
      Fraction& b = terms[i + 1];
      next.emplace_back(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    if (terms.size() % 2 == 1) next.push_back(std::move(terms.back()));
    terms = std::move(next);
  }
  return std::move(terms.front());
}

/// Exact sum_{i=start}^{start+count-1} 1/(2^e(i) - 2).
Fraction partial_sum(const ComplexityModel& model, unsigned start, unsigned count) {
  std::vector<Fraction> terms;
  terms.reserve(count);
  for (unsigned i = start; i < start + count; ++i)
    terms.emplace_back(BigInt(1), BigInt::pow2_minus(term_exponent(model, i), 2));
  return sum_tree(std::move(terms));
}

// ---------------------------------------------------------------------------
// Directional dyadic sums (used by the ratio-valued operations).
//
// Each term is rounded outward onto the grid 2^-frac_bits, so [lo, hi]/2^N
// still rigorously encloses the series; the added slop is below
// count * 2^-frac_bits, orders of magnitude under the geometric brackets.
// Keeping everything over one power-of-two denominator makes the final
// endpoint fractions small, which is what lets the sweep-style callers
// (horizon scans, lower-bound certification) run in their time budgets.

struct DyadicBounds {
  BigInt lo;
  BigInt hi;
  unsigned long frac_bits;
};

/// frac_bits precision covering every term of the evaluation with >= 64
/// significant bits.
unsigned long dyadic_precision(const ComplexityModel& model, unsigned start, unsigned count) {
  return term_exponent(model, start + count) + 64;
}

DyadicBounds dyadic_partial(const ComplexityModel& model, unsigned start, unsigned count,
                            unsigned long frac_bits) {
  BigInt one = BigInt::pow2(frac_bits);
  BigInt lo(0), hi(0), q;
  for (unsigned i = start; i < start + count; ++i) {
    BigInt den = BigInt::pow2_minus(term_exponent(model, i), 2);
    mpz_fdiv_q(q.raw(), one.raw(), den.raw());
    lo += q;
    mpz_cdiv_q(q.raw(), one.raw(), den.raw());
    hi += q;
  }
  return {std::move(lo), std::move(hi), frac_bits};
}

/// Partial bounds plus the geometric remainder brackets (exact powers of two
/// on this grid, since frac_bits exceeds both bracket exponents).
DyadicBounds dyadic_series(const ComplexityModel& model, unsigned start, unsigned count,
                           unsigned long frac_bits) {
  DyadicBounds s = dyadic_partial(model, start, count, frac_bits);
  BracketExponents e = bracket_exponents(model, static_cast<unsigned long>(start) + count - 1);
  s.lo += BigInt::pow2(frac_bits - e.lo);
  s.hi += BigInt::pow2(frac_bits - e.hi);
  return s;
}

/// Start index of the normalization series for a given complexity budget.
unsigned series_start(const ComplexityModel& model, unsigned k) {
  if (k == 0) throw std::domain_error("complexity k must be >= 1");
  if (model.is_plain()) return k;
  return solve_l(model.overhead(), k);
}

}  // namespace

unsigned solve_l(const OverheadFn& g, unsigned k) {
  if (k == 0) throw std::domain_error("complexity k must be >= 1");
  unsigned best = 0;
  // l + g(l) is strictly increasing, so the scan stops within k steps.
  for (unsigned l = 1; l <= k; ++l) {
    unsigned long reach = static_cast<unsigned long>(l) + g(l);
    if (reach > k) break;
    best = l;
  }
  if (best == 0)
    throw std::domain_error("no l with l + g(l) <= " + std::to_string(k) +
                            ": the self-delimiting model admits no complexity this small");
  return best;
}

ProbInterval tail_sum(const ComplexityModel& model, unsigned k, unsigned depth) {
  unsigned start = series_start(model, k);
  unsigned terms = depth != 0 ? depth : default_depth(k, k);
  Fraction ps = partial_sum(model, start, terms);
  BracketExponents e = bracket_exponents(model, static_cast<unsigned long>(start) + terms - 1);
  return ProbInterval(ps.plus_pow2(-static_cast<long>(e.lo)).canonical(),
                      ps.plus_pow2(-static_cast<long>(e.hi)).canonical());
}

ExactRational p1(const ComplexityModel& model, unsigned k, unsigned n) {
  if (k == 0 || n == 0) throw std::domain_error("k and n must be >= 1");
  unsigned long overhead = model.is_plain() ? model.c() : model.g(n);
  if (static_cast<unsigned long>(n) + overhead < k)
    throw std::domain_error("complexity k exceeds n plus the encoding overhead; prior undefined");
  BigInt num = BigInt::pow2(k);
  BigInt den = BigInt::pow2_minus(static_cast<unsigned long>(n) + overhead + 1, 2);
  return ExactRational::fraction(num, den);
}

unsigned min_output_size(const ComplexityModel& model, unsigned k) {
  if (k == 0) throw std::domain_error("complexity k must be >= 1");
  if (model.is_plain()) return k > model.c() + 1 ? k - model.c() : 1;
  return solve_l(model.overhead(), k);
}

ProbInterval p2(const ComplexityModel& model, unsigned k, unsigned n, unsigned depth) {
  if (n == 0) throw std::domain_error("output size n must be >= 1");
  unsigned start = series_start(model, k);
  unsigned n_index = model.is_plain() ? n + model.c() : n;
  if (n_index < start)
    throw std::domain_error("output size n below the admissible range for complexity k");
  unsigned terms = depth != 0 ? depth : default_depth(k, n);
  unsigned long frac_bits = std::max(dyadic_precision(model, start, terms),
                                     term_exponent(model, n_index) + 64);
  DyadicBounds s = dyadic_series(model, start, terms, frac_bits);
  // The 2^k factor in prior and normalization cancels symbolically; the n-th
  // term is one summand of the series, so term/s.lo <= 1 holds structurally.
  BigInt one = BigInt::pow2(frac_bits);
  BigInt den = BigInt::pow2_minus(term_exponent(model, n_index), 2);
  BigInt term_lo, term_hi;
  mpz_fdiv_q(term_lo.raw(), one.raw(), den.raw());
  mpz_cdiv_q(term_hi.raw(), one.raw(), den.raw());
  return ProbInterval(ExactRational::fraction(term_lo, s.hi),
                      ExactRational::fraction(term_hi, s.lo));
}

ExactRational p2_closed(unsigned k, unsigned n, unsigned c) {
  if (k == 0 || n == 0) throw std::domain_error("k and n must be >= 1");
  unsigned long nc = static_cast<unsigned long>(n) + c;
  if (nc < k) throw std::domain_error("requires n + c >= k");
  return ExactRational::pow2(-static_cast<long>(nc - k + 1));
}

ProbInterval tail_prob(const ComplexityModel& model, unsigned k, unsigned m, unsigned depth) {
  if (m == 0) throw std::domain_error("size threshold m must be >= 1");
  unsigned den_start = series_start(model, k);
  unsigned num_start = series_start(model, m);
  if (model.is_plain()) num_start = m + model.c();
  if (num_start < den_start)
    throw std::domain_error("size threshold m below the admissible range for complexity k");

  unsigned terms = depth != 0 ? depth : default_depth(k, m);
  unsigned long frac_bits = dyadic_precision(model, num_start, terms);
  // Denominator = numerator series + exact finite bridge P, so the ratio is
  // x/(x+P): increasing in x, decreasing in P, and the common 2^frac_bits
  // scale cancels. Endpoints land in [0,1] with no clamping, and m at the
  // admissibility boundary gives exactly [1,1].
  DyadicBounds x = dyadic_series(model, num_start, terms, frac_bits);
  DyadicBounds bridge = dyadic_partial(model, den_start, num_start - den_start, frac_bits);
  return ProbInterval(ExactRational::fraction(x.lo, x.lo + bridge.hi),
                      ExactRational::fraction(x.hi, x.hi + bridge.lo));
}

ExactRational tail_closed(unsigned k, unsigned m, unsigned c) {
  if (k == 0 || m == 0) throw std::domain_error("k and m must be >= 1");
  unsigned long mc = static_cast<unsigned long>(m) + c;
  if (mc < k) throw std::domain_error("requires m + c >= k");
  return ExactRational::pow2(-static_cast<long>(mc - k));
}

ProbInterval below_prob(const ComplexityModel& model, unsigned k, unsigned m, unsigned depth) {
  return tail_prob(model, k, m, depth).complement();
}

RationalInterval p2_mass(const ComplexityModel& model, unsigned k, unsigned n_max,
                         unsigned depth) {
  unsigned n_min = min_output_size(model, k);
  if (n_max < n_min) throw std::domain_error("n_max below the smallest admissible output size");
  unsigned den_start = series_start(model, k);
  unsigned terms = depth != 0 ? depth : default_depth(k, n_max);

  auto index_of = [&](unsigned n) { return model.is_plain() ? n + model.c() : n; };
  unsigned rest_start = index_of(n_max) + 1;
  unsigned long frac_bits = dyadic_precision(model, rest_start, terms);
  DyadicBounds head =
      dyadic_partial(model, index_of(n_min), index_of(n_max) - index_of(n_min) + 1, frac_bits);
  DyadicBounds rest = dyadic_series(model, rest_start, terms, frac_bits);
  DyadicBounds den = dyadic_series(model, den_start, terms, frac_bits);
  return RationalInterval(ExactRational::fraction(head.lo + rest.lo, den.hi),
                          ExactRational::fraction(head.hi + rest.hi, den.lo));
}

}  // namespace haltbound::prob
