#pragma once

#include "haltbound/interval.hpp"
#include "haltbound/model.hpp"
#include "haltbound/rational.hpp"

namespace haltbound::prob {

// Exact evaluation of the size-prior probability formulas. Every infinite
// series is returned as a rigorous enclosure: an exact partial sum of
// T = max(k, m) + 128 terms (overridable via `depth`) plus closed-form
// geometric brackets for the remainder. All arithmetic is exact; enclosures
// are nested under increasing depth and their widths shrink geometrically.

/// Largest l with l + g(l) <= k: the start index of the self-delimiting
/// normalization sum. When no exact solution of l + g(l) = k exists the
/// largest admissible l is the conservative choice (it enlarges the
/// denominator sum). Throws std::domain_error when even l = 1 is infeasible.
unsigned solve_l(const OverheadFn& g, unsigned k);

/// Enclosure of the normalization series with the 2^k factor cancelled:
///   Plain:          sum_{i=k}^inf 1/(2^(i+1) - 2)
///   SelfDelimiting: sum_{i=l}^inf 1/(2^(i+g(i)+1) - 2), l = solve_l(g, k).
/// Requires k >= 1.
ProbInterval tail_sum(const ComplexityModel& model, unsigned k, unsigned depth = 0);

/// Prior that a random string of n bits has complexity exactly k:
/// 2^k / (2^(n+c+1) - 2), exactly (g(n) in place of c for self-delimiting).
/// Requires 1 <= k <= n + c (resp. n + g(n)).
ExactRational p1(const ComplexityModel& model, unsigned k, unsigned n);

/// Smallest output size n admitted by p2 for this (model, k): k - c for the
/// plain model (clamped to 1), solve_l(g, k) for the self-delimiting one.
/// The admissible set matches the support of the normalization sum, so the
/// posterior sums to exactly 1 over it.
unsigned min_output_size(const ComplexityModel& model, unsigned k);

/// Posterior that a complexity-k program which produces output emits a string
/// of exactly n bits: the n-th prior term over the normalization series, with
/// the common 2^k factor cancelled before summation.
ProbInterval p2(const ComplexityModel& model, unsigned k, unsigned n, unsigned depth = 0);

/// Closed-form posterior approximation 2^-(n+c-k+1). Requires n + c >= k.
ExactRational p2_closed(unsigned k, unsigned n, unsigned c);

/// Posterior mass of output sizes >= m: the ratio of the two normalization
/// series. Computed as x/(x + P) where x encloses the numerator series and P
/// is the exact finite sum of the denominator's extra leading terms, so the
/// endpoints land in [0,1] by construction. Requires the numerator's start
/// index to be at or beyond the denominator's (m + c >= k for plain;
/// solve_l(g, m) >= solve_l(g, k) for self-delimiting).
ProbInterval tail_prob(const ComplexityModel& model, unsigned k, unsigned m, unsigned depth = 0);

/// Closed-form tail approximation 2^-(m+c-k). Requires m + c >= k.
ExactRational tail_closed(unsigned k, unsigned m, unsigned c);

/// Posterior mass of output sizes < m: the exact endpoint-wise complement of
/// tail_prob. Same preconditions.
ProbInterval below_prob(const ComplexityModel& model, unsigned k, unsigned m, unsigned depth = 0);

/// Enclosure of sum_{n = min_output_size}^{n_max} p2 plus the enclosed
/// remainder beyond n_max. Contains exactly 1 whenever the admissible-size
/// support matches the normalization sum (always for self-delimiting; for
/// plain models it needs k > c, otherwise sizes below 1 carry mass the sum
/// cannot reach). Requires n_max >= min_output_size.
RationalInterval p2_mass(const ComplexityModel& model, unsigned k, unsigned n_max,
                         unsigned depth = 0);

}  // namespace haltbound::prob
