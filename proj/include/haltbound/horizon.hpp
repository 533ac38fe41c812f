#pragma once

#include <string>
#include <vector>

#include "haltbound/bigint.hpp"
#include "haltbound/model.hpp"
#include "haltbound/rational.hpp"

namespace haltbound::horizon {

/// Confidence-parameterized halting horizon for complexity k: the minimal
/// output bit-size m* whose exceedance probability drops to epsilon or below,
/// and the largest step count whose bit length fits under m*.
struct HorizonResult {
  unsigned m_star;        // minimal m with tail_prob(model, k, m).hi <= epsilon
  BigInt budget;          // 2^m* - 1: every t with bitlen(t) <= m* satisfies t <= budget
  ExactRational epsilon;
  std::string model;      // model description the scan ran under
};

/// Minimal m with tail_prob(model, k, m).hi <= epsilon, by linear scan from
/// the smallest admissible m. Requires 0 < epsilon < 1.
unsigned horizon_bits(const ComplexityModel& model, unsigned k, const ExactRational& epsilon);

/// 2^horizon_bits(...) - 1. A halting program of complexity k runs longer
/// than this with probability at most epsilon under the model.
BigInt budget_steps(const ComplexityModel& model, unsigned k, const ExactRational& epsilon);

HorizonResult solve(const ComplexityModel& model, unsigned k, const ExactRational& epsilon);

/// The headline step bound 2^(k+51), exactly. Fixed 2^-50-ish confidence
/// baked in; budget_steps is the tunable variant (and is never larger at
/// epsilon = 2^-50).
BigInt characteristic_time(unsigned k);

/// Closed-form lower bound 1 - 2^(k-m+b) for the below-threshold probability.
/// Requires m >= k + b.
ExactRational lower_bound_closed(unsigned k, unsigned m, unsigned b);

/// Sweeps m over [m_lo, m_hi] and returns every m where the closed-form lower
/// bound exceeds below_prob(model, k, m).lo. An empty result certifies the
/// bound for this (model, k, b) over the range. b = 0 is accepted for sweep
/// experiments even though certified use starts at b >= 1.
std::vector<unsigned> check_lower_bound(const ComplexityModel& model, unsigned k, unsigned m_lo,
                                        unsigned m_hi, unsigned b);

}  // namespace haltbound::horizon
