#include "haltbound/horizon.hpp"

#include <stdexcept>

#include "haltbound/prob.hpp"

namespace haltbound::horizon {

namespace {

unsigned smallest_admissible_m(const ComplexityModel& model, unsigned k) {
  if (model.is_plain()) return k > model.c() + 1 ? k - model.c() : 1;
  // Smallest m whose series start is not below the denominator's: the exact
  // rung value l + g(l) (which may sit one below k when no exact solution
  // of l + g(l) = k exists).
  unsigned l = prob::solve_l(model.overhead(), k);
  return l + model.g(l);
}

}  // namespace

unsigned horizon_bits(const ComplexityModel& model, unsigned k, const ExactRational& epsilon) {
  if (epsilon.sign() <= 0 || epsilon >= ExactRational(1))
    throw std::domain_error("epsilon must satisfy 0 < epsilon < 1");
  // Ranges here are at most a few hundred bits; exact linear scan.
  for (unsigned m = smallest_admissible_m(model, k);; ++m) {
    if (prob::tail_prob(model, k, m).hi <= epsilon) return m;
  }
}

BigInt budget_steps(const ComplexityModel& model, unsigned k, const ExactRational& epsilon) {
  return BigInt::pow2_minus(horizon_bits(model, k, epsilon), 1);
}

HorizonResult solve(const ComplexityModel& model, unsigned k, const ExactRational& epsilon) {
  unsigned m_star = horizon_bits(model, k, epsilon);
  return HorizonResult{m_star, BigInt::pow2_minus(m_star, 1), epsilon, model.description()};
}

BigInt characteristic_time(unsigned k) {
  if (k == 0) throw std::domain_error("complexity k must be >= 1");
  return BigInt::pow2(static_cast<unsigned long>(k) + 51);
}

ExactRational lower_bound_closed(unsigned k, unsigned m, unsigned b) {
  if (k == 0 || m == 0) throw std::domain_error("k and m must be >= 1");
  if (m < static_cast<unsigned long>(k) + b) throw std::domain_error("requires m >= k + b");
  return ExactRational::one_minus_pow2(
      static_cast<long>(k) + static_cast<long>(b) - static_cast<long>(m));
}

std::vector<unsigned> check_lower_bound(const ComplexityModel& model, unsigned k, unsigned m_lo,
                                        unsigned m_hi, unsigned b) {
  std::vector<unsigned> violations;
  for (unsigned m = m_lo; m <= m_hi; ++m) {
    if (lower_bound_closed(k, m, b) > prob::below_prob(model, k, m).lo) violations.push_back(m);
  }
  return violations;
}

}  // namespace haltbound::horizon
