#include <doctest.h>

#include <stdexcept>

#include "haltbound/prob.hpp"

using namespace haltbound;
using namespace haltbound::prob;

namespace {

// Half the Erdos-Borwein constant, 60 digits, derived by independent
// high-precision summation of sum_{i>=1} 1/(2^(i+1)-2). The true value lies
// in [d, d+2) * 10^-60 for the frozen digit block d.
const char* kHalfErdosBorwein60 =
    "803347576207645881891650761595462290240289835752878217889039";

ExactRational digits60(const char* digits, int offset) {
  return ExactRational::fraction(BigInt::from_decimal(digits) + BigInt(offset),
                                 BigInt::from_decimal("1" + std::string(60, '0')));
}

bool within_relative(const ProbInterval& iv, const ExactRational& target,
                     const ExactRational& rel) {
  ExactRational slack = target * rel;
  return (iv.lo - target).abs() <= slack && (iv.hi - target).abs() <= slack;
}

const ComplexityModel plain0 = ComplexityModel::plain(0);
const ComplexityModel plain2 = ComplexityModel::plain(2);
const ComplexityModel plain3 = ComplexityModel::plain(3);
const ComplexityModel sd = ComplexityModel::self_delimiting_default();

}  // namespace

TEST_CASE("tail_sum(plain 0, 1) encloses half the Erdos-Borwein constant") {
  ProbInterval s = tail_sum(plain0, 1);
  CHECK(s.lo <= digits60(kHalfErdosBorwein60, 2));
  CHECK(s.hi >= digits60(kHalfErdosBorwein60, 0));
  CHECK(s.width() <= ExactRational::pow2(-64));
}

TEST_CASE("tail_sum(plain 0, 10) sits strictly inside (2^-10, 2^-9)") {
  ProbInterval s = tail_sum(plain0, 10);
  CHECK(s.lo > ExactRational::pow2(-10));
  CHECK(s.hi < ExactRational::pow2(-9));
  // The closed-form approximation 1/2^k is good to relative 2^-9 here.
  CHECK(within_relative(s, ExactRational::pow2(-10), ExactRational::pow2(-9)));
}

TEST_CASE("tail_sum bracketing holds strictly for every k up to 80") {
  for (unsigned k = 1; k <= 80; ++k) {
    ProbInterval s = tail_sum(plain0, k);
    CHECK(s.lo > ExactRational::pow2(-static_cast<long>(k)));
    CHECK(s.hi < ExactRational::pow2(-static_cast<long>(k) + 1));
  }
}

TEST_CASE("tail_sum rejects k = 0 and an infeasible self-delimiting start") {
  CHECK_THROWS_AS(tail_sum(plain0, 0), std::domain_error);
  CHECK_THROWS_AS(tail_sum(sd, 1), std::domain_error);
}

TEST_CASE("deeper truncation gives nested enclosures with geometric widths") {
  ProbInterval a = tail_sum(plain0, 10, 20);
  ProbInterval b = tail_sum(plain0, 10, 40);
  ProbInterval c = tail_sum(plain0, 10, 80);
  CHECK(a.contains(b));
  CHECK(b.contains(c));
  CHECK(b.width() * ExactRational::pow2(10) < a.width());
  CHECK(c.width() * ExactRational::pow2(10) < b.width());

  ProbInterval t1 = tail_prob(sd, 20, 30, 32);
  ProbInterval t2 = tail_prob(sd, 20, 30, 96);
  CHECK(t1.contains(t2));
  CHECK(t2.width() < t1.width());
}

TEST_CASE("p1 evaluates the prior exactly") {
  CHECK(p1(plain0, 4, 4).to_string() == "8/15");
  CHECK(p1(plain0, 1, 1).to_string() == "1");
  CHECK(p1(plain2, 3, 3).to_string() == "4/31");
  // Self-delimiting: overhead g(n) replaces c.
  CHECK(p1(sd, 10, 7).to_string() ==
        ExactRational::fraction(BigInt::pow2(10), BigInt::pow2_minus(11, 2)).to_string());

  CHECK_THROWS_AS(p1(plain0, 5, 4), std::domain_error);
  CHECK_THROWS_AS(p1(sd, 20, 15), std::domain_error);  // 15 + g(15) = 19 < 20
  CHECK_THROWS_AS(p1(plain0, 0, 1), std::domain_error);
  CHECK_THROWS_AS(p1(plain0, 1, 0), std::domain_error);
}

TEST_CASE("p2 tracks the closed form at the documented accuracy") {
  CHECK(within_relative(p2(plain0, 10, 10), ExactRational::pow2(-1), ExactRational::pow2(-9)));
  CHECK(within_relative(p2(plain0, 10, 20), ExactRational::pow2(-11), ExactRational::pow2(-8)));
  CHECK_THROWS_AS(p2(plain0, 10, 9), std::domain_error);
  CHECK_THROWS_AS(p2(plain0, 10, 0), std::domain_error);
}

TEST_CASE("p2 accuracy against the closed form across k, including c > 0") {
  for (unsigned k : {10u, 20u, 37u, 64u}) {
    ExactRational rel = ExactRational::pow2(-static_cast<long>(k) + 2);
    for (unsigned n : {k, k + 5, k + 30}) {
      CHECK(within_relative(p2(plain0, k, n), p2_closed(k, n, 0), rel));
    }
    CHECK(within_relative(p2(plain3, k, k), p2_closed(k, k, 3), rel));
  }
}

TEST_CASE("p2_closed boundary and examples") {
  CHECK(p2_closed(10, 10, 0).to_string() == "1/2");
  CHECK(p2_closed(10, 15, 3).to_string() == "1/512");
  for (unsigned k : {1u, 7u, 33u}) CHECK(p2_closed(k, k, 0).to_string() == "1/2");
  CHECK(p2_closed(13, 10, 3).to_string() == "1/2");  // k = n + c exactly
  CHECK_THROWS_AS(p2_closed(11, 10, 0), std::domain_error);
}

TEST_CASE("self-delimiting p2 admits every size the normalization sum covers") {
  // k = 20 has no exact rung: solve_l gives 15 with 15 + g(15) = 19 < 20.
  // p1 rejects n = 15, but the posterior support starts there.
  CHECK(min_output_size(sd, 20) == 15);
  CHECK_NOTHROW(p2(sd, 20, 15));
  CHECK_THROWS_AS(p2(sd, 20, 14), std::domain_error);

  CHECK(min_output_size(plain0, 10) == 10);
  CHECK(min_output_size(plain3, 10) == 7);
  CHECK(min_output_size(ComplexityModel::plain(5), 2) == 1);
}

TEST_CASE("tail_prob examples at plain c = 0, k = 10") {
  ProbInterval at_k = tail_prob(plain0, 10, 10);
  CHECK(at_k.contains(ExactRational(1)));
  CHECK(at_k.lo == ExactRational(1));

  CHECK(within_relative(tail_prob(plain0, 10, 20), ExactRational::pow2(-10),
                        ExactRational::pow2(-8)));
  CHECK(tail_prob(plain0, 10, 60).hi <= ExactRational::pow2(-50));
  CHECK_THROWS_AS(tail_prob(plain0, 10, 9), std::domain_error);
}

TEST_CASE("tail_closed examples") {
  CHECK(tail_closed(10, 60, 0) == ExactRational::pow2(-50));
  CHECK(tail_closed(10, 10, 0) == ExactRational(1));
  CHECK(tail_closed(7, 4, 3) == ExactRational(1));
  CHECK(tail_closed(20, 30, 5) == ExactRational::pow2(-15));
  CHECK_THROWS_AS(tail_closed(10, 9, 0), std::domain_error);
}

TEST_CASE("below_prob complements tail_prob endpoint-wise, exactly") {
  for (unsigned m : {10u, 11u, 15u, 35u, 60u}) {
    ProbInterval tail = tail_prob(plain0, 10, m);
    ProbInterval below = below_prob(plain0, 10, m);
    CHECK(below.lo + tail.hi == ExactRational(1));
    CHECK(below.hi + tail.lo == ExactRational(1));
  }
  for (unsigned m : {20u, 26u, 44u}) {
    ProbInterval tail = tail_prob(sd, 20, m);
    ProbInterval below = below_prob(sd, 20, m);
    CHECK(below.lo + tail.hi == ExactRational(1));
    CHECK(below.hi + tail.lo == ExactRational(1));
  }

  CHECK(below_prob(plain0, 10, 60).lo >= ExactRational::one_minus_pow2(-49));
  CHECK(below_prob(plain0, 10, 10).contains(ExactRational(0)));
}

TEST_CASE("tail_prob and below_prob are monotone in m, endpoint-wise") {
  for (const ComplexityModel* model : {&plain0, &plain2}) {
    ProbInterval prev = tail_prob(*model, 12, 12);
    for (unsigned m = 13; m <= 40; ++m) {
      ProbInterval cur = tail_prob(*model, 12, m);
      CHECK(cur.hi <= prev.hi);
      CHECK(cur.lo <= prev.lo);
      CHECK(below_prob(*model, 12, m).lo >= below_prob(*model, 12, m - 1).lo);
      prev = cur;
    }
  }
  // Fixed depth for the self-delimiting sweep: where two consecutive
  // thresholds resolve to the same series start (a skipped overhead rung)
  // the value is identical, and the auto depth would add m-dependent
  // precision on top of the tie.
  ProbInterval prev = tail_prob(sd, 20, 20, 200);
  for (unsigned m = 21; m <= 60; ++m) {
    ProbInterval cur = tail_prob(sd, 20, m, 200);
    CHECK(cur.hi <= prev.hi);
    CHECK(cur.lo <= prev.lo);
    prev = cur;
  }
}

TEST_CASE("p2 upper endpoint is non-increasing in n") {
  ExactRational prev_hi = p2(plain0, 12, 12).hi;
  for (unsigned n = 13; n <= 40; ++n) {
    ExactRational hi = p2(plain0, 12, n).hi;
    CHECK(hi <= prev_hi);
    prev_hi = hi;
  }
}

TEST_CASE("self-delimiting tail_prob requires the numerator start at or past the denominator's") {
  // k = 20 resolves to l = 15; m = 19 also resolves to 15 (19 = 15 + g(15))
  // and is the smallest admissible threshold, one below k itself.
  CHECK(tail_prob(sd, 20, 19).lo == ExactRational(1));
  CHECK_THROWS_AS(tail_prob(sd, 20, 18), std::domain_error);
}

TEST_CASE("the posterior over admissible sizes sums to exactly one") {
  struct Case {
    const ComplexityModel* model;
    unsigned k;
  };
  for (const Case& c : {Case{&plain0, 10}, Case{&plain3, 10}, Case{&sd, 10}, Case{&sd, 20}}) {
    for (unsigned extra : {4u, 10u}) {
      RationalInterval mass = p2_mass(*c.model, c.k, c.k + extra);
      CHECK(mass.contains(ExactRational(1)));
      CHECK(mass.width() <= ExactRational::pow2(-60));
    }
  }
  CHECK_THROWS_AS(p2_mass(plain0, 10, 9), std::domain_error);
}

TEST_CASE("solve_l picks the largest feasible start") {
  CHECK(solve_l(default_log_overhead, 20) == 15);
  CHECK(solve_l(default_log_overhead, 10) == 7);
  CHECK(solve_l(default_log_overhead, 1024) == 1014);
  CHECK_THROWS_AS(solve_l(default_log_overhead, 1), std::domain_error);

  OverheadFn zero = [](unsigned) { return 0u; };
  for (unsigned k : {1u, 5u, 64u}) CHECK(solve_l(zero, k) == k);

  for (unsigned k = 2; k <= 200; ++k) {
    unsigned l = solve_l(default_log_overhead, k);
    CHECK(l + default_log_overhead(l) <= k);
    CHECK(l + 1 + default_log_overhead(l + 1) > k);
  }
}

TEST_CASE("a zero overhead function makes the self-delimiting model collapse to plain c = 0") {
  ComplexityModel sd0 = ComplexityModel::self_delimiting([](unsigned) { return 0u; }, "zero");
  for (unsigned k : {3u, 10u}) {
    ProbInterval a = tail_sum(sd0, k);
    ProbInterval b = tail_sum(plain0, k);
    // Same series, same partial sums; only the general-purpose remainder
    // brackets are looser on the self-delimiting path.
    CHECK(a.contains(b));
    CHECK(a.width() <= b.width() * ExactRational(4));
  }
  CHECK(tail_prob(sd0, 10, 20).contains(tail_prob(plain0, 10, 20)));
}

TEST_CASE("self-delimiting and plain below_prob agree where both are near certainty") {
  // At m = k both are exactly [1,1]-complement, i.e. zero distance.
  ProbInterval a = below_prob(sd, 50, 50);
  ProbInterval b = below_prob(plain0, 50, 50);
  CHECK(a.lo == b.lo);
  CHECK(a.hi == b.hi);

  ProbInterval c = below_prob(sd, 100, 150);
  ProbInterval d = below_prob(plain0, 100, 150);
  CHECK((c.lo - d.lo).abs() <= ExactRational::pow2(-40));
  CHECK((c.hi - d.hi).abs() <= ExactRational::pow2(-40));
}
