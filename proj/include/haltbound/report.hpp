#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "haltbound/model.hpp"
#include "haltbound/rational.hpp"

namespace haltbound::report {

/// Per-size aggregate of a census record file.
struct SizeClassSummary {
  unsigned k = 0;
  std::uint64_t total = 0;
  std::uint64_t halted = 0;
  std::uint64_t exhausted = 0;
  std::uint64_t cycled = 0;
  std::map<unsigned, std::uint64_t> bitlen_histogram;  // bitlen_t -> count, halted only
};

/// Streams a census record file (one JSON object per line) into per-size
/// summaries, sorted by k. Never materializes the file, so it handles inputs
/// larger than memory. A malformed line raises an error naming its 1-based
/// line number.
std::vector<SizeClassSummary> aggregate(const std::string& records_path);

/// One row of the empirical-vs-predicted comparison. The empirical fraction
/// conditions on "halted within budget" (exhausted programs are unknowns and
/// stay in their own count); the predicted columns condition on halting at
/// all. The row keeps both so the CSV can never conflate them.
struct ComparisonRow {
  unsigned k = 0;
  unsigned m = 0;
  std::uint64_t halted_total = 0;
  std::uint64_t halted_below_m = 0;
  std::optional<ExactRational> empirical_fraction;  // empty when nothing halted
  ExactRational below_lo;   // exact enclosure of the predicted below-threshold mass
  ExactRational below_hi;
  ExactRational predicted_lower_bound;  // closed-form 1 - 2^(k-m+b)
  std::optional<bool> flagged;          // empirical < lower bound; empty when no fraction
};

/// For every size class and every m in [k+b+1, k+span]: the empirical
/// fraction of halted programs with bitlen_t < m against the exact
/// below-threshold enclosure and the closed-form lower bound.
std::vector<ComparisonRow> compare(const std::vector<SizeClassSummary>& summaries,
                                   const ComplexityModel& model, unsigned b, unsigned span = 64);

/// CSV with header k,m,halted_total,halted_below_m,empirical_fraction,
/// predicted_lower_bound,flag. Fractions are exact decimals rendered to 12
/// significant digits; rows are ordered k ascending then m ascending; output
/// is byte-stable across runs.
void emit_csv(const std::vector<ComparisonRow>& table, const std::string& path);

/// Raw histogram CSV: k,bitlen_t,count.
void emit_histograms(const std::vector<SizeClassSummary>& summaries, const std::string& path);

}  // namespace haltbound::report
