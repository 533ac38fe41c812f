#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "haltbound/bigint.hpp"
#include "haltbound/model.hpp"
#include "haltbound/rational.hpp"

namespace haltbound::census {

/// Parameters of one exhaustive run. Result-affecting fields (sizes, epsilon,
/// budget_cap, detect_cycles, model, counter_overhead_bits) are hashed into
/// the checkpoint so a resume against different parameters is refused; paths,
/// worker count and checkpoint cadence may change freely because the output
/// bytes are a pure function of the hashed fields.
struct CensusConfig {
  std::vector<unsigned> sizes;        // bit sizes, each a positive multiple of 9
  ExactRational epsilon;              // horizon confidence for the per-size budget
  BigInt budget_cap;                  // hard cap on the per-size step budget
  bool detect_cycles = true;
  ComplexityModel model = ComplexityModel::plain(0);
  unsigned counter_overhead_bits = 0; // metadata s: shifts k in the budget derivation
  std::string output_path;
  std::string checkpoint_path;
  unsigned workers = 1;
  std::uint64_t checkpoint_every = 1024;  // records between checkpoint updates
};

struct SizeCounts {
  unsigned k = 0;
  std::uint64_t total = 0;
  std::uint64_t halted = 0;
  std::uint64_t exhausted = 0;
  std::uint64_t cycled = 0;
};

struct CensusSummary {
  std::vector<SizeCounts> per_size;
  std::uint64_t records_written = 0;  // by this invocation (resume writes fewer)
  bool resumed = false;
};

/// FNV-1a/64 over the canonical rendering of the result-affecting fields,
/// as 16 lowercase hex digits.
std::string config_hash(const CensusConfig& config);

/// Step budget for one size class: min(budget_steps(model, k + s, epsilon),
/// budget_cap).
BigInt effective_budget(const CensusConfig& config, unsigned k);

/// Runs every program of every configured size once under the size-appropriate
/// budget, appending one record per line in idx order. Checkpoints
/// {config_hash, next_idx} atomically (temp file + rename) every
/// checkpoint_every records. If a matching checkpoint already exists the run
/// continues from it; a checkpoint whose hash mismatches the config is an
/// error. Output bytes are a pure function of the config: the worker count
/// changes only the wall time.
CensusSummary run_census(const CensusConfig& config);

/// Continues an interrupted run. Requires the checkpoint to exist and match;
/// the completed prefix of the output is preserved verbatim and anything
/// beyond the checkpointed index (including torn tails) is recomputed.
CensusSummary resume(const CensusConfig& config);

}  // namespace haltbound::census
