#include "haltbound/census.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include <json.hpp>

#include "haltbound/crm.hpp"
#include "haltbound/horizon.hpp"

namespace haltbound::census {

namespace {

constexpr std::uint64_t kChunkRecords = 512;

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string to_hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

void validate(const CensusConfig& config) {
  if (config.sizes.empty()) throw std::domain_error("census needs at least one size");
  for (unsigned k : config.sizes) {
    if (k == 0 || k % crm::kInstructionBits != 0)
      throw std::domain_error("census sizes must be positive multiples of 9 bits");
    if (k / crm::kInstructionBits > 7)
      throw std::domain_error("size class too large to enumerate exhaustively");
  }
  if (config.epsilon.sign() <= 0 || config.epsilon >= ExactRational(1))
    throw std::domain_error("epsilon must satisfy 0 < epsilon < 1");
  if (config.budget_cap < BigInt(1)) throw std::domain_error("budget cap must be >= 1");
  if (config.workers == 0) throw std::domain_error("workers must be >= 1");
  if (config.checkpoint_every == 0) throw std::domain_error("checkpoint interval must be >= 1");
  if (config.output_path.empty() || config.checkpoint_path.empty())
    throw std::domain_error("output and checkpoint paths are required");
}

struct SizePlan {
  unsigned k;
  std::uint64_t count;        // programs in this size class
  std::uint64_t first_idx;    // global idx of this class's first program
  BigInt budget;
  std::string budget_decimal;
};

std::vector<SizePlan> plan_sizes(const CensusConfig& config) {
  std::vector<SizePlan> plan;
  std::uint64_t next = 0;
  for (unsigned k : config.sizes) {
    BigInt budget = effective_budget(config, k);
    std::uint64_t count = crm::program_count(k).to_u64();
    plan.push_back(SizePlan{k, count, next, budget, budget.to_decimal()});
    next += count;
  }
  return plan;
}

const SizePlan& plan_for(const std::vector<SizePlan>& plan, std::uint64_t idx) {
  for (const SizePlan& p : plan)
    if (idx < p.first_idx + p.count) return p;
  throw std::logic_error("idx beyond the census");
}

/// One output line, fields in fixed order; t and bitlen_t only when halted.
std::string record_line(std::uint64_t idx, const SizePlan& plan, const crm::CrmProgram& program,
                        const crm::RunOutcome& outcome) {
  std::string line = "{\"idx\":" + std::to_string(idx) + ",\"k\":" + std::to_string(plan.k) +
                     ",\"code\":\"" + crm::to_wire(program) + "\"";
  if (const auto* h = std::get_if<crm::Halted>(&outcome)) {
    line += ",\"outcome\":\"halted\",\"t\":\"" + h->t.to_decimal() +
            "\",\"bitlen_t\":" + std::to_string(h->bitlen_t);
  } else if (std::holds_alternative<crm::BudgetExhausted>(outcome)) {
    line += ",\"outcome\":\"exhausted\"";
  } else {
    line += ",\"outcome\":\"cycle\"";
  }
  line += ",\"budget\":\"" + plan.budget_decimal + "\"}\n";
  return line;
}

void write_checkpoint_atomically(const std::string& path, const std::string& hash,
                                 std::uint64_t next_idx) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint temp file: " + tmp);
    out << "{\"config_hash\":\"" << hash << "\",\"next_idx\":" << next_idx << "}\n";
    out.flush();
    if (!out) throw std::runtime_error("checkpoint write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

struct Checkpoint {
  std::string config_hash;
  std::uint64_t next_idx;
};

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint: " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/true);
  return Checkpoint{j.at("config_hash").get<std::string>(), j.at("next_idx").get<std::uint64_t>()};
}

/// Byte offset of the end of record `wanted` (counting complete lines), so the
/// output can be truncated to the checkpointed prefix. Errors if the file
/// holds fewer complete records.
std::uintmax_t prefix_byte_length(const std::string& path, std::uint64_t wanted) {
  if (wanted == 0) return 0;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint expects existing output: " + path);
  std::uintmax_t offset = 0;
  std::uint64_t lines = 0;
  std::string line;
  while (lines < wanted && std::getline(in, line)) {
    if (in.eof()) break;  // no trailing newline: a torn tail, not a record
    offset += line.size() + 1;
    ++lines;
  }
  if (lines < wanted)
    throw std::runtime_error("output file holds fewer records than the checkpoint claims");
  return offset;
}

class OrderedWriter {
 public:
  OrderedWriter(std::ofstream out, std::string checkpoint_path, std::string hash,
                std::uint64_t first_chunk, std::uint64_t next_idx, std::uint64_t checkpoint_every)
      : out_(std::move(out)),
        checkpoint_path_(std::move(checkpoint_path)),
        hash_(std::move(hash)),
        next_chunk_(first_chunk),
        next_idx_(next_idx),
        checkpoint_every_(checkpoint_every) {}

  void deliver(std::uint64_t chunk, std::string bytes, std::uint64_t records) {
    std::unique_lock lock(mu_);
    pending_[chunk] = {std::move(bytes), records};
    cv_.notify_all();
  }

  void fail(std::exception_ptr error) {
    std::unique_lock lock(mu_);
    if (!error_) error_ = error;
    cv_.notify_all();
  }

  /// Drains chunks in order until `last_chunk` (exclusive) is written.
  void drain(std::uint64_t end_chunk) {
    std::unique_lock lock(mu_);
    while (next_chunk_ < end_chunk) {
      cv_.wait(lock, [&] { return error_ || pending_.count(next_chunk_) != 0; });
      if (error_) std::rethrow_exception(error_);
      auto node = pending_.extract(next_chunk_);
      lock.unlock();
      out_.write(node.mapped().bytes.data(),
                 static_cast<std::streamsize>(node.mapped().bytes.size()));
      if (!out_) throw std::runtime_error("census output write failed");
      next_idx_ += node.mapped().records;
      since_checkpoint_ += node.mapped().records;
      if (since_checkpoint_ >= checkpoint_every_) {
        out_.flush();
        write_checkpoint_atomically(checkpoint_path_, hash_, next_idx_);
        since_checkpoint_ = 0;
      }
      ++next_chunk_;
      lock.lock();
    }
  }

  void finish() {
    out_.flush();
    if (!out_) throw std::runtime_error("census output flush failed");
    write_checkpoint_atomically(checkpoint_path_, hash_, next_idx_);
  }

 private:
  struct Chunk {
    std::string bytes;
    std::uint64_t records;
  };

  std::ofstream out_;
  std::string checkpoint_path_;
  std::string hash_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::map<std::uint64_t, Chunk> pending_;
  std::exception_ptr error_;
  std::uint64_t next_chunk_;
  std::uint64_t next_idx_;
  std::uint64_t since_checkpoint_ = 0;
  std::uint64_t checkpoint_every_;
};

CensusSummary run_internal(const CensusConfig& config, bool require_checkpoint) {
  validate(config);
  std::string hash = config_hash(config);
  std::vector<SizePlan> plan = plan_sizes(config);
  std::uint64_t total = plan.empty() ? 0 : plan.back().first_idx + plan.back().count;

  std::uint64_t start_idx = 0;
  bool resumed = false;
  if (std::filesystem::exists(config.checkpoint_path)) {
    Checkpoint cp = read_checkpoint(config.checkpoint_path);
    if (cp.config_hash != hash)
      throw std::runtime_error("checkpoint belongs to a different census configuration");
    if (cp.next_idx > total) throw std::runtime_error("checkpoint index beyond the census");
    start_idx = cp.next_idx;
    resumed = true;
    // Anything past the checkpointed prefix (complete or torn) is recomputed.
    if (std::filesystem::exists(config.output_path)) {
      std::filesystem::resize_file(config.output_path,
                                   prefix_byte_length(config.output_path, start_idx));
    } else if (start_idx > 0) {
      throw std::runtime_error("checkpoint expects existing output: " + config.output_path);
    }
  } else if (require_checkpoint) {
    throw std::runtime_error("resume requires an existing checkpoint: " + config.checkpoint_path);
  }

  std::ofstream out(config.output_path,
                    resumed ? (std::ios::app | std::ios::binary) : (std::ios::trunc | std::ios::binary));
  if (!out) throw std::runtime_error("cannot open census output: " + config.output_path);

  // Chunk boundaries are absolute in idx space, so a resume re-enters the
  // same grid regardless of where the previous run stopped.
  std::uint64_t first_chunk = start_idx / kChunkRecords;
  std::uint64_t end_chunk = (total + kChunkRecords - 1) / kChunkRecords;
  OrderedWriter writer(std::move(out), config.checkpoint_path, hash, first_chunk, start_idx,
                       config.checkpoint_every);

  std::atomic<std::uint64_t> chunk_cursor{first_chunk};
  auto work = [&] {
    try {
      while (true) {
        std::uint64_t chunk = chunk_cursor.fetch_add(1);
        if (chunk >= end_chunk) return;
        std::uint64_t lo = std::max(chunk * kChunkRecords, start_idx);
        std::uint64_t hi = std::min((chunk + 1) * kChunkRecords, total);
        std::string bytes;
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          const SizePlan& p = plan_for(plan, idx);
          crm::CrmProgram program = crm::program_at(p.k, idx - p.first_idx);
          crm::RunOutcome outcome = crm::run(program, p.budget, config.detect_cycles);
          bytes += record_line(idx, p, program, outcome);
        }
        writer.deliver(chunk, std::move(bytes), hi - lo);
      }
    } catch (...) {
      writer.fail(std::current_exception());
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(config.workers);
  for (unsigned i = 0; i < config.workers; ++i) pool.emplace_back(work);
  try {
    writer.drain(end_chunk);
  } catch (...) {
    for (auto& t : pool) t.join();
    throw;
  }
  for (auto& t : pool) t.join();
  writer.finish();

  // Summary comes from re-reading the file: cheap at desk scale and it counts
  // what was actually persisted, resumed prefix included.
  CensusSummary summary;
  summary.resumed = resumed;
  summary.records_written = total - start_idx;
  std::ifstream check(config.output_path);
  std::string line;
  std::map<unsigned, SizeCounts> by_k;
  while (std::getline(check, line)) {
    nlohmann::json j = nlohmann::json::parse(line);
    unsigned k = j.at("k").get<unsigned>();
    SizeCounts& c = by_k[k];
    c.k = k;
    ++c.total;
    std::string outcome = j.at("outcome").get<std::string>();
    if (outcome == "halted")
      ++c.halted;
    else if (outcome == "exhausted")
      ++c.exhausted;
    else
      ++c.cycled;
  }
  for (auto& [k, counts] : by_k) summary.per_size.push_back(counts);
  return summary;
}

}  // namespace

std::string config_hash(const CensusConfig& config) {
  std::string canon = "sizes=";
  for (std::size_t i = 0; i < config.sizes.size(); ++i) {
    if (i) canon += ',';
    canon += std::to_string(config.sizes[i]);
  }
  canon += ";epsilon=" + config.epsilon.to_string();
  canon += ";cap=" + config.budget_cap.to_decimal();
  canon += ";cycles=" + std::string(config.detect_cycles ? "1" : "0");
  canon += ";model=" + config.model.description();
  canon += ";s=" + std::to_string(config.counter_overhead_bits);
  return to_hex16(fnv1a(canon));
}

BigInt effective_budget(const CensusConfig& config, unsigned k) {
  BigInt derived =
      horizon::budget_steps(config.model, k + config.counter_overhead_bits, config.epsilon);
  return derived <= config.budget_cap ? derived : config.budget_cap;
}

CensusSummary run_census(const CensusConfig& config) { return run_internal(config, false); }

CensusSummary resume(const CensusConfig& config) { return run_internal(config, true); }

}  // namespace haltbound::census
