#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "haltbound/census.hpp"

using namespace haltbound;
using namespace haltbound::census;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("haltbound_census_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

CensusConfig k9_config(const fs::path& dir, const std::string& tag) {
  CensusConfig config;
  config.sizes = {9};
  config.epsilon = ExactRational::pow2(-10);
  config.budget_cap = BigInt(1000000ul);
  config.detect_cycles = true;
  config.model = ComplexityModel::plain(0);
  config.output_path = (dir / (tag + ".jsonl")).string();
  config.checkpoint_path = (dir / (tag + ".ckpt")).string();
  config.workers = 1;
  config.checkpoint_every = 100;
  return config;
}

}  // namespace

TEST_CASE("effective budget: horizon-derived, capped") {
  TempDir dir;
  CensusConfig config = k9_config(dir.path, "budget");
  // horizon at k=9, epsilon 2^-10 gives m*=19, i.e. 2^19 - 1 steps.
  CHECK(effective_budget(config, 9) == BigInt::pow2_minus(19, 1));
  config.budget_cap = BigInt(1000ul);
  CHECK(effective_budget(config, 9) == BigInt(1000ul));
  // The counter-overhead metadata shifts k in the derivation.
  config.budget_cap = BigInt(100000000ul);
  config.counter_overhead_bits = 2;
  CHECK(effective_budget(config, 9) == BigInt::pow2_minus(21, 1));
}

TEST_CASE("config hash covers result-affecting fields only") {
  TempDir dir;
  CensusConfig a = k9_config(dir.path, "a");
  CensusConfig b = a;
  b.workers = 7;
  b.checkpoint_every = 1;
  b.output_path = (dir.path / "elsewhere.jsonl").string();
  CHECK(config_hash(a) == config_hash(b));

  CensusConfig c = a;
  c.detect_cycles = false;
  CHECK(config_hash(a) != config_hash(c));
  CensusConfig d = a;
  d.epsilon = ExactRational::pow2(-11);
  CHECK(config_hash(a) != config_hash(d));
  CensusConfig e = a;
  e.model = ComplexityModel::self_delimiting_default();
  CHECK(config_hash(a) != config_hash(e));
}

TEST_CASE("k=9 census: record schema, order, and the pinned outcome counts") {
  TempDir dir;
  CensusConfig config = k9_config(dir.path, "golden");
  CensusSummary summary = run_census(config);

  REQUIRE(summary.per_size.size() == 1);
  CHECK(summary.per_size[0].k == 9);
  CHECK(summary.per_size[0].total == 448);
  CHECK(summary.per_size[0].halted == 444);
  CHECK(summary.per_size[0].exhausted == 0);
  CHECK(summary.per_size[0].cycled == 4);
  CHECK_FALSE(summary.resumed);

  std::ifstream in(config.output_path);
  std::string line;
  std::uint64_t expected_idx = 0;
  while (std::getline(in, line)) {
    nlohmann::json j = nlohmann::json::parse(line);
    CHECK(j.at("idx").get<std::uint64_t>() == expected_idx);
    CHECK(j.at("k").get<unsigned>() == 9);
    CHECK(j.at("budget").get<std::string>() == "524287");
    std::string outcome = j.at("outcome").get<std::string>();
    if (outcome == "halted") {
      // Budget law: a halted step count fits inside the budget's bit length.
      CHECK(j.at("t").is_string());
      CHECK(j.at("bitlen_t").get<unsigned>() <= BigInt(524287ul).bit_length());
      CHECK(j.size() == 7);
    } else {
      CHECK(outcome == "cycle");  // nothing exhausts at this size
      CHECK_FALSE(j.contains("t"));
      CHECK_FALSE(j.contains("bitlen_t"));
      CHECK(j.size() == 5);
    }
    ++expected_idx;
  }
  CHECK(expected_idx == 448);

  // First record: the all-zero program, one step, one bit.
  std::ifstream again(config.output_path);
  std::getline(again, line);
  nlohmann::json first = nlohmann::json::parse(line);
  CHECK(first.at("code").get<std::string>() == "9:000");
  CHECK(first.at("outcome").get<std::string>() == "halted");
  CHECK(first.at("t").get<std::string>() == "1");
  CHECK(first.at("bitlen_t").get<unsigned>() == 1);
}

TEST_CASE("two full runs are byte-identical; worker count never shows in the bytes") {
  TempDir dir;
  CensusConfig one = k9_config(dir.path, "one");
  CensusConfig two = k9_config(dir.path, "two");
  two.workers = 3;
  two.checkpoint_every = 7;
  run_census(one);
  run_census(two);
  CHECK(slurp(one.output_path) == slurp(two.output_path));
  CHECK(slurp(one.checkpoint_path) == slurp(two.checkpoint_path));
}

TEST_CASE("multi-size census keeps one global idx order") {
  TempDir dir;
  CensusConfig config = k9_config(dir.path, "multi");
  config.sizes = {9, 18};
  config.budget_cap = BigInt(200ul);  // keep the k=18 leg quick
  CensusSummary summary = run_census(config);
  REQUIRE(summary.per_size.size() == 2);
  CHECK(summary.per_size[0].k == 9);
  CHECK(summary.per_size[1].k == 18);
  CHECK(summary.per_size[1].total == 200704);
  CHECK(summary.per_size[1].halted + summary.per_size[1].exhausted +
            summary.per_size[1].cycled ==
        200704);

  std::ifstream in(config.output_path);
  std::string line;
  std::uint64_t idx = 0;
  unsigned last_k = 9;
  while (std::getline(in, line)) {
    nlohmann::json j = nlohmann::json::parse(line);
    CHECK(j.at("idx").get<std::uint64_t>() == idx);
    unsigned k = j.at("k").get<unsigned>();
    CHECK(k >= last_k);
    last_k = k;
    ++idx;
  }
  CHECK(idx == 448 + 200704);
}

TEST_CASE("a crashed run resumes to the exact bytes of an uninterrupted one") {
  TempDir dir;
  CensusConfig reference = k9_config(dir.path, "ref");
  run_census(reference);
  std::string want = slurp(reference.output_path);

  // Fabricate the on-disk shape of a kill: a prefix of complete records, a
  // torn final line, and a checkpoint that lags behind what was written.
  std::mt19937 rng(424242u);
  for (int trial = 0; trial < 3; ++trial) {
    CensusConfig crashed = k9_config(dir.path, "crash" + std::to_string(trial));
    std::uint64_t checkpointed = std::uniform_int_distribution<std::uint64_t>(1, 440)(rng);
    std::uint64_t written = checkpointed + std::uniform_int_distribution<std::uint64_t>(0, 7)(rng);

    std::istringstream full(want);
    std::string line;
    std::ofstream partial(crashed.output_path, std::ios::binary);
    for (std::uint64_t i = 0; i < written; ++i) {
      std::getline(full, line);
      partial << line << "\n";
    }
    std::getline(full, line);
    partial << line.substr(0, line.size() / 2);  // torn tail, no newline
    partial.close();
    {
      std::ofstream ckpt(crashed.checkpoint_path);
      ckpt << "{\"config_hash\":\"" << config_hash(crashed) << "\",\"next_idx\":" << checkpointed
           << "}\n";
    }

    CensusSummary summary = run_census(crashed);
    CHECK(summary.resumed);
    CHECK(summary.records_written == 448 - checkpointed);
    CHECK(slurp(crashed.output_path) == want);
  }
}

TEST_CASE("resume refuses a checkpoint from a different configuration") {
  TempDir dir;
  CensusConfig config = k9_config(dir.path, "mismatch");
  run_census(config);

  CensusConfig other = config;
  other.epsilon = ExactRational::pow2(-12);
  CHECK_THROWS_WITH_AS(run_census(other), doctest::Contains("different census"),
                       std::runtime_error);

  // resume() additionally requires the checkpoint to exist at all.
  CensusConfig fresh = k9_config(dir.path, "fresh");
  CHECK_THROWS_WITH_AS(resume(fresh), doctest::Contains("requires an existing checkpoint"),
                       std::runtime_error);
  CHECK(resume(config).records_written == 0);
}

TEST_CASE("config validation") {
  TempDir dir;
  CensusConfig config = k9_config(dir.path, "bad");
  config.sizes = {10};
  CHECK_THROWS_AS(run_census(config), std::domain_error);
  config.sizes = {};
  CHECK_THROWS_AS(run_census(config), std::domain_error);
  config = k9_config(dir.path, "bad2");
  config.epsilon = ExactRational(1);
  CHECK_THROWS_AS(run_census(config), std::domain_error);
  config = k9_config(dir.path, "bad3");
  config.workers = 0;
  CHECK_THROWS_AS(run_census(config), std::domain_error);
}
