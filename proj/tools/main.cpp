// haltbound: exact halting-horizon probabilities, confidence-parameterized
// step budgets, and an exhaustive micro-machine census to stress-test them.
//
// All numeric output is exact: rationals as "a/b", big integers as full
// decimals. No floating point exists anywhere in the pipeline.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "haltbound/census.hpp"
#include "haltbound/crm.hpp"
#include "haltbound/horizon.hpp"
#include "haltbound/prob.hpp"
#include "haltbound/report.hpp"

namespace {

using namespace haltbound;

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitUsageError = 2;

struct ModelFlags {
  std::string model = "plain";
  unsigned c = 0;
  std::string g = "default";

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model, "complexity model: plain | sd")
        ->check(CLI::IsMember({"plain", "sd"}));
    cmd->add_option("--c", c, "plain-model constant c (bits)");
    cmd->add_option("--g", g, "self-delimiting overhead; only 'default' is built in")
        ->check(CLI::IsMember({"default"}));
  }

  ComplexityModel build() const {
    if (model == "plain") return ComplexityModel::plain(c);
    return ComplexityModel::self_delimiting_default();
  }
};

ExactRational parse_epsilon(const std::string& text) {
  ExactRational eps = ExactRational::parse(text);
  if (eps.sign() <= 0 || eps >= ExactRational(1))
    throw CLI::ValidationError("--epsilon", "must satisfy 0 < epsilon < 1");
  return eps;
}

int cmd_prob(const std::string& eq, const ModelFlags& mf, unsigned k, unsigned n, unsigned m,
             unsigned depth) {
  ComplexityModel model = mf.build();
  if (eq == "p1") {
    std::cout << prob::p1(model, k, n).to_string() << "\n";
  } else if (eq == "p2") {
    std::cout << prob::p2(model, k, n, depth).to_string() << "\n";
  } else if (eq == "tail") {
    std::cout << prob::tail_prob(model, k, m, depth).to_string() << "\n";
  } else {
    std::cout << prob::below_prob(model, k, m, depth).to_string() << "\n";
  }
  return kExitOk;
}

int cmd_horizon(const ModelFlags& mf, unsigned k, const std::string& epsilon_text,
                bool characteristic) {
  if (!epsilon_text.empty()) {
    horizon::HorizonResult r = horizon::solve(mf.build(), k, parse_epsilon(epsilon_text));
    std::cout << "m*=" << r.m_star << "\n";
    std::cout << "budget=" << r.budget.to_decimal() << "\n";
  }
  if (characteristic)
    std::cout << "characteristic=" << horizon::characteristic_time(k).to_decimal() << "\n";
  return kExitOk;
}

int cmd_census(const census::CensusConfig& config) {
  census::CensusSummary summary = census::run_census(config);
  if (summary.resumed) std::cout << "resumed from checkpoint\n";
  for (const census::SizeCounts& c : summary.per_size) {
    std::cout << "k=" << c.k << " total=" << c.total << " halted=" << c.halted
              << " exhausted=" << c.exhausted << " cycle=" << c.cycled
              << " budget=" << census::effective_budget(config, c.k).to_decimal() << "\n";
  }
  std::cout << "records=" << summary.records_written << " -> " << config.output_path << "\n";
  return kExitOk;
}

int cmd_witness(unsigned n, bool do_run, const std::string& cap_text, const std::string& emit) {
  crm::CrmProgram program = crm::witness(n);
  BigInt bound = crm::witness_step_bound(n);
  std::cout << "size_bits=" << program.size_bits() << "\n";
  std::cout << "bound=" << bound.to_decimal() << "\n";
  if (do_run) {
    BigInt cap = cap_text.empty() ? BigInt(100000000ul) : BigInt::from_decimal(cap_text);
    crm::RunOutcome outcome = crm::run(program, cap, false);
    if (const auto* h = std::get_if<crm::Halted>(&outcome)) {
      std::cout << "t=" << h->t.to_decimal() << " bitlen_t=" << h->bitlen_t << " "
                << (h->t >= bound ? "ok" : "below-bound") << "\n";
    } else {
      std::cout << "t=exhausted budget=" << cap.to_decimal() << "\n";
    }
  } else {
    // Closed-form runtime against the headline step bound for this size.
    BigInt runtime = crm::witness_runtime(n);
    BigInt characteristic = horizon::characteristic_time(program.size_bits());
    std::cout << "runtime=" << runtime.to_decimal() << "\n";
    std::cout << "characteristic=" << characteristic.to_decimal() << "\n";
    std::cout << "runtime_exceeds_characteristic=" << (runtime > characteristic ? "yes" : "no")
              << "\n";
  }
  if (!emit.empty()) {
    std::ofstream out(emit, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write program to " + emit);
    out << crm::to_wire(program) << "\n";
  }
  return kExitOk;
}

int cmd_report(const std::string& in_path, const std::string& out_path, const ModelFlags& mf,
               unsigned b, const std::string& hist_path) {
  auto summaries = report::aggregate(in_path);
  auto table = report::compare(summaries, mf.build(), b);
  report::emit_csv(table, out_path);
  if (!hist_path.empty()) report::emit_histograms(summaries, hist_path);
  std::uint64_t flagged = 0;
  for (const auto& row : table)
    if (row.flagged && *row.flagged) ++flagged;
  std::cout << "classes=" << summaries.size() << " rows=" << table.size()
            << " flagged=" << flagged << " -> " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Bayesian halting-horizon bounds and a micro-machine census"};
  app.require_subcommand(1);

  // prob
  auto* prob_cmd = app.add_subcommand("prob", "evaluate a probability formula exactly");
  std::string eq;
  ModelFlags prob_model;
  unsigned arg_k = 0, arg_n = 0, arg_m = 0, depth = 0;
  prob_cmd->add_option("--eq", eq, "p1 | p2 | tail | below")
      ->required()
      ->check(CLI::IsMember({"p1", "p2", "tail", "below"}));
  prob_model.attach(prob_cmd);
  prob_cmd->add_option("--k", arg_k, "program complexity in bits")->required();
  prob_cmd->add_option("--n", arg_n, "output size in bits (p1/p2)");
  prob_cmd->add_option("--m", arg_m, "size threshold in bits (tail/below)");
  prob_cmd->add_option("--depth", depth, "series truncation depth override (terms)");

  // horizon
  auto* horizon_cmd = app.add_subcommand("horizon", "confidence-parameterized step budgets");
  ModelFlags horizon_model;
  unsigned horizon_k = 0;
  std::string epsilon_text;
  bool characteristic = false;
  horizon_model.attach(horizon_cmd);
  horizon_cmd->add_option("--k", horizon_k, "program complexity in bits")->required();
  horizon_cmd->add_option("--epsilon", epsilon_text, "tail confidence: a/b or 2^-N");
  horizon_cmd->add_flag("--characteristic", characteristic, "also print the 2^(k+51) step bound");

  // census
  auto* census_cmd = app.add_subcommand("census", "run or resume an exhaustive program census");
  ModelFlags census_model;
  std::vector<unsigned> sizes;
  std::string census_epsilon = "2^-10", cap_text = "1000000";
  census::CensusConfig config;
  bool no_cycles = false;
  census_cmd->add_option("--sizes", sizes, "program sizes in bits (multiples of 9)")
      ->required()
      ->delimiter(',');
  census_cmd->add_option("--epsilon", census_epsilon, "horizon confidence for budgets");
  census_cmd->add_option("--cap", cap_text, "hard step-budget cap");
  census_cmd->add_option("--out", config.output_path, "records file (one JSON object per line)")
      ->required();
  census_cmd->add_option("--checkpoint", config.checkpoint_path, "checkpoint file")->required();
  census_cmd->add_option("--workers", config.workers, "worker threads");
  census_cmd->add_option("--s", config.counter_overhead_bits,
                         "step-counter overhead bits (shifts k in the budget)");
  census_cmd->add_option("--checkpoint-every", config.checkpoint_every,
                         "records between checkpoint updates");
  census_cmd->add_flag("--no-cycles", no_cycles, "disable cycle detection");
  census_model.attach(census_cmd);

  // witness
  auto* witness_cmd = app.add_subcommand("witness", "emit or run a long-running witness program");
  unsigned witness_n = 0;
  bool witness_run = false;
  std::string witness_cap, witness_emit;
  witness_cmd->add_option("--n", witness_n, "doubling count n")->required();
  witness_cmd->add_flag("--run", witness_run, "execute and print the measured step count");
  witness_cmd->add_option("--cap", witness_cap, "step budget when running");
  witness_cmd->add_option("--emit", witness_emit, "write the program in wire form to this path");

  // report
  auto* report_cmd = app.add_subcommand("report", "aggregate census records and compare bounds");
  ModelFlags report_model;
  std::string report_in, report_out, report_hist;
  unsigned report_b = 2;
  report_cmd->add_option("--in", report_in, "census records file")->required();
  report_cmd->add_option("--out", report_out, "comparison CSV path")->required();
  report_cmd->add_option("--b", report_b, "lower-bound constant b");
  report_cmd->add_option("--histograms", report_hist, "optional raw histogram CSV path");
  report_model.attach(report_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsageError;
  }

  try {
    if (prob_cmd->parsed()) return cmd_prob(eq, prob_model, arg_k, arg_n, arg_m, depth);
    if (horizon_cmd->parsed()) {
      if (epsilon_text.empty() && !characteristic)
        throw CLI::ValidationError("horizon", "needs --epsilon and/or --characteristic");
      return cmd_horizon(horizon_model, horizon_k, epsilon_text, characteristic);
    }
    if (census_cmd->parsed()) {
      config.sizes = sizes;
      config.epsilon = parse_epsilon(census_epsilon);
      config.budget_cap = BigInt::from_decimal(cap_text);
      config.detect_cycles = !no_cycles;
      config.model = census_model.build();
      return cmd_census(config);
    }
    if (witness_cmd->parsed()) return cmd_witness(witness_n, witness_run, witness_cap, witness_emit);
    if (report_cmd->parsed())
      return cmd_report(report_in, report_out, report_model, report_b, report_hist);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitUsageError;
}
