#include "haltbound/report.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "haltbound/horizon.hpp"
#include "haltbound/prob.hpp"

namespace haltbound::report {

namespace {

constexpr unsigned kFractionDigits = 12;

[[noreturn]] void malformed(std::uint64_t line_number, const std::string& why) {
  throw std::runtime_error("malformed record at line " + std::to_string(line_number) + ": " + why);
}

}  // namespace

std::vector<SizeClassSummary> aggregate(const std::string& records_path) {
  std::ifstream in(records_path);
  if (!in) throw std::runtime_error("cannot open records file: " + records_path);

  std::map<unsigned, SizeClassSummary> by_k;
  std::string line;
  std::uint64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) malformed(line_number, "empty line");
    nlohmann::json j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) malformed(line_number, "not a JSON object");
    if (!j.contains("k") || !j.contains("outcome")) malformed(line_number, "missing k/outcome");

    unsigned k = j["k"].get<unsigned>();
    SizeClassSummary& s = by_k[k];
    s.k = k;
    ++s.total;
    std::string outcome = j["outcome"].get<std::string>();
    if (outcome == "halted") {
      ++s.halted;
      if (!j.contains("bitlen_t")) malformed(line_number, "halted record without bitlen_t");
      ++s.bitlen_histogram[j["bitlen_t"].get<unsigned>()];
    } else if (outcome == "exhausted") {
      ++s.exhausted;
    } else if (outcome == "cycle") {
      ++s.cycled;
    } else {
      malformed(line_number, "unknown outcome '" + outcome + "'");
    }
  }

  std::vector<SizeClassSummary> out;
  out.reserve(by_k.size());
  for (auto& [k, s] : by_k) out.push_back(std::move(s));
  return out;
}

std::vector<ComparisonRow> compare(const std::vector<SizeClassSummary>& summaries,
                                   const ComplexityModel& model, unsigned b, unsigned span) {
  if (summaries.empty()) throw std::domain_error("compare needs at least one size class");
  std::vector<ComparisonRow> table;
  for (const SizeClassSummary& s : summaries) {
    // Counting halted programs below m walks the histogram once per class.
    std::vector<std::pair<unsigned, std::uint64_t>> hist(s.bitlen_histogram.begin(),
                                                         s.bitlen_histogram.end());
    for (unsigned m = s.k + b + 1; m <= s.k + span; ++m) {
      ComparisonRow row;
      row.k = s.k;
      row.m = m;
      row.halted_total = s.halted;
      row.halted_below_m = 0;
      for (const auto& [bits, count] : hist)
        if (bits < m) row.halted_below_m += count;
      ProbInterval below = prob::below_prob(model, s.k, m);
      row.below_lo = below.lo;
      row.below_hi = below.hi;
      row.predicted_lower_bound = horizon::lower_bound_closed(s.k, m, b);
      if (s.halted > 0) {
        row.empirical_fraction = ExactRational::fraction(BigInt(row.halted_below_m),
                                                         BigInt(s.halted));
        row.flagged = *row.empirical_fraction < row.predicted_lower_bound;
      }
      table.push_back(std::move(row));
    }
  }
  return table;
}

void emit_csv(const std::vector<ComparisonRow>& table, const std::string& path) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw std::runtime_error("cannot open CSV output: " + path);
  out << "k,m,halted_total,halted_below_m,empirical_fraction,predicted_lower_bound,flag\n";
  for (const ComparisonRow& row : table) {
    out << row.k << ',' << row.m << ',' << row.halted_total << ',' << row.halted_below_m << ',';
    if (row.empirical_fraction) out << row.empirical_fraction->to_decimal(kFractionDigits);
    out << ',' << row.predicted_lower_bound.to_decimal(kFractionDigits) << ',';
    if (row.flagged) out << (*row.flagged ? '1' : '0');
    out << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("CSV write failed: " + path);
}

void emit_histograms(const std::vector<SizeClassSummary>& summaries, const std::string& path) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw std::runtime_error("cannot open histogram output: " + path);
  out << "k,bitlen_t,count\n";
  for (const SizeClassSummary& s : summaries)
    for (const auto& [bits, count] : s.bitlen_histogram)
      out << s.k << ',' << bits << ',' << count << '\n';
  out.flush();
  if (!out) throw std::runtime_error("histogram write failed: " + path);
}

}  // namespace haltbound::report
