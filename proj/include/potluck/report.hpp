#pragma once

// Deterministic serialization of traces and summaries. Numbers in CSV use a
// fixed six-decimal format independent of the C locale.

#include <json.hpp>

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>

#include "potluck/metrics.hpp"
#include "potluck/model.hpp"
#include "potluck/scenarios.hpp"

namespace potluck {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_fixed(double value, int precision = 6);

/// Header `t,D,S,gap` and one row per round.
std::string trace_csv(const SimulationResult& result);

/// Header `t,D,S_rational,gap_rational,S_weighted_majority,gap_weighted_majority`.
/// Throws ComparisonError if the runs are not paired.
std::string trace_csv(const PairedRuns& runs);

void write_text_file(const std::filesystem::path& path, const std::string& content);

void write_trace(const SimulationResult& result, const std::filesystem::path& path);
void write_trace(const PairedRuns& runs, const std::filesystem::path& path);

nlohmann::ordered_json to_json(const RunStats& stats);
nlohmann::ordered_json to_json(const ComparisonReport& report);
nlohmann::ordered_json to_json(const OscillationVerdict& verdict);
nlohmann::ordered_json to_json(const SweepSummary& summary);

std::string to_text(const RunStats& stats);
std::string to_text(const ComparisonReport& report);

}  // namespace potluck
