#include "potluck/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "potluck/simulation.hpp"

namespace potluck {

using Json = nlohmann::ordered_json;

std::string format_fixed(double value, int precision) {
  // Values that round to zero print unsigned.
  if (std::abs(value) < 0.5 * std::pow(10.0, -precision)) value = 0.0;
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

std::string trace_csv(const SimulationResult& result) {
  std::string out = "t,D,S,gap\n";
  for (const RoundRecord& r : result.rounds) {
    out += std::to_string(r.t);
    out += ',' + format_fixed(r.total_demand);
    out += ',' + format_fixed(r.total_supply);
    out += ',' + format_fixed(parity_gap(r));
    out += '\n';
  }
  return out;
}

std::string trace_csv(const PairedRuns& runs) {
  const auto& a = runs.rational.rounds;
  const auto& b = runs.weighted_majority.rounds;
  if (a.size() != b.size()) throw ComparisonError("trace: paired runs differ in length");
  std::string out = "t,D,S_rational,gap_rational,S_weighted_majority,gap_weighted_majority\n";
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t].demands != b[t].demands) throw ComparisonError("trace: runs are not paired");
    out += std::to_string(t);
    out += ',' + format_fixed(a[t].total_demand);
    out += ',' + format_fixed(a[t].total_supply);
    out += ',' + format_fixed(parity_gap(a[t]));
    out += ',' + format_fixed(b[t].total_supply);
    out += ',' + format_fixed(parity_gap(b[t]));
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path.string());
  file << content;
  if (!file) throw IoError("write failed for " + path.string());
}

void write_trace(const SimulationResult& result, const std::filesystem::path& path) {
  write_text_file(path, trace_csv(result));
}

void write_trace(const PairedRuns& runs, const std::filesystem::path& path) {
  write_text_file(path, trace_csv(runs));
}

Json to_json(const RunStats& s) {
  return {{"rounds", s.rounds},
          {"mean_total_demand", s.mean_total_demand},
          {"mean_total_supply", s.mean_total_supply},
          {"mean_abs_gap", s.mean_abs_gap},
          {"max_abs_gap", s.max_abs_gap},
          {"starvation_rounds", s.starvation_rounds},
          {"excess_rounds", s.excess_rounds},
          {"equilibrium_rounds", s.equilibrium_rounds}};
}

Json to_json(const ComparisonReport& r) {
  return {{"rounds", r.rounds},
          {"wins_a", r.wins_a},
          {"wins_b", r.wins_b},
          {"ties", r.ties},
          {"outperform_fraction", r.outperform_fraction},
          {"mean_improvement", r.mean_improvement},
          {"best_improvement", r.best_improvement},
          {"excluded_rounds", r.excluded_rounds},
          {"definitions",
           {{"outperform_fraction", "share of rounds with |S-D|_A < |S-D|_B, demands paired"},
            {"mean_improvement", "1 - mean|S-D|_A / mean|S-D|_B"},
            {"best_improvement", "max over rounds with |S-D|_B > 0 of 1 - |S-D|_A / |S-D|_B"},
            {"excluded_rounds", "rounds with |S-D|_B = 0, left out of best_improvement"}}}};
}

Json to_json(const OscillationVerdict& v) {
  return {{"detected", v.detected},
          {"period", v.period ? Json(*v.period) : Json(nullptr)},
          {"transient_length", v.transient_length}};
}

Json to_json(const SweepSummary& s) {
  return {{"seeds", s.seeds},
          {"median_outperform_fraction", s.median_outperform_fraction},
          {"min_outperform_fraction", s.min_outperform_fraction},
          {"median_mean_improvement", s.median_mean_improvement},
          {"best_mean_improvement", s.best_mean_improvement},
          {"median_best_improvement", s.median_best_improvement}};
}

std::string to_text(const RunStats& s) {
  std::ostringstream out;
  out << "rounds              " << s.rounds << '\n'
      << "mean total demand   " << format_fixed(s.mean_total_demand, 2) << '\n'
      << "mean total supply   " << format_fixed(s.mean_total_supply, 2) << '\n'
      << "mean |S-D|          " << format_fixed(s.mean_abs_gap, 2) << '\n'
      << "max |S-D|           " << format_fixed(s.max_abs_gap, 2) << '\n'
      << "starvation/excess/equilibrium rounds  " << s.starvation_rounds << '/' << s.excess_rounds
      << '/' << s.equilibrium_rounds << '\n';
  return out.str();
}

std::string to_text(const ComparisonReport& r) {
  std::ostringstream out;
  out << "rounds              " << r.rounds << '\n'
      << "outperform fraction " << format_fixed(r.outperform_fraction, 4) << '\n'
      << "mean improvement    " << format_fixed(r.mean_improvement, 4) << '\n'
      << "best improvement    " << format_fixed(r.best_improvement, 4) << '\n'
      << "wins A/B/ties       " << r.wins_a << '/' << r.wins_b << '/' << r.ties << '\n';
  return out.str();
}

}  // namespace potluck
