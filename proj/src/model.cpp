#include "potluck/model.hpp"

#include <algorithm>
#include <string>

namespace potluck {

std::vector<PredictorKind> stock_predictor_pool(std::size_t window, Quantity level) {
  std::vector<PredictorKind> pool(5);
  pool[0].tag = PredictorTag::kMeanWindow;
  pool[0].window = window;
  pool[1].tag = PredictorTag::kRandomWindow;
  pool[1].window = window;
  pool[2].tag = PredictorTag::kRational;
  pool[3].tag = PredictorTag::kOracle;
  pool[4].tag = PredictorTag::kTimeVarying;
  pool[4].base = level;
  pool[4].amplitude = 0.1 * level;
  pool[4].period = 52.0;
  return pool;
}

void History::append(RoundRecord record) {
  if (record.t != records_.size())
    throw StructuralError("history: expected round " + std::to_string(records_.size()) +
                          ", got " + std::to_string(record.t));
  records_.push_back(std::move(record));
}

std::vector<Quantity> History::recent_demands(std::size_t window) const {
  const std::size_t m = std::min(window, records_.size());
  std::vector<Quantity> out;
  out.reserve(m);
  for (std::size_t i = records_.size() - m; i < records_.size(); ++i)
    out.push_back(records_[i].total_demand);
  return out;
}

std::string to_string(Learner learner) {
  switch (learner) {
    case Learner::kRational: return "rational";
    case Learner::kWeightedMajority: return "weighted-majority";
    case Learner::kBinaryRational: return "binary-rational";
  }
  return "?";
}

std::string to_string(PredictorTag tag) {
  switch (tag) {
    case PredictorTag::kMeanWindow: return "mean-window";
    case PredictorTag::kRandomWindow: return "random-window";
    case PredictorTag::kRational: return "rational";
    case PredictorTag::kOracle: return "oracle";
    case PredictorTag::kTimeVarying: return "time-varying";
  }
  return "?";
}

std::string to_string(DemandTag tag) {
  switch (tag) {
    case DemandTag::kUniformPerAgent: return "uniform-per-agent";
    case DemandTag::kFixedTotal: return "fixed-total";
    case DemandTag::kTimeVaryingTotal: return "time-varying-total";
  }
  return "?";
}

std::string to_string(InitialWeights mode) {
  return mode == InitialWeights::kUniform ? "uniform" : "random";
}

}  // namespace potluck
