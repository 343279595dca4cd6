#include "potluck/config.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "potluck/simulation.hpp"

namespace potluck {
namespace {

using Json = nlohmann::ordered_json;

// Parsing state for diagnostics: the file name plus the dotted key path.
struct Reader {
  const std::string& source;

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    throw ConfigFileError(ConfigFileError::Kind::kParse, source, key, message);
  }

  void expect_object(const Json& j, const std::string& key,
                     std::initializer_list<const char*> allowed) const {
    if (!j.is_object()) fail(key, "expected an object");
    for (const auto& [name, value] : j.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || name == a;
      if (!known) fail(key.empty() ? name : key + "." + name, "unknown key");
    }
  }

  double number(const Json& j, const std::string& key) const {
    if (!j.is_number()) fail(key, "expected a number");
    return j.get<double>();
  }

  std::uint64_t unsigned_int(const Json& j, const std::string& key) const {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
      fail(key, "expected a nonnegative integer");
    return j.get<std::uint64_t>();
  }

  bool boolean(const Json& j, const std::string& key) const {
    if (!j.is_boolean()) fail(key, "expected true or false");
    return j.get<bool>();
  }

  std::string string(const Json& j, const std::string& key) const {
    if (!j.is_string()) fail(key, "expected a string");
    return j.get<std::string>();
  }

  Interval interval(const Json& j, const std::string& key) const {
    if (!j.is_array() || j.size() != 2) fail(key, "expected [lo, hi]");
    return {number(j[0], key + "[0]"), number(j[1], key + "[1]")};
  }

  Learner learner(const Json& j, const std::string& key) const {
    const std::string s = string(j, key);
    for (Learner l : {Learner::kRational, Learner::kWeightedMajority, Learner::kBinaryRational})
      if (s == to_string(l)) return l;
    fail(key, "unknown learner '" + s + "'");
  }

  PredictorTag predictor_tag(const Json& j, const std::string& key) const {
    const std::string s = string(j, key);
    for (PredictorTag t : {PredictorTag::kMeanWindow, PredictorTag::kRandomWindow, PredictorTag::kRational,
                           PredictorTag::kOracle, PredictorTag::kTimeVarying})
      if (s == to_string(t)) return t;
    fail(key, "unknown predictor kind '" + s + "'");
  }

  DemandTag demand_tag(const Json& j, const std::string& key) const {
    const std::string s = string(j, key);
    for (DemandTag t : {DemandTag::kUniformPerAgent, DemandTag::kFixedTotal, DemandTag::kTimeVaryingTotal})
      if (s == to_string(t)) return t;
    fail(key, "unknown demand process '" + s + "'");
  }

  InitialWeights initial_weights(const Json& j, const std::string& key) const {
    const std::string s = string(j, key);
    if (s == "uniform") return InitialWeights::kUniform;
    if (s == "random") return InitialWeights::kRandom;
    fail(key, "expected 'uniform' or 'random'");
  }
};

Json interval_json(const Interval& r) { return Json::array({r.lo, r.hi}); }

// Maps a ConfigError message such as "beta must lie in (0,1)" to its key.
std::string key_of(const std::string& message) {
  const auto end = message.find_first_of(" :");
  return message.substr(0, end);
}

}  // namespace

ConfigFileError::ConfigFileError(Kind kind, std::string file, std::string key,
                                 const std::string& message)
    : std::runtime_error(file + ": " + (key.empty() ? "" : key + ": ") + message),
      kind_(kind),
      file_(std::move(file)),
      key_(std::move(key)) {}

ScenarioConfig parse_config(const std::string& text, const std::string& source) {
  const Reader in{source};
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigFileError(ConfigFileError::Kind::kParse, source, "", e.what());
  }
  in.expect_object(root, "",
                   {"n_agents", "n_rounds", "seed", "beta", "window", "upsilon_max", "ratio_floor",
                    "initial_weights", "prior_demand", "population", "agents", "demand", "predictors"});

  ScenarioConfig c;
  if (root.contains("n_agents")) c.n_agents = in.unsigned_int(root["n_agents"], "n_agents");
  if (root.contains("n_rounds")) c.n_rounds = in.unsigned_int(root["n_rounds"], "n_rounds");
  if (root.contains("seed")) c.seed = in.unsigned_int(root["seed"], "seed");
  if (root.contains("beta")) c.beta = in.number(root["beta"], "beta");
  if (root.contains("window")) c.window = in.unsigned_int(root["window"], "window");
  if (root.contains("upsilon_max")) c.upsilon_max = in.number(root["upsilon_max"], "upsilon_max");
  if (root.contains("ratio_floor")) c.ratio_floor = in.number(root["ratio_floor"], "ratio_floor");
  if (root.contains("initial_weights"))
    c.initial_weights = in.initial_weights(root["initial_weights"], "initial_weights");
  if (root.contains("prior_demand") && !root["prior_demand"].is_null())
    c.prior_demand = in.number(root["prior_demand"], "prior_demand");

  if (root.contains("population")) {
    const Json& p = root["population"];
    in.expect_object(p, "population", {"capacity", "demand_range", "learner", "k"});
    if (p.contains("capacity")) {
      const Interval cap = in.interval(p["capacity"], "population.capacity");
      c.population.capacity_lo = cap.lo;
      c.population.capacity_hi = cap.hi;
    }
    if (p.contains("demand_range"))
      c.population.demand_range = in.interval(p["demand_range"], "population.demand_range");
    if (p.contains("learner")) c.population.learner = in.learner(p["learner"], "population.learner");
    if (p.contains("k")) c.population.predictor_pool_size = in.unsigned_int(p["k"], "population.k");
  }

  if (root.contains("agents")) {
    const Json& list = root["agents"];
    if (!list.is_array()) in.fail("agents", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string key = "agents[" + std::to_string(i) + "]";
      const Json& a = list[i];
      in.expect_object(a, key, {"id", "max_supply", "demand_range", "learner", "k"});
      AgentSpec spec;
      spec.id = i;
      if (a.contains("id") && in.unsigned_int(a["id"], key + ".id") != i)
        in.fail(key + ".id", "ids must equal the list position");
      if (!a.contains("max_supply")) in.fail(key + ".max_supply", "required");
      spec.max_supply = in.number(a["max_supply"], key + ".max_supply");
      if (!a.contains("demand_range")) in.fail(key + ".demand_range", "required");
      spec.demand_range = in.interval(a["demand_range"], key + ".demand_range");
      if (a.contains("learner")) spec.learner = in.learner(a["learner"], key + ".learner");
      if (a.contains("k")) spec.predictor_pool_size = in.unsigned_int(a["k"], key + ".k");
      c.agents.push_back(spec);
    }
  }

  if (root.contains("demand")) {
    const Json& d = root["demand"];
    in.expect_object(d, "demand", {"process", "integer", "total", "base", "amplitude", "period", "jitter"});
    if (d.contains("process")) c.demand.tag = in.demand_tag(d["process"], "demand.process");
    if (d.contains("integer")) c.demand.integer_draws = in.boolean(d["integer"], "demand.integer");
    if (d.contains("total")) c.demand.total = in.number(d["total"], "demand.total");
    if (d.contains("base")) c.demand.base = in.number(d["base"], "demand.base");
    if (d.contains("amplitude")) c.demand.amplitude = in.number(d["amplitude"], "demand.amplitude");
    if (d.contains("period")) c.demand.period = in.number(d["period"], "demand.period");
    if (d.contains("jitter")) c.demand.jitter = in.number(d["jitter"], "demand.jitter");
  }

  if (root.contains("predictors")) {
    const Json& list = root["predictors"];
    if (!list.is_array()) in.fail("predictors", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string key = "predictors[" + std::to_string(i) + "]";
      const Json& p = list[i];
      in.expect_object(p, key, {"kind", "window", "base", "amplitude", "period"});
      if (!p.contains("kind")) in.fail(key + ".kind", "required");
      PredictorKind kind;
      kind.tag = in.predictor_tag(p["kind"], key + ".kind");
      kind.window = c.window;
      if (p.contains("window")) kind.window = in.unsigned_int(p["window"], key + ".window");
      if (p.contains("base")) kind.base = in.number(p["base"], key + ".base");
      if (p.contains("amplitude")) kind.amplitude = in.number(p["amplitude"], key + ".amplitude");
      if (p.contains("period")) kind.period = in.number(p["period"], key + ".period");
      c.predictor_pool.push_back(kind);
    }
  } else {
    // Stock pool; the time-varying predictor is centred on the prior.
    Quantity level = c.prior_demand.value_or(0.0);
    if (!c.prior_demand) {
      if (c.agents.empty())
        level = static_cast<Quantity>(c.n_agents) * c.population.demand_range.midpoint();
      else
        for (const AgentSpec& a : c.agents) level += a.demand_range.midpoint();
    }
    c.predictor_pool = stock_predictor_pool(c.window, std::max(level, Quantity(0)));
  }

  try {
    validate_config(c);
  } catch (const ConfigError& e) {
    throw ConfigFileError(ConfigFileError::Kind::kInvariant, source, key_of(e.what()), e.what());
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file)
    throw ConfigFileError(ConfigFileError::Kind::kMissingFile, path.string(), "", "cannot open file");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_config(buffer.str(), path.string());
}

std::string dump_config(const ScenarioConfig& c) {
  Json root;
  root["n_agents"] = c.n_agents;
  root["n_rounds"] = c.n_rounds;
  root["seed"] = c.seed;
  root["beta"] = c.beta;
  root["window"] = c.window;
  root["upsilon_max"] = c.upsilon_max;
  root["ratio_floor"] = c.ratio_floor;
  root["initial_weights"] = to_string(c.initial_weights);
  root["prior_demand"] = c.prior_demand ? Json(*c.prior_demand) : Json(nullptr);
  root["population"] = {
      {"capacity", Json::array({c.population.capacity_lo, c.population.capacity_hi})},
      {"demand_range", interval_json(c.population.demand_range)},
      {"learner", to_string(c.population.learner)},
      {"k", c.population.predictor_pool_size}};
  Json agents = Json::array();
  for (const AgentSpec& a : c.agents)
    agents.push_back({{"id", a.id},
                      {"max_supply", a.max_supply},
                      {"demand_range", interval_json(a.demand_range)},
                      {"learner", to_string(a.learner)},
                      {"k", a.predictor_pool_size}});
  root["agents"] = std::move(agents);
  root["demand"] = {{"process", to_string(c.demand.tag)}, {"integer", c.demand.integer_draws},
                    {"total", c.demand.total},            {"base", c.demand.base},
                    {"amplitude", c.demand.amplitude},    {"period", c.demand.period},
                    {"jitter", c.demand.jitter}};
  Json predictors = Json::array();
  for (const PredictorKind& k : c.predictor_pool)
    predictors.push_back({{"kind", to_string(k.tag)},
                          {"window", k.window},
                          {"base", k.base},
                          {"amplitude", k.amplitude},
                          {"period", k.period}});
  root["predictors"] = std::move(predictors);
  return root.dump(2) + "\n";
}

}  // namespace potluck
