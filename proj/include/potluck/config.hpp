#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "potluck/model.hpp"

namespace potluck {

/// Error raised while loading a scenario file. `what()` reads
/// "<file>: <key>: <message>" (the key part is omitted when not applicable).
class ConfigFileError : public std::runtime_error {
 public:
  enum class Kind { kMissingFile, kParse, kInvariant };

  ConfigFileError(Kind kind, std::string file, std::string key, const std::string& message);

  Kind kind() const { return kind_; }
  const std::string& file() const { return file_; }
  const std::string& key() const { return key_; }

 private:
  Kind kind_;
  std::string file_;
  std::string key_;
};

/// Parses a scenario from JSON text. Keys absent from the text take their
/// documented defaults; unknown keys are rejected. `source` names the input
/// in diagnostics.
ScenarioConfig parse_config(const std::string& text, const std::string& source = "<string>");

ScenarioConfig load_config(const std::filesystem::path& path);

/// Serializes every field explicitly, so that parse_config(dump_config(c)) == c.
std::string dump_config(const ScenarioConfig& config);

}  // namespace potluck
