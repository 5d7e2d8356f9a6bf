#pragma once

// Line-oriented run configuration: `section.key = value`, `#` starts a comment.
// Every key has a schema entry with a default; unknown keys are rejected.

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mmsim/hom.hpp"
#include "mmsim/memory_loop.hpp"
#include "mmsim/noise_model.hpp"
#include "mmsim/spdc.hpp"

namespace mmsim::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValueKind { kReal, kInteger, kBool, kText, kRealList };

struct KeySpec {
  std::string key;
  ValueKind kind;
  std::string default_value;
  std::string description;
  /// Allowed values for kText keys; empty means free text.
  std::vector<std::string> choices;
};

const std::vector<KeySpec>& config_schema();

/// Parses "a, b, c" or an inclusive range "start:step:stop".
std::vector<double> parse_real_list(std::string_view text);

class RunConfig {
 public:
  static RunConfig defaults();
  static RunConfig parse(std::string_view text, std::string_view source = "<config>");
  static RunConfig load(const std::filesystem::path& path);

  double real(const std::string& key) const;
  long integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;

  void set(const std::string& key, const std::string& value);

  /// All keys in schema order with their effective values.
  std::string canonical() const;
  /// FNV-1a 64 of canonical(), as 16 hex digits.
  std::string hash() const;

  ExperimentParams experiment() const;
  DetailedParams detailed() const;
  ModelReading reading() const;
  HomParams hom() const;
  TemporalProfiles profiles() const;
  MemoryParams memory() const;

 private:
  const std::string& raw(const std::string& key, ValueKind kind) const;

  std::map<std::string, std::string> values_;
};

}  // namespace mmsim::cli
