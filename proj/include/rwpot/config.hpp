#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rwpot/distribution.hpp"
#include "rwpot/lattice.hpp"

namespace rwpot {

// Parse or validation failure in a config; `what()` carries line/field context.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses "point 1", "atomic 0:0.3 1:0.7", "exponential 1", "uniform 0 2",
// "shifted 0.5 <spec>". Throws ConfigError.
Distribution parse_distribution(const std::string& text);

// Flat "key = value" lines; '#' starts a comment. Distribution blocks are
// keys "dist.<id>". Keys may not repeat.
class ExperimentConfig {
 public:
  static ExperimentConfig parse(std::istream& in, const std::string& source = "<config>");
  static ExperimentConfig parse_file(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  void set(const std::string& key, const std::string& value);

  std::string str(const std::string& key) const;
  std::string str(const std::string& key, const std::string& fallback) const;
  long integer(const std::string& key) const;
  long integer(const std::string& key, long fallback) const;
  double real(const std::string& key) const;
  double real(const std::string& key, double fallback) const;
  std::vector<long> integers(const std::string& key) const;
  std::vector<long> integers(const std::string& key, std::vector<long> fallback) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<double> reals(const std::string& key, std::vector<double> fallback) const;
  // A lattice site "a b c" with exactly d coordinates.
  Site site(const std::string& key, int d) const;
  // The distribution named by the value of `key` (an id defined by dist.<id>).
  Distribution distribution(const std::string& key) const;

  const std::map<std::string, Distribution>& distributions() const { return dists_; }
  // Every key and raw value, sorted by key.
  std::map<std::string, std::string> echo() const;
  // Keys never read through the getters; reported as warnings.
  std::vector<std::string> unused_keys() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  const Entry& entry(const std::string& key) const;
  std::string where(const std::string& key) const;

  std::string source_;
  std::map<std::string, Entry> entries_;
  std::map<std::string, Distribution> dists_;
  mutable std::map<std::string, bool> used_;
};

}  // namespace rwpot
