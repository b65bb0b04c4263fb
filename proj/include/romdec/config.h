// Copyright 2026 The romdec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Key-value configuration files and language profiles.
//
//   # comment
//   key = value
//
// Values run to the end of the line with surrounding blanks trimmed.
// Relative paths resolve against the directory of the file.

#ifndef ROMDEC_CONFIG_H_
#define ROMDEC_CONFIG_H_

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "romdec/channel.h"
#include "romdec/training.h"

namespace romdec {

class KeyValueConfig {
 public:
  static KeyValueConfig Read(std::istream &is, const std::string &source,
                             const std::string &base_dir = ".");
  static KeyValueConfig Load(const std::string &path);

  void Set(const std::string &key, const std::string &value);
  bool Has(const std::string &key) const { return values_.count(key) > 0; }

  std::string GetString(const std::string &key,
                        const std::string &fallback = {}) const;
  double GetDouble(const std::string &key, double fallback) const;
  long long GetInt(const std::string &key, long long fallback) const;
  bool GetBool(const std::string &key, bool fallback) const;
  // Comma-separated list of paths, each resolved against base_dir().
  std::vector<std::string> GetPaths(const std::string &key) const;
  std::string GetPath(const std::string &key) const;

  // Throws ConfigError naming the first key outside `known`.
  void CheckKnown(const std::vector<std::string> &known) const;

  const std::string &base_dir() const { return base_dir_; }
  const std::map<std::string, std::string> &values() const { return values_; }

 private:
  std::string Resolve(const std::string &path) const;

  std::string source_;
  std::string base_dir_ = ".";
  std::map<std::string, std::string> values_;
};

// Profile keys: name, delay, source_letters, source_digits, latin_letters,
// latin_digits, punctuation, specialized (space-separated two-character
// "<original><latin>" tokens), priors (comma-separated mapping files).
// Space belongs to both alphabets implicitly.
struct LanguageProfile {
  std::string name;
  int delay = 2;
  std::u32string source_alphabet;  // sorted
  std::u32string latin_alphabet;   // sorted
  Restrictions restrictions;
  std::vector<std::string> prior_files;

  static LanguageProfile FromConfig(const KeyValueConfig &config);
  static LanguageProfile Load(const std::string &path);

  std::shared_ptr<const SymbolTable> SourceSymbols() const;
  std::shared_ptr<const SymbolTable> LatinSymbols() const;
  std::shared_ptr<const EditOpTable> MakeTable(bool restricted = true) const;
};

// Reads TrainConfig keys (batch_size, beta, batches_per_stage, min_order,
// max_order, frozen_deletion_neglog, prune_start, prune_end, delay,
// restarts, seed, init_noise, supervised_iterations, workers, estep) over
// `defaults`.
TrainConfig TrainConfigFromKeyValues(const KeyValueConfig &config,
                                     TrainConfig defaults = {});
std::vector<std::string> TrainConfigKeys();

}  // namespace romdec

#endif  // ROMDEC_CONFIG_H_
