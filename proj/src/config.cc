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

#include "romdec/config.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <set>

#include "romdec/errors.h"
#include "romdec/text_util.h"
#include "romdec/utf8.h"

namespace romdec {

KeyValueConfig KeyValueConfig::Read(std::istream &is, const std::string &source,
                                    const std::string &base_dir) {
  KeyValueConfig config;
  config.source_ = source;
  config.base_dir_ = base_dir;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    const size_t eq = trimmed.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno) +
                        ": expected \"key = value\"");
    }
    const std::string key(Trim(trimmed.substr(0, eq)));
    if (key.empty()) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key");
    }
    config.values_[key] = std::string(Trim(trimmed.substr(eq + 1)));
  }
  return config;
}

KeyValueConfig KeyValueConfig::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  const auto parent = std::filesystem::path(path).parent_path();
  return Read(in, path, parent.empty() ? "." : parent.string());
}

void KeyValueConfig::Set(const std::string &key, const std::string &value) {
  values_[key] = value;
}

std::string KeyValueConfig::GetString(const std::string &key,
                                      const std::string &fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::GetDouble(const std::string &key,
                                 double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  double v = 0.0;
  if (!ParseDouble(it->second, &v)) {
    throw ConfigError(source_ + ": " + key + " is not a number: " + it->second);
  }
  return v;
}

long long KeyValueConfig::GetInt(const std::string &key,
                                 long long fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  long long v = 0;
  if (!ParseInt(it->second, &v)) {
    throw ConfigError(source_ + ": " + key + " is not an integer: " +
                      it->second);
  }
  return v;
}

bool KeyValueConfig::GetBool(const std::string &key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string &v = it->second;
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ConfigError(source_ + ": " + key + " is not a boolean: " + v);
}

std::string KeyValueConfig::Resolve(const std::string &path) const {
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir_) / p).lexically_normal().string();
}

std::vector<std::string> KeyValueConfig::GetPaths(const std::string &key) const {
  std::vector<std::string> out;
  for (const auto &item : Split(GetString(key), ',')) {
    const std::string_view p = Trim(item);
    if (!p.empty()) out.push_back(Resolve(std::string(p)));
  }
  return out;
}

std::string KeyValueConfig::GetPath(const std::string &key) const {
  const std::string v = GetString(key);
  return v.empty() ? v : Resolve(v);
}

void KeyValueConfig::CheckKnown(const std::vector<std::string> &known) const {
  for (const auto &[key, value] : values_) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(source_ + ": unknown key \"" + key + "\"");
    }
  }
}

namespace {

std::u32string SortedUnique(std::u32string s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

LanguageProfile LanguageProfile::FromConfig(const KeyValueConfig &config) {
  config.CheckKnown({"name", "delay", "source_letters", "source_digits",
                     "latin_letters", "latin_digits", "punctuation",
                     "specialized", "priors"});
  LanguageProfile p;
  p.name = config.GetString("name", "unnamed");
  p.delay = static_cast<int>(config.GetInt("delay", 2));
  if (p.delay < 1) throw ConfigError("profile delay must be at least 1");
  const std::u32string punctuation = DecodeUtf8(config.GetString("punctuation"));
  std::u32string source = DecodeUtf8(config.GetString("source_letters")) +
                          DecodeUtf8(config.GetString("source_digits"));
  std::u32string latin = DecodeUtf8(config.GetString("latin_letters")) +
                         DecodeUtf8(config.GetString("latin_digits"));
  if (source.empty() || latin.empty()) {
    throw ConfigError("profile " + p.name + " needs source and latin letters");
  }
  p.restrictions.enabled = true;
  p.restrictions.restricted = U" " + punctuation;
  for (const auto &tok : Split(config.GetString("specialized"), ' ')) {
    if (tok.empty()) continue;
    const std::u32string pair = DecodeUtf8(tok);
    if (pair.size() != 2) {
      throw ConfigError("specialized entry \"" + tok +
                        "\" must be two characters");
    }
    p.restrictions.specialized.emplace_back(pair[0], pair[1]);
    source.push_back(pair[0]);
    latin.push_back(pair[1]);
    p.restrictions.restricted.push_back(pair[0]);
  }
  p.source_alphabet = SortedUnique(source + U" " + punctuation);
  p.latin_alphabet = SortedUnique(latin + U" " + punctuation);
  p.restrictions.restricted = SortedUnique(p.restrictions.restricted);
  p.prior_files = config.GetPaths("priors");
  return p;
}

LanguageProfile LanguageProfile::Load(const std::string &path) {
  return FromConfig(KeyValueConfig::Load(path));
}

std::shared_ptr<const SymbolTable> LanguageProfile::SourceSymbols() const {
  return std::make_shared<const SymbolTable>(
      SymbolTable::FromAlphabet(source_alphabet));
}

std::shared_ptr<const SymbolTable> LanguageProfile::LatinSymbols() const {
  return std::make_shared<const SymbolTable>(
      SymbolTable::FromAlphabet(latin_alphabet));
}

std::shared_ptr<const EditOpTable> LanguageProfile::MakeTable(
    bool restricted) const {
  return std::make_shared<const EditOpTable>(
      SourceSymbols(), LatinSymbols(),
      restricted ? restrictions : Restrictions::None());
}

std::vector<std::string> TrainConfigKeys() {
  return {"batch_size",  "beta",       "batches_per_stage",
          "min_order",   "max_order",  "frozen_deletion_neglog",
          "prune_start", "prune_end",  "delay",
          "restarts",    "seed",       "init_noise",
          "supervised_iterations",     "workers",
          "estep"};
}

TrainConfig TrainConfigFromKeyValues(const KeyValueConfig &config,
                                     TrainConfig c) {
  c.batch_size = static_cast<int>(config.GetInt("batch_size", c.batch_size));
  c.beta = config.GetDouble("beta", c.beta);
  c.batches_per_stage = static_cast<int>(
      config.GetInt("batches_per_stage", c.batches_per_stage));
  c.min_order = static_cast<int>(config.GetInt("min_order", c.min_order));
  c.max_order = static_cast<int>(config.GetInt("max_order", c.max_order));
  if (config.Has("frozen_deletion_neglog")) {
    c.frozen_deletion =
        std::exp(-config.GetDouble("frozen_deletion_neglog", 100.0));
  }
  c.prune_start = config.GetDouble("prune_start", c.prune_start);
  c.prune_end = config.GetDouble("prune_end", c.prune_end);
  c.delay = static_cast<int>(config.GetInt("delay", c.delay));
  c.restarts = static_cast<int>(config.GetInt("restarts", c.restarts));
  c.seed = static_cast<uint64_t>(config.GetInt("seed", static_cast<long long>(c.seed)));
  c.init_noise = config.GetDouble("init_noise", c.init_noise);
  c.supervised_iterations = static_cast<int>(
      config.GetInt("supervised_iterations", c.supervised_iterations));
  c.workers = static_cast<int>(config.GetInt("workers", c.workers));
  if (config.Has("estep")) {
    const std::string m = config.GetString("estep");
    if (m == "forward_backward") {
      c.estep = EStepMethod::kForwardBackward;
    } else if (m == "shortest_distance") {
      c.estep = EStepMethod::kShortestDistance;
    } else {
      throw ConfigError("estep must be forward_backward or shortest_distance");
    }
  }
  c.Validate();
  return c;
}

}  // namespace romdec
