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

// romdec command-line tool. Every subcommand reads an optional key-value
// config (--config) and lets flags override its keys.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error,
// 3 training failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <glog/logging.h>
#include <json.hpp>

#include "romdec/channel.h"
#include "romdec/config.h"
#include "romdec/corpus.h"
#include "romdec/decode.h"
#include "romdec/errors.h"
#include "romdec/eval.h"
#include "romdec/ngram.h"
#include "romdec/training.h"
#include "romdec/utf8.h"

namespace romdec {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr double kTrigramPrune = 1e-5;
constexpr double kHigherPrune = 2e-5;

// A flag that maps onto a config key.
struct KeyFlag {
  std::string key;
  bool is_path = false;
  std::string value;
  CLI::Option *option = nullptr;
};

class Command {
 public:
  Command(CLI::App &parent, const std::string &name, const std::string &help)
      : app_(parent.add_subcommand(name, help)) {
    Add("config", "key-value config file; flags override its keys", true);
  }

  Command &Add(const std::string &key, const std::string &help,
               bool is_path = false) {
    flags_.push_back(std::make_unique<KeyFlag>());
    KeyFlag &f = *flags_.back();
    f.key = key;
    f.is_path = is_path;
    std::string name = "--" + key;
    std::replace(name.begin(), name.end(), '_', '-');
    f.option = app_->add_option(name, f.value, help);
    return *this;
  }

  CLI::App *app() const { return app_; }

  std::vector<std::string> Keys() const {
    std::vector<std::string> keys;
    for (const auto &f : flags_) keys.push_back(f->key);
    return keys;
  }

  // Config file keys overlaid with the flags given on the command line.
  // One file may serve every subcommand, so any subcommand's key is known.
  KeyValueConfig Resolve(const std::vector<std::string> &known) const {
    KeyValueConfig config;
    for (const auto &f : flags_) {
      if (f->key == "config" && f->option->count() > 0) {
        config = KeyValueConfig::Load(f->value);
      }
    }
    for (const auto &f : flags_) {
      if (f->key == "config" || f->option->count() == 0) continue;
      config.Set(f->key, f->is_path ? fs::absolute(f->value).lexically_normal().string()
                                    : f->value);
    }
    config.CheckKnown(known);
    return config;
  }

 private:
  CLI::App *app_;
  std::vector<std::unique_ptr<KeyFlag>> flags_;
};

void AddTrainKeys(Command &cmd) {
  static const std::map<std::string, std::string> help = {
      {"batch_size", "sentences per stepwise EM batch (default 10)"},
      {"beta", "stepsize exponent, eta_k = (k + 2)^-beta (default 0.9)"},
      {"batches_per_stage", "batches before the LM order advances (default 100)"},
      {"min_order", "first LM order of the curriculum (default 2)"},
      {"max_order", "last LM order of the curriculum (default 6)"},
      {"frozen_deletion_neglog", "-ln of the frozen deletion probability (default 100)"},
      {"prune_start", "emission pruning threshold at the first stage (default 5.0)"},
      {"prune_end", "emission pruning threshold at the last stage (default 4.5)"},
      {"delay", "delay limit of the emission machine (default: profile)"},
      {"restarts", "random restarts (default 1)"},
      {"seed", "seed of the first restart (default 1)"},
      {"init_noise", "multiplicative noise on the initial parameters (default 0.1)"},
      {"supervised_iterations", "EM iterations in supervised mode (default 5)"},
      {"workers", "E-step threads (default 1)"},
      {"estep", "forward_backward (default) or shortest_distance"},
  };
  for (const auto &key : TrainConfigKeys()) {
    const auto it = help.find(key);
    cmd.Add(key, it == help.end() ? "training setting" : it->second);
  }
}

std::string RequirePath(const KeyValueConfig &config, const std::string &key,
                        bool must_exist = true) {
  if (!config.Has(key) || config.GetString(key).empty()) {
    throw ConfigError("missing required setting " + key);
  }
  const std::string path = config.GetPath(key);
  if (must_exist && !fs::exists(path)) {
    throw ConfigError(key + ": no such file or directory: " + path);
  }
  return path;
}

std::ofstream OpenOut(const std::string &path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  return out;
}

std::u32string Alphabet(const SymbolTable &table) {
  std::u32string out;
  for (Label l = 1; l <= static_cast<Label>(table.NumSymbols()); ++l) {
    out.push_back(table.Symbol(l));
  }
  return out;
}

std::vector<std::u32string> FilterAll(std::vector<std::u32string> text,
                                      std::u32string_view alphabet,
                                      const std::string &what) {
  std::vector<std::u32string> out;
  size_t removed = 0;
  for (auto &s : text) {
    size_t r = 0;
    s = FilterToAlphabet(s, alphabet, &r);
    removed += r;
    if (!s.empty()) out.push_back(std::move(s));
  }
  if (removed > 0) {
    LOG(WARNING) << what << ": dropped " << removed
                 << " characters outside the alphabet";
  }
  return out;
}

std::string LmPath(const std::string &dir, int order) {
  return (fs::path(dir) / ("lm." + std::to_string(order) + ".txt")).string();
}

NgramModel LoadLm(const std::string &dir, int order) {
  const std::string path = LmPath(dir, order);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open language model " + path);
  return NgramModel::Read(in, path);
}

EmissionParams LoadModel(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model " + path);
  return EmissionParams::Read(in, path);
}

std::optional<LanguageProfile> MaybeProfile(const KeyValueConfig &config) {
  if (!config.Has("profile")) return std::nullopt;
  return LanguageProfile::Load(RequirePath(config, "profile"));
}

LanguageProfile RequireProfile(const KeyValueConfig &config) {
  auto profile = MaybeProfile(config);
  if (!profile) throw ConfigError("missing required setting profile");
  if (profile->source_alphabet.empty() || profile->latin_alphabet.empty()) {
    throw ConfigError("profile " + profile->name + " has an empty alphabet");
  }
  return *profile;
}

// Raw lines of a file; `column` picks a tab-separated field (-1 = whole).
std::vector<std::string> ReadLines(const std::string &path, int column) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (column < 0) {
      lines.push_back(line);
      continue;
    }
    size_t start = 0;
    for (int c = 0; c < column; ++c) {
      start = line.find('\t', start);
      if (start == std::string::npos) {
        throw FormatError(path, lineno, "expected a tab-separated pair");
      }
      ++start;
    }
    const size_t end = line.find('\t', start);
    lines.push_back(line.substr(start, end == std::string::npos ? end : end - start));
  }
  return lines;
}

int ColumnFor(const KeyValueConfig &config, const std::string &key, int parallel_column) {
  const std::string format = config.GetString(key, "text");
  if (format == "text") return -1;
  if (format == "parallel") return parallel_column;
  throw ConfigError(key + " must be text or parallel, not " + format);
}

int RunTrainLm(const KeyValueConfig &config) {
  const LanguageProfile profile = RequireProfile(config);
  const std::string corpus_path = RequirePath(config, "corpus");
  const std::string out_dir = RequirePath(config, "out_dir", false);
  const int min_order = static_cast<int>(config.GetInt("min_order", kMinNgramOrder));
  const int max_order = static_cast<int>(config.GetInt("max_order", kMaxNgramOrder));
  if (min_order < kMinNgramOrder || max_order > kMaxNgramOrder || min_order > max_order) {
    throw ConfigError("LM orders must lie in [" + std::to_string(kMinNgramOrder) + ", " +
                      std::to_string(kMaxNgramOrder) + "]");
  }
  const double trigram_prune = config.GetDouble("prune_trigram", kTrigramPrune);
  const double higher_prune = config.GetDouble("prune_higher", kHigherPrune);
  const auto corpus = FilterAll(LoadMonolingual(corpus_path, Side::kOriginal),
                                profile.source_alphabet, corpus_path);
  if (corpus.empty()) throw DataError(corpus_path + ": no usable sentences");
  fs::create_directories(out_dir);
  for (int n = min_order; n <= max_order; ++n) {
    NgramModel model = WittenBell(CountNgrams(corpus, n, profile.source_alphabet));
    if (n == 3 && trigram_prune > 0) model = EntropyPrune(model, trigram_prune);
    if (n > 3 && higher_prune > 0) model = EntropyPrune(model, higher_prune);
    std::ofstream out = OpenOut(LmPath(out_dir, n));
    model.Write(out);
    std::cout << "order " << n << ": " << model.NumEntries() << " entries, "
              << model.histories().size() << " histories -> " << LmPath(out_dir, n)
              << "\n";
  }
  return 0;
}

// Appends JSON lines to `path`, flushing each so the log can be read while
// training runs.
TrainLogger FileLogger(const std::string &path) {
  auto out = std::make_shared<std::ofstream>(OpenOut(path));
  return [out](const std::string &line) {
    *out << line << '\n';
    out->flush();
  };
}

PriorSpec MakePrior(const KeyValueConfig &config, const LanguageProfile &profile,
                    const EditOpTable &table) {
  const std::string kind = config.GetString("prior", "profile");
  if (kind == "uniform") return UniformPrior(table);
  if (kind != "profile") throw ConfigError("prior must be profile or uniform, not " + kind);
  if (profile.prior_files.empty()) {
    throw ConfigError("profile " + profile.name + " lists no prior files");
  }
  PriorSpec prior = LoadPrior(profile.prior_files, table);
  for (const auto &s : prior.skipped) LOG(INFO) << "prior: skipped " << s;
  return prior;
}

int RunTrain(const KeyValueConfig &config) {
  const LanguageProfile profile = RequireProfile(config);
  TrainConfig defaults;
  defaults.delay = profile.delay;
  const TrainConfig train = TrainConfigFromKeyValues(config, defaults);
  train.Validate();
  const std::string mode = config.GetString("mode", "unsupervised");
  const std::string lm_dir = RequirePath(config, "lm_dir");
  const std::string out_dir = RequirePath(config, "out_dir", false);
  const auto table = profile.MakeTable();
  const PriorSpec prior = MakePrior(config, profile, *table);
  fs::create_directories(out_dir);
  const std::string model_path = (fs::path(out_dir) / "model.txt").string();
  auto trace = [&](int r) {
    return (fs::path(out_dir) / ("trace." + std::to_string(r) + ".jsonl")).string();
  };
  std::ofstream run_log = OpenOut((fs::path(out_dir) / "run.jsonl").string());

  if (mode == "supervised") {
    if (!config.Has("parallel")) {
      throw ConfigError("supervised training needs parallel data (parallel = <file>)");
    }
    const std::string path = RequirePath(config, "parallel");
    std::vector<ParallelPair> pairs;
    for (auto &p : LoadParallel(path)) {
      p.latin = FilterToAlphabet(p.latin, profile.latin_alphabet);
      p.original = FilterToAlphabet(p.original, profile.source_alphabet);
      if (!p.latin.empty() && !p.original.empty()) pairs.push_back(std::move(p));
    }
    if (pairs.empty()) throw DataError(path + ": no usable pairs");
    const NgramModel lm = LoadLm(lm_dir, train.max_order);
    const SupervisedResult r =
        TrainSupervised(pairs, lm, table, prior, train, FileLogger(trace(0)));
    std::ofstream out = OpenOut(model_path);
    r.params.Write(out);
    run_log << json{{"event", "supervised"}, {"pairs", r.used},
                    {"excluded", r.excluded}, {"skipped", r.skipped},
                    {"penalized", r.penalized}, {"model", model_path}}
                   .dump()
            << '\n';
    std::cout << "supervised: " << r.used << " pairs, " << r.excluded
              << " excluded, penalized log-likelihood " << r.penalized.front()
              << " -> " << r.penalized.back() << "\nmodel -> " << model_path << "\n";
    return 0;
  }
  if (mode != "unsupervised") {
    throw ConfigError("mode must be unsupervised or supervised, not " + mode);
  }
  const std::string train_path = RequirePath(config, "train");
  const auto latin = FilterAll(LoadMonolingual(train_path, Side::kLatin),
                               profile.latin_alphabet, train_path);
  if (latin.empty()) throw DataError(train_path + ": no usable sentences");
  LmSet lms(kMaxNgramOrder + 1);
  for (int n = train.min_order; n <= train.max_order; ++n) lms[n] = LoadLm(lm_dir, n);
  const RestartResult r = TrainWithRestarts(latin, lms, table, prior, train,
                                            [&](int run) { return FileLogger(trace(run)); });
  for (size_t i = 0; i < r.runs.size(); ++i) {
    const TrainResult &run = r.runs[i];
    const std::string path =
        (fs::path(out_dir) / ("model." + std::to_string(i) + ".txt")).string();
    std::ofstream out = OpenOut(path);
    run.params.Write(out);
    run_log << json{{"event", "restart"}, {"run", i}, {"seed", run.seed},
                    {"final_stage_avg_loglik", run.final_stage_avg_loglik},
                    {"skipped", run.skipped}, {"trace", trace(static_cast<int>(i))},
                    {"model", path}}
                   .dump()
            << '\n';
  }
  {
    std::ofstream out = OpenOut(model_path);
    r.runs[r.selected].params.Write(out);
  }
  run_log << json{{"event", "selected"}, {"run", r.selected}, {"model", model_path}}.dump()
          << '\n';
  std::cout << r.runs.size() << " restart(s); selected run " << r.selected
            << " (seed " << r.runs[r.selected].seed << ", final-stage log-likelihood "
            << r.runs[r.selected].final_stage_avg_loglik << ")\nmodel -> " << model_path
            << "\n";
  return 0;
}

int RunDecode(const KeyValueConfig &config) {
  const auto profile = MaybeProfile(config);
  const EmissionParams params = LoadModel(RequirePath(config, "model"));
  const int order = static_cast<int>(config.GetInt("order", kMaxNgramOrder));
  const int delay = static_cast<int>(config.GetInt("delay", profile ? profile->delay : 2));
  if (delay < 1) throw ConfigError("delay must be at least 1");
  const int workers = static_cast<int>(config.GetInt("workers", 1));
  if (workers < 1) throw ConfigError("workers must be at least 1");
  const NgramModel lm = LoadLm(RequirePath(config, "lm_dir"), order);
  const std::string input = RequirePath(config, "input");
  const std::u32string latin_alphabet = Alphabet(*params.table().latin_symbols());
  std::vector<std::u32string> latin;
  size_t removed = 0;
  for (const auto &line : ReadLines(input, ColumnFor(config, "input_format", 0))) {
    size_t r = 0;
    latin.push_back(
        FilterToAlphabet(PreprocessText(DecodeUtf8(line), Side::kLatin), latin_alphabet, &r));
    removed += r;
  }
  if (removed > 0) {
    LOG(WARNING) << input << ": dropped " << removed << " characters outside the alphabet";
  }
  const Decoder decoder(lm, params, delay);
  const auto decoded = decoder.DecodeAll(latin, workers);
  std::ofstream file;
  std::ostream *out = &std::cout;
  if (config.Has("output")) {
    file = OpenOut(config.GetPath("output"));
    out = &file;
  }
  size_t failures = 0;
  for (size_t i = 0; i < decoded.size(); ++i) {
    if (!decoded[i].ok && !latin[i].empty()) {
      ++failures;
      LOG(WARNING) << input << ":" << i + 1 << ": " << decoded[i].error;
    }
    *out << EncodeUtf8(decoded[i].source) << '\n';
  }
  if (failures > 0) {
    std::cerr << failures << " of " << decoded.size()
              << " lines failed to decode and were left empty\n";
  }
  return 0;
}

int RunEval(const KeyValueConfig &config) {
  const std::string hyp_path = RequirePath(config, "hyp");
  const std::string ref_path = RequirePath(config, "ref");
  const auto hyp_lines = ReadLines(hyp_path, -1);
  const auto ref_lines = ReadLines(ref_path, ColumnFor(config, "ref_format", 1));
  if (hyp_lines.size() != ref_lines.size()) {
    throw DataError(hyp_path + " has " + std::to_string(hyp_lines.size()) + " lines but " +
                    ref_path + " has " + std::to_string(ref_lines.size()));
  }
  std::vector<std::u32string> hyps, refs;
  for (size_t i = 0; i < hyp_lines.size(); ++i) {
    hyps.push_back(PreprocessText(DecodeUtf8(hyp_lines[i]), Side::kOriginal));
    refs.push_back(PreprocessText(DecodeUtf8(ref_lines[i]), Side::kOriginal));
  }
  const EvalReport report = Evaluate(hyps, refs);
  if (config.Has("report")) {
    std::ofstream out = OpenOut(config.GetPath("report"));
    WriteReport(out, report);
  }
  if (config.Has("confusion")) {
    std::ofstream out = OpenOut(config.GetPath("confusion"));
    Confusion(hyps, refs).Write(out);
  }
  std::cout << "sentences " << report.rows.size() << "\nexcluded " << report.excluded
            << "\nedits " << report.total_distance << "\nreference_chars "
            << report.total_ref_length << "\ncer " << report.corpus_cer << "\n";
  return 0;
}

int RunSynth(const KeyValueConfig &config) {
  const std::string corpus_path = RequirePath(config, "corpus");
  const std::string channel_path = RequirePath(config, "channel");
  const std::string out_path = RequirePath(config, "out", false);
  const long long n = config.GetInt("n", 1000);
  if (n < 1) throw ConfigError("n must be positive");
  const uint64_t seed = static_cast<uint64_t>(config.GetInt("seed", 1));
  auto corpus = LoadMonolingual(corpus_path, Side::kOriginal);
  if (const auto profile = MaybeProfile(config)) {
    corpus = FilterAll(std::move(corpus), profile->source_alphabet, corpus_path);
  }
  if (corpus.empty()) throw DataError(corpus_path + ": no usable sentences");
  SyntheticChannel channel = SyntheticChannel::FromMappingFile(LoadMappingFile(channel_path), seed);
  channel.Validate();
  const SyntheticData data = GenerateSynthetic(corpus, channel, static_cast<size_t>(n));
  std::vector<ParallelPair> pairs;
  for (size_t i = 0; i < data.latin.size(); ++i) {
    pairs.push_back({data.latin[i], data.original[i]});
  }
  std::ofstream out = OpenOut(out_path);
  WriteParallel(out, pairs);
  std::cout << pairs.size() << " pairs -> " << out_path << "\n";
  return 0;
}

int RunInspect(const KeyValueConfig &config) {
  const EmissionParams params = LoadModel(RequirePath(config, "model"));
  const long long top = config.GetInt("top", 5);
  if (top < 1) throw ConfigError("top must be positive");
  const EditOpTable &table = params.table();
  std::cout << "active ops " << params.NumActive() << " of " << table.size()
            << "\ninsertions " << (params.insertions_enabled() ? "enabled" : "disabled")
            << "\n";
  auto show = [&](const std::vector<int32_t> &family, const std::string &name) {
    std::vector<int32_t> ids;
    for (int32_t id : family) {
      if (params.Active(id)) ids.push_back(id);
    }
    std::stable_sort(ids.begin(), ids.end(),
                     [&](int32_t a, int32_t b) { return params.Prob(a) > params.Prob(b); });
    std::cout << name;
    for (size_t i = 0; i < ids.size() && i < static_cast<size_t>(top); ++i) {
      std::cout << "\t" << table.Describe(ids[i]) << " " << params.Prob(ids[i]);
    }
    std::cout << "\n";
  };
  const SymbolTable &source = *table.source_symbols();
  for (Label s = 1; s <= static_cast<Label>(source.NumSymbols()); ++s) {
    const char32_t c = source.Symbol(s);
    show(table.Family(s), c == U' ' ? "<space>" : EncodeUtf8(c));
  }
  show(table.InsertionFamily(), "INSERT");
  return 0;
}

int Main(int argc, char **argv) {
  CLI::App app{"Decipherment of informally romanized text with a noisy-channel "
               "WFST cascade"};
  app.require_subcommand(1);

  Command train_lm(app, "train-lm", "train character n-gram models of orders 2 to 6");
  train_lm.Add("profile", "language profile", true)
      .Add("corpus", "original-script corpus, one sentence per line", true)
      .Add("out_dir", "directory for lm.<order>.txt", true)
      .Add("min_order", "lowest order (default 2)")
      .Add("max_order", "highest order (default 6)")
      .Add("prune_trigram", "relative-entropy threshold for order 3 (default 1e-5)")
      .Add("prune_higher", "relative-entropy threshold for orders 4 to 6 (default 2e-5)");

  Command train(app, "train", "train the emission model");
  train.Add("profile", "language profile", true)
      .Add("mode", "unsupervised (default) or supervised")
      .Add("train", "romanized corpus for unsupervised training", true)
      .Add("parallel", "latin<TAB>original pairs for supervised training", true)
      .Add("lm_dir", "directory written by train-lm", true)
      .Add("out_dir", "directory for model.txt, traces and run.jsonl", true)
      .Add("prior", "profile (default) or uniform");
  AddTrainKeys(train);

  Command decode(app, "decode", "decode romanized text");
  decode.Add("profile", "language profile (supplies the default delay)", true)
      .Add("model", "emission model", true)
      .Add("lm_dir", "directory written by train-lm", true)
      .Add("order", "LM order used for decoding (default 6)")
      .Add("delay", "delay limit (default: profile, else 2)")
      .Add("input", "romanized input", true)
      .Add("input_format", "text (default) or parallel (first column)")
      .Add("output", "decoded text (default stdout)", true)
      .Add("workers", "decoding threads (default 1)");

  Command eval(app, "eval", "character error rate of decoded text");
  eval.Add("hyp", "decoded text", true)
      .Add("ref", "reference text", true)
      .Add("ref_format", "text (default) or parallel (second column)")
      .Add("report", "per-sentence report", true)
      .Add("confusion", "confusion matrix TSV", true);

  Command synth(app, "synth", "generate synthetic parallel data");
  synth.Add("profile", "language profile used to filter the corpus", true)
      .Add("corpus", "original-script corpus", true)
      .Add("channel", "mapping file with optional @insertion_rate/@deletion_rate", true)
      .Add("n", "number of sentences (default 1000)")
      .Add("seed", "random seed (default 1)")
      .Add("out", "latin<TAB>original output", true);

  Command inspect(app, "inspect-model", "print the most probable edits per source symbol");
  inspect.Add("model", "emission model", true).Add("top", "edits shown per row (default 5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  std::vector<std::string> known;
  for (const Command *c : {&train_lm, &train, &decode, &eval, &synth, &inspect}) {
    for (const auto &key : c->Keys()) known.push_back(key);
  }
  try {
    if (train_lm.app()->parsed()) return RunTrainLm(train_lm.Resolve(known));
    if (train.app()->parsed()) return RunTrain(train.Resolve(known));
    if (decode.app()->parsed()) return RunDecode(decode.Resolve(known));
    if (eval.app()->parsed()) return RunEval(eval.Resolve(known));
    if (synth.app()->parsed()) return RunSynth(synth.Resolve(known));
    if (inspect.app()->parsed()) return RunInspect(inspect.Resolve(known));
  } catch (const ConfigError &e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const DataError &e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "training failed: " << e.what() << "\n";
    return 3;
  }
  return 1;
}

}  // namespace
}  // namespace romdec

int main(int argc, char **argv) {
  FLAGS_logtostderr = true;
  FLAGS_minloglevel = 1;
  google::InitGoogleLogging(argv[0]);
  return romdec::Main(argc, argv);
}
