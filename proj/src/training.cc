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

#include "romdec/training.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include <glog/logging.h>
#include <json.hpp>

#include "romdec/errors.h"
#include "romdec/expectation.h"
#include "romdec/fst_algorithms.h"

namespace romdec {
namespace {

// Runs fn(i) for i in [0, n) on `workers` threads, strided so the work
// split does not depend on timing.
template <class F>
void ParallelFor(size_t n, int workers, F fn) {
  if (workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const size_t w = std::min<size_t>(workers, n);
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (size_t t = 0; t < w; ++t) {
    threads.emplace_back([&, t] {
      for (size_t i = t; i < n; i += w) fn(i);
    });
  }
  for (auto &th : threads) th.join();
}

ExpectationFst LmToExpectation(const NgramModel &lm,
                               std::shared_ptr<const SymbolTable> symbols) {
  return MapWeights<ExpectationWeight>(
      ToWfsa(lm, std::move(symbols)),
      [](LogWeight w) { return ExpectationWeight(w, SparseVector()); });
}

std::optional<EStepResult> Expect(const ExpectationFst &lattice,
                                  size_t num_ops, EStepMethod method) {
  if (lattice.NumStates() == 0) return std::nullopt;
  ExpectedCounts ec = method == EStepMethod::kForwardBackward
                          ? ExpectedCountsForwardBackward(lattice, num_ops)
                          : ExpectedCountsShortestDistance(lattice, num_ops);
  if (!std::isfinite(ec.neg_log_mass)) return std::nullopt;
  return EStepResult{-ec.neg_log_mass, std::move(ec.counts)};
}

struct BatchStats {
  std::vector<double> counts;
  double loglik = 0.0;
  int used = 0;
  int skipped = 0;
};

// Sums per-item results in index order.
BatchStats Reduce(std::vector<std::optional<EStepResult>> &results,
                  size_t num_ops) {
  KahanVector sum(num_ops);
  BatchStats stats;
  for (auto &r : results) {
    if (!r) {
      ++stats.skipped;
      continue;
    }
    ++stats.used;
    stats.loglik += r->loglik;
    for (size_t i = 0; i < num_ops; ++i) {
      if (r->counts[i] != 0.0) sum.Add(i, r->counts[i]);
    }
  }
  stats.counts = sum.values();
  return stats;
}

void Emit(const TrainLogger &log, const nlohmann::json &record) {
  if (log) log(record.dump());
}

}  // namespace

double TrainConfig::PruneThreshold(int stage) const {
  if (NumStages() <= 1) return prune_start;
  return prune_start +
         (prune_end - prune_start) * stage / static_cast<double>(NumStages() - 1);
}

void TrainConfig::Validate() const {
  if (batch_size < 1) throw ConfigError("batch_size must be positive");
  if (!(beta > 0.5 && beta <= 1.0)) {
    throw ConfigError("beta must lie in (0.5, 1]");
  }
  if (batches_per_stage < 1) {
    throw ConfigError("batches_per_stage must be positive");
  }
  if (min_order < kMinNgramOrder || max_order > kMaxNgramOrder ||
      min_order > max_order) {
    throw ConfigError("LM orders must satisfy 2 <= min_order <= max_order <= 6");
  }
  if (!(frozen_deletion > 0.0 && frozen_deletion < 1.0)) {
    throw ConfigError("frozen_deletion must lie in (0, 1)");
  }
  if (!(prune_start > 0.0) || !(prune_end > 0.0)) {
    throw ConfigError("prune thresholds must be positive");
  }
  if (delay < 1) throw ConfigError("delay must be at least 1");
  if (restarts < 1) throw ConfigError("restarts must be at least 1");
  if (!(init_noise >= 0.0)) throw ConfigError("init_noise must be >= 0");
  if (supervised_iterations < 1) {
    throw ConfigError("supervised_iterations must be positive");
  }
  if (workers < 1) throw ConfigError("workers must be positive");
}

std::optional<EStepResult> EStepSentence(const ExpectationFst &lm,
                                         const ExpectationFst &emission,
                                         std::u32string_view latin,
                                         size_t num_ops, EStepMethod method) {
  const auto observed =
      ChainAcceptor<ExpectationWeight>(latin, emission.OutputSymbols());
  return Expect(Compose(lm, Compose(emission, observed)), num_ops, method);
}

std::optional<EStepResult> EStepPair(const ExpectationFst &lm,
                                     const ExpectationFst &emission,
                                     std::u32string_view original,
                                     std::u32string_view latin,
                                     size_t num_ops, EStepMethod method) {
  const auto source =
      ChainAcceptor<ExpectationWeight>(original, lm.InputSymbols());
  const auto observed =
      ChainAcceptor<ExpectationWeight>(latin, emission.OutputSymbols());
  return Expect(Compose(Compose(source, lm), Compose(emission, observed)),
                num_ops, method);
}

EmissionParams MStep(const std::vector<double> &mu, const PriorSpec &prior,
                     const EmissionParams &previous) {
  const EditOpTable &table = previous.table();
  EmissionParams out = previous;
  auto update = [&](const std::vector<int32_t> &family, bool has_deletion) {
    const bool frozen = has_deletion && previous.frozen_deletion().has_value();
    const size_t end = frozen ? family.size() - 1 : family.size();
    double total = 0.0;
    for (size_t i = 0; i < end; ++i) {
      const int32_t id = family[i];
      if (previous.Active(id)) total += mu[id] + prior.alpha[id];
    }
    if (!(total > 0.0) || !std::isfinite(total)) return;
    const double budget = frozen ? 1.0 - *previous.frozen_deletion() : 1.0;
    for (size_t i = 0; i < end; ++i) {
      const int32_t id = family[i];
      if (previous.Active(id)) {
        out.SetProb(id, budget * (mu[id] + prior.alpha[id]) / total);
      }
    }
    if (frozen) out.SetProb(family.back(), *previous.frozen_deletion());
  };
  const Label ns = static_cast<Label>(table.source_symbols()->NumSymbols());
  for (Label s = 1; s <= ns; ++s) update(table.Family(s), true);
  if (previous.insertions_enabled()) update(table.InsertionFamily(), false);
  return out;
}

double StepSize(int64_t k, double beta) {
  return std::pow(static_cast<double>(k) + 2.0, -beta);
}

std::vector<double> StepwiseUpdate(const std::vector<double> &mu,
                                   const std::vector<double> &s, int64_t k,
                                   double beta) {
  const double eta = StepSize(k, beta);
  std::vector<double> out(mu.size());
  for (size_t i = 0; i < mu.size(); ++i) {
    out[i] = (1.0 - eta) * mu[i] + eta * s[i];
  }
  return out;
}

double LogPriorTerm(const EmissionParams &params, const PriorSpec &prior) {
  double total = 0.0;
  for (size_t id = 0; id < prior.alpha.size(); ++id) {
    if (prior.alpha[id] > 0.0) total += prior.alpha[id] * std::log(params.Prob(id));
  }
  return total;
}

TrainResult TrainUnsupervised(const std::vector<std::u32string> &latin,
                              const LmSet &lms,
                              std::shared_ptr<const EditOpTable> table,
                              const PriorSpec &prior,
                              const TrainConfig &config, uint64_t seed,
                              const TrainLogger &log) {
  config.Validate();
  for (int n = config.min_order; n <= config.max_order; ++n) {
    if (static_cast<int>(lms.size()) <= n || !lms[n] || lms[n]->order() != n) {
      throw ConfigError("missing language model of order " + std::to_string(n));
    }
  }
  if (latin.empty()) throw TrainingError("no training sentences");
  const size_t num_ops = table->size();
  if (prior.alpha.size() != num_ops) {
    throw ConfigError("prior does not match the edit-op table");
  }

  std::vector<size_t> order(latin.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return latin[a].size() < latin[b].size();
  });

  const bool bigram_first = config.min_order == 2;
  InitOptions init{seed, config.init_noise, !bigram_first, std::nullopt};
  if (bigram_first) init.frozen_deletion = config.frozen_deletion;

  TrainResult result{InitParams(table, init), seed, {}, {}, 0.0, 0};
  EmissionParams &params = result.params;
  // The running statistics start at the initial parameters, one
  // pseudo-observation per family, so ops a first small batch misses keep
  // mass. `init_weight` is what is left of that start after k updates.
  std::vector<double> mu = params.probs();
  double init_weight = 1.0;
  ExpectationFst lm;
  int stage = -1;
  const int64_t num_batches =
      (static_cast<int64_t>(latin.size()) + config.batch_size - 1) /
      config.batch_size;

  for (int64_t k = 0; k < num_batches; ++k) {
    if (k == 0 || (k % config.batches_per_stage == 0 &&
                   stage + 1 < config.NumStages())) {
      ++stage;
      const int n = config.min_order + stage;
      lm = LmToExpectation(*lms[n], table->source_symbols());
      const double threshold = config.PruneThreshold(stage);
      StageRecord rec{k, stage, n, threshold, params.Prune(threshold), 0};
      if (stage == 1 && bigram_first) {
        // Leaving the bigram stage: deletions and insertions restart from
        // the values a fresh initialization would give them.
        InitOptions open{seed, config.init_noise, true, std::nullopt};
        const EmissionParams fresh = InitParams(table, open);
        const Label ns = static_cast<Label>(table->source_symbols()->NumSymbols());
        std::vector<int32_t> reopened = table->InsertionFamily();
        for (Label s = 1; s <= ns; ++s) reopened.push_back(table->DeletionOp(s));
        for (int32_t id : reopened) {
          params.SetProb(id, fresh.Prob(id));
          mu[id] = init_weight * fresh.Prob(id);
        }
        params.UnfreezeDeletions();
        params.set_insertions_enabled(true);
        params.Normalize();
      }
      rec.active_ops = params.NumActive();
      result.stages.push_back(rec);
      Emit(log, {{"event", "stage"}, {"before_batch", k}, {"stage", stage},
                 {"order", n}, {"threshold", threshold},
                 {"pruned", rec.pruned}, {"active_ops", rec.active_ops},
                 {"insertions", params.insertions_enabled()},
                 {"deletions_frozen", params.frozen_deletion().has_value()}});
    }

    const ExpectationFst emission = BuildEmissionExpectation(params, config.delay);
    const size_t first = static_cast<size_t>(k) * config.batch_size;
    const size_t last = std::min(latin.size(), first + config.batch_size);
    std::vector<std::optional<EStepResult>> results(last - first);
    ParallelFor(results.size(), config.workers, [&](size_t i) {
      try {
        results[i] = EStepSentence(lm, emission, latin[order[first + i]],
                                   num_ops, config.estep);
      } catch (const UnknownSymbolError &) {
        results[i].reset();
      }
    });
    BatchStats stats = Reduce(results, num_ops);
    if (stats.skipped > 0) {
      LOG(WARNING) << "batch " << k << ": skipped " << stats.skipped
                   << " sentences with no lattice";
    }
    if (stats.used == 0) {
      throw TrainingError("every sentence of batch " + std::to_string(k) +
                          " was skipped");
    }
    result.skipped += stats.skipped;
    mu = StepwiseUpdate(mu, stats.counts, k, config.beta);
    init_weight *= 1.0 - StepSize(k, config.beta);
    params = MStep(mu, prior, params);

    BatchRecord rec{k, stage, config.min_order + stage, stats.used,
                    stats.skipped, stats.loglik, config.PruneThreshold(stage),
                    params.NumActive(), emission.NumArcs()};
    result.batches.push_back(rec);
    Emit(log, {{"event", "batch"}, {"batch", k}, {"stage", stage},
               {"order", rec.order}, {"sentences", rec.sentences},
               {"skipped", rec.skipped}, {"loglik", rec.loglik},
               {"eta", StepSize(k, config.beta)},
               {"threshold", rec.threshold}, {"active_ops", rec.active_ops},
               {"emission_arcs", rec.emission_arcs}});
  }

  double total = 0.0;
  int64_t used = 0;
  for (const auto &b : result.batches) {
    if (b.stage == stage) {
      total += b.loglik;
      used += b.sentences;
    }
  }
  result.final_stage_avg_loglik = used > 0 ? total / used : -kInfinity;
  Emit(log, {{"event", "done"}, {"seed", seed}, {"final_stage", stage},
             {"final_stage_avg_loglik", result.final_stage_avg_loglik},
             {"skipped", result.skipped}});
  return result;
}

RestartResult TrainWithRestarts(const std::vector<std::u32string> &latin,
                                const LmSet &lms,
                                std::shared_ptr<const EditOpTable> table,
                                const PriorSpec &prior,
                                const TrainConfig &config,
                                const std::function<TrainLogger(int)> &log) {
  config.Validate();
  RestartResult out;
  for (int r = 0; r < config.restarts; ++r) {
    out.runs.push_back(TrainUnsupervised(latin, lms, table, prior, config,
                                         config.seed + r,
                                         log ? log(r) : TrainLogger()));
    if (out.runs.back().final_stage_avg_loglik >
        out.runs[out.selected].final_stage_avg_loglik) {
      out.selected = out.runs.size() - 1;
    }
  }
  return out;
}

bool WithinDelay(const ParallelPair &pair, int delay) {
  const auto a = static_cast<long long>(pair.original.size());
  const auto b = static_cast<long long>(pair.latin.size());
  return std::llabs(a - b) <= delay;
}

SupervisedResult TrainSupervised(const std::vector<ParallelPair> &pairs,
                                 const NgramModel &lm,
                                 std::shared_ptr<const EditOpTable> table,
                                 const PriorSpec &prior,
                                 const TrainConfig &config,
                                 const TrainLogger &log) {
  config.Validate();
  const size_t num_ops = table->size();
  if (prior.alpha.size() != num_ops) {
    throw ConfigError("prior does not match the edit-op table");
  }
  std::vector<const ParallelPair *> kept;
  size_t excluded = 0;
  for (const auto &p : pairs) {
    if (WithinDelay(p, config.delay)) {
      kept.push_back(&p);
    } else {
      ++excluded;
    }
  }
  if (kept.empty()) {
    throw TrainingError("all " + std::to_string(pairs.size()) +
                        " pairs differ in length by more than the delay " +
                        std::to_string(config.delay));
  }
  const ExpectationFst t = LmToExpectation(lm, table->source_symbols());
  SupervisedResult result{
      InitParams(table, {config.seed, config.init_noise, true, std::nullopt}),
      {}, {}, excluded, 0, 0};
  for (int it = 0; it <= config.supervised_iterations; ++it) {
    const ExpectationFst emission =
        BuildEmissionExpectation(result.params, config.delay);
    std::vector<std::optional<EStepResult>> results(kept.size());
    ParallelFor(kept.size(), config.workers, [&](size_t i) {
      try {
        results[i] = EStepPair(t, emission, kept[i]->original, kept[i]->latin,
                               num_ops, config.estep);
      } catch (const UnknownSymbolError &) {
        results[i].reset();
      }
    });
    BatchStats stats = Reduce(results, num_ops);
    if (it == 0) {
      if (stats.used == 0) {
        throw TrainingError("no parallel pair yields a lattice");
      }
      result.skipped = stats.skipped;
      result.used = stats.used;
    }
    const double penalized = stats.loglik + LogPriorTerm(result.params, prior);
    result.loglik.push_back(stats.loglik);
    result.penalized.push_back(penalized);
    Emit(log, {{"event", "iteration"}, {"iteration", it},
               {"pairs", stats.used}, {"skipped", stats.skipped},
               {"loglik", stats.loglik}, {"penalized", penalized}});
    if (it == config.supervised_iterations) break;
    result.params = MStep(stats.counts, prior, result.params);
  }
  return result;
}

}  // namespace romdec
