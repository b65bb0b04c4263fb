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

// Parameter estimation for the emission model: expectation-semiring
// E-step, MAP M-step, stepwise online EM with the curriculum schedule, and
// supervised EM on lattices constrained on both sides.

#ifndef ROMDEC_TRAINING_H_
#define ROMDEC_TRAINING_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "romdec/channel.h"
#include "romdec/corpus.h"
#include "romdec/fst.h"
#include "romdec/ngram.h"

namespace romdec {

enum class EStepMethod {
  kForwardBackward,  // default
  kShortestDistance  // generic expectation-semiring route, for checking
};

struct TrainConfig {
  int batch_size = 10;
  double beta = 0.9;
  int batches_per_stage = 100;
  int min_order = 2;
  int max_order = 6;
  double frozen_deletion = 3.720075976020836e-44;  // e^-100
  double prune_start = 5.0;
  double prune_end = 4.5;
  int delay = 2;
  int restarts = 1;
  uint64_t seed = 1;
  double init_noise = 0.1;
  int supervised_iterations = 5;
  int workers = 1;
  EStepMethod estep = EStepMethod::kForwardBackward;

  int NumStages() const { return max_order - min_order + 1; }
  // Linear steps from prune_start to prune_end across the stages.
  double PruneThreshold(int stage) const;
  // Throws ConfigError on inconsistent values.
  void Validate() const;
};

struct EStepResult {
  double loglik = 0.0;         // ln p(l), or ln p(o, l) when supervised
  std::vector<double> counts;  // expected traversals per op id
};

// E-step on T ∘ S ∘ A(l). Returns nullopt when the lattice is empty.
// Throws UnknownSymbolError for a character outside S's output table.
std::optional<EStepResult> EStepSentence(
    const ExpectationFst &lm, const ExpectationFst &emission,
    std::u32string_view latin, size_t num_ops,
    EStepMethod method = EStepMethod::kForwardBackward);

// E-step on A(o) ∘ T ∘ S ∘ A(l).
std::optional<EStepResult> EStepPair(
    const ExpectationFst &lm, const ExpectationFst &emission,
    std::u32string_view original, std::u32string_view latin, size_t num_ops,
    EStepMethod method = EStepMethod::kForwardBackward);

// θ = (mu + alpha) / Σ_family (mu + alpha) over each family's active ops.
// Families with no mass keep `previous`; a frozen deletion stays pinned.
EmissionParams MStep(const std::vector<double> &mu, const PriorSpec &prior,
                     const EmissionParams &previous);

// η_k = (k + 2)^-β.
double StepSize(int64_t k, double beta);
// (1 - η_k) mu + η_k s.
std::vector<double> StepwiseUpdate(const std::vector<double> &mu,
                                   const std::vector<double> &s, int64_t k,
                                   double beta);

// Σ_op alpha_op ln θ_op, skipping zero pseudo-counts.
double LogPriorTerm(const EmissionParams &params, const PriorSpec &prior);

// One record per batch and one per stage transition.
struct BatchRecord {
  int64_t batch = 0;
  int stage = 0;
  int order = 0;
  int sentences = 0;
  int skipped = 0;
  double loglik = 0.0;      // summed over the batch's used sentences
  double threshold = 0.0;
  size_t active_ops = 0;    // active ops after the batch's M-step
  size_t emission_arcs = 0; // arcs in the emission machine the batch used
};

struct StageRecord {
  int64_t before_batch = 0;
  int stage = 0;
  int order = 0;
  double threshold = 0.0;
  size_t pruned = 0;
  size_t active_ops = 0;
};

struct TrainResult {
  EmissionParams params;
  uint64_t seed = 0;
  std::vector<BatchRecord> batches;
  std::vector<StageRecord> stages;
  double final_stage_avg_loglik = 0.0;
  int64_t skipped = 0;
};

// Language models indexed by order (entries below min_order may be empty).
using LmSet = std::vector<std::optional<NgramModel>>;

using TrainLogger = std::function<void(const std::string &json_line)>;

// One pass of stepwise EM over `latin`, shortest sentences first.
TrainResult TrainUnsupervised(const std::vector<std::u32string> &latin,
                              const LmSet &lms,
                              std::shared_ptr<const EditOpTable> table,
                              const PriorSpec &prior,
                              const TrainConfig &config, uint64_t seed,
                              const TrainLogger &log = {});

// config.restarts runs with seeds config.seed + r; `selected` is the index
// of the run with the highest final-stage average log-likelihood.
struct RestartResult {
  std::vector<TrainResult> runs;
  size_t selected = 0;
};
RestartResult TrainWithRestarts(const std::vector<std::u32string> &latin,
                                const LmSet &lms,
                                std::shared_ptr<const EditOpTable> table,
                                const PriorSpec &prior,
                                const TrainConfig &config,
                                const std::function<TrainLogger(int)> &log = {});

struct SupervisedResult {
  EmissionParams params;
  // Objective before each M-step and after the last one:
  // iterations + 1 entries.
  std::vector<double> loglik;
  std::vector<double> penalized;  // loglik + LogPriorTerm
  size_t excluded = 0;            // length gap above the delay
  size_t skipped = 0;             // no lattice or unknown symbols
  size_t used = 0;
};

// Full-batch EM on parallel pairs with an order-`lm.order()` model.
SupervisedResult TrainSupervised(const std::vector<ParallelPair> &pairs,
                                 const NgramModel &lm,
                                 std::shared_ptr<const EditOpTable> table,
                                 const PriorSpec &prior,
                                 const TrainConfig &config,
                                 const TrainLogger &log = {});

// Whether a pair can yield a lattice under delay `d`.
bool WithinDelay(const ParallelPair &pair, int delay);

}  // namespace romdec

#endif  // ROMDEC_TRAINING_H_
