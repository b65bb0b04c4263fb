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

// Brute-force reference implementations used by the tests. Each one is
// written independently of the library code it checks.

#ifndef ROMDEC_TESTS_ORACLES_H_
#define ROMDEC_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "romdec/channel.h"
#include "romdec/fst.h"
#include "romdec/ngram.h"
#include "romdec/random.h"
#include "romdec/semiring.h"

namespace romdec::oracle {

template <class W>
struct EnumeratedPath {
  std::vector<Arc<W>> arcs;
  W final;
};

// Every successful path of an acyclic machine, depth first. Throws when
// more than `limit` paths exist.
template <class W>
std::vector<EnumeratedPath<W>> EnumeratePaths(const VectorFst<W> &fst,
                                              size_t limit = 100000) {
  std::vector<EnumeratedPath<W>> out;
  if (fst.Start() == kNoState) return out;
  std::vector<Arc<W>> stack;
  std::function<void(StateId)> visit = [&](StateId s) {
    if (stack.size() > static_cast<size_t>(fst.NumStates())) {
      throw std::runtime_error("cycle during path enumeration");
    }
    if (fst.IsFinal(s)) {
      out.push_back({stack, fst.Final(s)});
      if (out.size() > limit) throw std::runtime_error("too many paths");
    }
    for (const auto &arc : fst.Arcs(s)) {
      stack.push_back(arc);
      visit(arc.nextstate);
      stack.pop_back();
    }
  };
  visit(fst.Start());
  return out;
}

// Number of successful paths of an acyclic machine with states in
// topological id order (arcs only go to higher ids).
template <class W>
double CountPathsForward(const VectorFst<W> &fst) {
  if (fst.Start() == kNoState) return 0.0;
  std::vector<double> n(fst.NumStates(), 0.0);
  n[fst.Start()] = 1.0;
  double total = 0.0;
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    if (fst.IsFinal(s)) total += n[s];
    for (const auto &arc : fst.Arcs(s)) n[arc.nextstate] += n[s];
  }
  return total;
}

// Sum over paths of the linear-domain mass, and of the expectation vector
// Σ_i (Π_{j≠i} p_j) v_i, for an expectation-weighted machine.
struct ExpectationTotals {
  double mass = 0.0;
  std::map<int32_t, double> vector;
};

inline ExpectationTotals EnumerateExpectation(const ExpectationFst &fst) {
  ExpectationTotals totals;
  for (const auto &path : EnumeratePaths(fst)) {
    std::vector<const ExpectationWeight *> factors;
    for (const auto &arc : path.arcs) factors.push_back(&arc.weight);
    factors.push_back(&path.final);
    double mass = 1.0;
    for (const auto *w : factors) mass *= std::exp(-w->Value());
    totals.mass += mass;
    for (size_t i = 0; i < factors.size(); ++i) {
      double others = 1.0;
      for (size_t j = 0; j < factors.size(); ++j) {
        if (j != i) others *= std::exp(-factors[j]->Value());
      }
      for (const auto &[id, v] : factors[i]->v().entries()) {
        totals.vector[id] += others * v;
      }
    }
  }
  return totals;
}

// Linear-domain total mass by enumeration, for tropical or log machines.
template <class W>
double EnumerateMass(const VectorFst<W> &fst) {
  double total = 0.0;
  for (const auto &path : EnumeratePaths(fst)) {
    double v = path.final.Value();
    for (const auto &arc : path.arcs) v += arc.weight.Value();
    total += std::exp(-v);
  }
  return total;
}

// Random machine whose arcs only go from lower to higher state ids.
// `labels` bounds input/output labels (0 allowed when `epsilons`).
template <class W, class F>
VectorFst<W> RandomDag(Rng &rng, int num_states, int labels, double arc_prob,
                       bool epsilons, F make_weight) {
  VectorFst<W> fst;
  for (int s = 0; s < num_states; ++s) fst.AddState();
  fst.SetStart(0);
  auto label = [&]() {
    const int lo = epsilons ? 0 : 1;
    return static_cast<Label>(lo + UniformIndex(rng, labels + 1 - lo));
  };
  for (int s = 0; s < num_states; ++s) {
    for (int t = s + 1; t < num_states; ++t) {
      if (Uniform01(rng) < arc_prob) {
        fst.AddArc(s, {label(), label(), make_weight(), t});
      }
    }
    if (s == num_states - 1 || Uniform01(rng) < 0.2) fst.SetFinal(s, make_weight());
  }
  return fst;
}

// Probability of not inserting, paid per consumed source symbol and at the
// end; 1 while insertions are off.
inline double NoInsertionProb(const EmissionParams &params) {
  const int32_t stop = params.table().NoInsertionOp();
  return params.Usable(stop) ? params.Prob(stop) : 1.0;
}

// Edit-alignment marginal Σ_e p(l, e | o) over alignments whose prefix
// delay (consumed source minus emitted target) stays within [-d, d].
inline double ChannelMarginal(const EmissionParams &params, int d,
                              std::u32string_view o, std::u32string_view l) {
  const EditOpTable &t = params.table();
  const double stop = NoInsertionProb(params);
  auto prob = [&](char32_t so, char32_t tl) {
    const int32_t id = t.FindChars(so, tl);
    if (id < 0 || !params.Usable(id)) return 0.0;
    return so == 0 ? params.Prob(id) : params.Prob(id) * stop;
  };
  const size_t n = o.size(), m = l.size();
  std::vector<std::vector<double>> f(n + 1, std::vector<double>(m + 1, 0.0));
  f[0][0] = 1.0;
  for (size_t i = 0; i <= n; ++i) {
    for (size_t j = 0; j <= m; ++j) {
      const long delay = static_cast<long>(i) - static_cast<long>(j);
      if (std::labs(delay) > d) {
        f[i][j] = 0.0;
        continue;
      }
      if (i > 0 && j > 0) f[i][j] += f[i - 1][j - 1] * prob(o[i - 1], l[j - 1]);
      if (i > 0) f[i][j] += f[i - 1][j] * prob(o[i - 1], 0);
      if (j > 0) f[i][j] += f[i][j - 1] * prob(0, l[j - 1]);
    }
  }
  return f[n][m] * stop;
}

// Minimum Σ -ln θ over delay-limited alignments of o with l.
inline double ChannelViterbi(const EmissionParams &params, int d,
                             std::u32string_view o, std::u32string_view l) {
  const EditOpTable &t = params.table();
  const double stop = -std::log(NoInsertionProb(params));
  auto cost = [&](char32_t so, char32_t tl) {
    const int32_t id = t.FindChars(so, tl);
    if (id < 0 || !params.Usable(id)) return kInfinity;
    return so == 0 ? params.NegLogProb(id) : params.NegLogProb(id) + stop;
  };
  const size_t n = o.size(), m = l.size();
  std::vector<std::vector<double>> f(n + 1,
                                     std::vector<double>(m + 1, kInfinity));
  f[0][0] = 0.0;
  for (size_t i = 0; i <= n; ++i) {
    for (size_t j = 0; j <= m; ++j) {
      if (std::labs(static_cast<long>(i) - static_cast<long>(j)) > d) continue;
      double best = f[i][j];
      if (i > 0 && j > 0) best = std::min(best, f[i - 1][j - 1] + cost(o[i - 1], l[j - 1]));
      if (i > 0) best = std::min(best, f[i - 1][j] + cost(o[i - 1], 0));
      if (j > 0) best = std::min(best, f[i][j - 1] + cost(0, l[j - 1]));
      f[i][j] = best;
    }
  }
  return f[n][m] + stop;
}

// Every string over `alphabet` of length 0..max_len.
inline std::vector<std::u32string> AllStrings(std::u32string_view alphabet,
                                              size_t max_len) {
  std::vector<std::u32string> out{U""};
  size_t begin = 0;
  for (size_t len = 1; len <= max_len; ++len) {
    const size_t end = out.size();
    for (size_t i = begin; i < end; ++i) {
      for (char32_t c : alphabet) out.push_back(out[i] + c);
    }
    begin = end;
  }
  return out;
}

// Interpolated Witten-Bell probability computed straight from counts by
// recursion on the history:
//   p(w|h) = (c(hw) + k d(h) p(w|h')) / (c(h) + k d(h)),
// with unseen histories passing through to h'. The base case is uniform
// over vocabulary + end.
inline double WittenBellDirect(const NgramCounts &counts, double k,
                               std::u32string_view context, char32_t next) {
  std::u32string h(context);
  if (h.size() > static_cast<size_t>(counts.order - 1)) {
    h = h.substr(h.size() - (counts.order - 1));
  }
  std::function<double(const std::u32string &)> p =
      [&](const std::u32string &hist) -> double {
    const double base =
        1.0 / static_cast<double>(counts.vocabulary.size() + 1);
    const bool in_vocab = next == kEos ||
                          counts.vocabulary.find(next) != std::u32string::npos;
    if (!in_vocab) return 0.0;
    const double lower = hist.empty() ? base : p(hist.substr(1));
    auto it = counts.counts.find(hist);
    if (it == counts.counts.end()) return hist.empty() ? base : lower;
    double c = 0.0;
    for (const auto &[w, n] : it->second) c += static_cast<double>(n);
    const double dv = static_cast<double>(it->second.size());
    auto cw = it->second.find(next);
    const double chw = cw == it->second.end() ? 0.0 : static_cast<double>(cw->second);
    return (chw + k * dv * lower) / (c + k * dv);
  };
  return p(h);
}

// Sentences from a random first-order Markov chain over `alphabet`, so
// that higher orders still help through the sentence boundaries.
inline std::vector<std::u32string> SampleCorpus(Rng &rng,
                                                std::u32string_view alphabet,
                                                size_t sentences,
                                                size_t min_len,
                                                size_t max_len) {
  const size_t n = alphabet.size();
  std::vector<std::vector<double>> next(n, std::vector<double>(n));
  for (auto &row : next) {
    double total = 0.0;
    for (double &p : row) {
      p = std::pow(Uniform01(rng), 3.0);
      total += p;
    }
    for (double &p : row) p /= total;
  }
  std::vector<std::u32string> out;
  for (size_t i = 0; i < sentences; ++i) {
    const size_t len = min_len + UniformIndex(rng, max_len - min_len + 1);
    std::u32string s;
    size_t c = UniformIndex(rng, n);
    for (size_t j = 0; j < len; ++j) {
      s.push_back(alphabet[c]);
      double u = Uniform01(rng), acc = 0.0;
      size_t pick = n - 1;
      for (size_t k = 0; k < n; ++k) {
        acc += next[c][k];
        if (u < acc) {
          pick = k;
          break;
        }
      }
      c = pick;
    }
    out.push_back(s);
  }
  return out;
}

// Space-separated words drawn with Zipf(1) frequencies from a random
// lexicon over `letters`; longer contexts carry real information here.
inline std::vector<std::u32string> SampleWordCorpus(
    Rng &rng, std::u32string_view letters, size_t lexicon_size,
    size_t sentences, size_t max_words) {
  std::vector<std::u32string> lexicon;
  while (lexicon.size() < lexicon_size) {
    std::u32string w;
    const size_t len = 2 + UniformIndex(rng, 5);
    for (size_t i = 0; i < len; ++i) w.push_back(letters[UniformIndex(rng, letters.size())]);
    if (std::find(lexicon.begin(), lexicon.end(), w) == lexicon.end()) lexicon.push_back(w);
  }
  std::vector<double> cdf(lexicon_size);
  double total = 0.0;
  for (size_t i = 0; i < lexicon_size; ++i) cdf[i] = (total += 1.0 / (i + 1));
  std::vector<std::u32string> out;
  for (size_t i = 0; i < sentences; ++i) {
    const size_t words = 1 + UniformIndex(rng, max_words);
    std::u32string s;
    for (size_t j = 0; j < words; ++j) {
      const double u = Uniform01(rng) * total;
      const size_t k = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
      if (!s.empty()) s.push_back(U' ');
      s += lexicon[std::min(k, lexicon_size - 1)];
    }
    out.push_back(s);
  }
  return out;
}

// Follows `fst` from `s` on `label`, taking failure arcs while no arc
// matches. Returns (-ln weight, destination) or (+inf, kNoState).
template <class W>
std::pair<double, StateId> WalkWithFailure(const VectorFst<W> &fst, StateId s,
                                           Label label) {
  double acc = 0.0;
  for (int guard = 0; guard <= fst.NumStates(); ++guard) {
    const Arc<W> *fail = nullptr;
    for (const auto &arc : fst.Arcs(s)) {
      if (arc.ilabel == label) return {acc + arc.weight.Value(), arc.nextstate};
      if (arc.ilabel == fst.FailureLabel()) fail = &arc;
    }
    if (fail == nullptr) return {kInfinity, kNoState};
    acc += fail->weight.Value();
    s = fail->nextstate;
  }
  return {kInfinity, kNoState};
}

// -ln final weight at `s`, following failure arcs while not final.
template <class W>
double FinalWithFailure(const VectorFst<W> &fst, StateId s) {
  double acc = 0.0;
  for (int guard = 0; guard <= fst.NumStates(); ++guard) {
    if (fst.IsFinal(s)) return acc + fst.Final(s).Value();
    const Arc<W> *fail = nullptr;
    for (const auto &arc : fst.Arcs(s)) {
      if (arc.ilabel == fst.FailureLabel()) fail = &arc;
    }
    if (fail == nullptr) return kInfinity;
    acc += fail->weight.Value();
    s = fail->nextstate;
  }
  return kInfinity;
}

}  // namespace romdec::oracle

#endif  // ROMDEC_TESTS_ORACLES_H_
