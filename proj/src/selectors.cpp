// Copyright 2026 The Authors.
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

#include "coreset/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "argmax.hpp"
#include "coreset/diversity.hpp"
#include "coreset/entropy.hpp"
#include "coreset/error.hpp"
#include "coreset/rng.hpp"

namespace coreset {

namespace {

constexpr std::pair<Method, std::string_view> kMethodNames[] = {
    {Method::kDiversity, "diversity"},
    {Method::kPhonemeBalance, "phoneme_balance"},
    {Method::kInputBalance, "input_balance"},
    {Method::kRandom, "random"},
    {Method::kFarthestPoint, "farthest_point"},
};

constexpr std::pair<OverflowPolicy, std::string_view> kPolicyNames[] = {
    {OverflowPolicy::kStopOnFirstOverflow, "stop_on_first_overflow"},
    {OverflowPolicy::kSkipAndContinue, "skip_and_continue"},
};

std::string underscored(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

// State shared by every selector: which candidates are still in play and
// how much of the budget is used.
class Pool {
 public:
  Pool(const Manifest& manifest, const SelectionBudget& budget)
      : manifest_(manifest),
        budget_(budget),
        available_(manifest.size(), 1),
        skip_(budget.overflow_policy == OverflowPolicy::kSkipAndContinue) {}

  std::size_t size() const { return available_.size(); }

  bool fits(std::size_t i) const {
    return cumulative_ + manifest_.duration(i) <= budget_.t_max;
  }

  // In skip mode a candidate that no longer fits can never be added, so it
  // is out of contention; in stop mode it may still win (and end the run).
  bool eligible(std::size_t i) const {
    return available_[i] != 0 && (!skip_ || fits(i));
  }

  void take(std::size_t i) {
    available_[i] = 0;
    cumulative_ += manifest_.duration(i);
  }

  double cumulative() const { return cumulative_; }

 private:
  const Manifest& manifest_;
  const SelectionBudget& budget_;
  std::vector<std::uint8_t> available_;
  bool skip_;
  double cumulative_ = 0.0;
};

// The first draw is uniform over every record, so both overflow policies
// start from the same record whenever it fits. If it does not fit in skip
// mode, a second draw picks uniformly among the records that do.
std::optional<std::size_t> uniform_eligible(Rng& rng, const Pool& pool) {
  if (pool.size() == 0) return std::nullopt;
  const std::size_t draw = uniform_index(rng, pool.size());
  if (pool.eligible(draw)) return draw;
  std::vector<std::size_t> candidates;
  candidates.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool.eligible(i)) candidates.push_back(i);
  }
  if (candidates.empty()) return std::nullopt;
  return candidates[uniform_index(rng, candidates.size())];
}

// Drives one selection. `Strategy` supplies
//   first(pool)  proposal while S is empty
//   next(pool)   proposal for a non-empty S
//   add(i)       absorb i into S
//   objective()  value reported for the step
template <typename Strategy>
SelectionResult run(Method method, const Manifest& manifest,
                    const SelectionBudget& budget, std::uint64_t seed,
                    Strategy& strategy) {
  SelectionResult result;
  result.method = method;
  result.seed = seed;
  result.budget = budget;
  result.manifest_size = manifest.size();
  result.manifest_fingerprint = manifest.fingerprint();

  Pool pool(manifest, budget);
  auto propose = [&] {
    return result.indices.empty() ? strategy.first(pool) : strategy.next(pool);
  };

  for (auto candidate = propose(); candidate; candidate = propose()) {
    const std::size_t i = *candidate;
    if (!pool.fits(i)) break;  // only reachable in stop mode
    pool.take(i);
    strategy.add(i);
    result.indices.push_back(i);
    result.per_step.push_back({i, strategy.objective(), pool.cumulative()});
  }
  return result;
}

void check_inputs(const Manifest& manifest, const SelectionBudget& budget) {
  budget.validate();
  if (manifest.empty()) throw EmptyManifestError();
}

void check_features(const FeatureMatrix& features, const Manifest& manifest) {
  if (features.rows() != manifest.size()) {
    throw ShapeMismatchError(
        "feature rows (" + std::to_string(features.rows()) +
        ") != manifest records (" + std::to_string(manifest.size()) + ")");
  }
}

class DiversityStrategy {
 public:
  DiversityStrategy(const FeatureMatrix& f, std::uint64_t seed,
                    const ExecutionOptions& exec)
      : features_(f),
        rng_(seed),
        executor_(exec.threads),
        acc_(f.dim()),
        sq_norms_(f.rows()) {
    executor_.for_each(f.rows(), [&](std::size_t i) {
      sq_norms_[i] = squared_norm(features_.row(i));
    });
  }

  std::optional<std::size_t> first(const Pool& pool) {
    return uniform_eligible(rng_, pool);
  }

  std::optional<std::size_t> next(const Pool& pool) {
    auto best = executor_.argmax(pool.size(), [&](std::size_t i) -> std::optional<double> {
      if (!pool.eligible(i)) return std::nullopt;
      return acc_.marginal_gain(features_.row(i), sq_norms_[i]);
    });
    if (!best.found()) return std::nullopt;
    return best.index;
  }

  void add(std::size_t i) { acc_.absorb(features_.row(i)); }
  double objective() const { return acc_.diversity_total(); }

 private:
  const FeatureMatrix& features_;
  Rng rng_;
  detail::Executor executor_;
  MomentAccumulator acc_;
  std::vector<double> sq_norms_;
};

class FarthestPointStrategy {
 public:
  FarthestPointStrategy(const FeatureMatrix& f, std::uint64_t seed,
                        const ExecutionOptions& exec)
      : features_(f),
        rng_(seed),
        executor_(exec.threads),
        min_dist_(f.rows(), std::numeric_limits<double>::infinity()) {}

  std::optional<std::size_t> first(const Pool& pool) {
    return uniform_eligible(rng_, pool);
  }

  std::optional<std::size_t> next(const Pool& pool) {
    auto best = executor_.argmax(pool.size(), [&](std::size_t i) -> std::optional<double> {
      if (!pool.eligible(i)) return std::nullopt;
      return min_dist_[i];
    });
    if (!best.found()) return std::nullopt;
    return best.index;
  }

  void add(std::size_t i) {
    last_ = selected_ == 0 ? 0.0 : min_dist_[i];
    ++selected_;
    const auto x = features_.row(i);
    executor_.for_each(min_dist_.size(), [&](std::size_t j) {
      min_dist_[j] = std::min(min_dist_[j], squared_distance(features_.row(j), x));
    });
  }

  double objective() const { return last_; }

 private:
  const FeatureMatrix& features_;
  Rng rng_;
  detail::Executor executor_;
  std::vector<double> min_dist_;
  std::size_t selected_ = 0;
  double last_ = 0.0;
};

// c log2 c, with 0 log 0 = 0.
double xlog2x(double c) { return c > 0.0 ? c * std::log2(c) : 0.0; }

// Entropy of a table with total `total` and sum of c log2 c equal to `s`:
// H = log2(total) - s / total.
double entropy_from_moments(double total, double s) {
  return total > 0.0 ? std::log2(total) - s / total : 0.0;
}

class EntropyStrategy {
 public:
  EntropyStrategy(const Manifest& manifest, const EntropyBalanceOptions& options,
                  const ExecutionOptions& exec)
      : options_(options),
        with_speaker_(options.objective == EntropyObjective::kPhonemePlusSpeaker),
        executor_(exec.threads),
        phoneme_counts_(manifest.phoneme_inventory().size(), 0.0),
        speaker_counts_(manifest.speaker_inventory().size(), 0.0) {
    // Per record: run-length encoded phoneme ids and the speaker increment.
    offsets_.reserve(manifest.size() + 1);
    offsets_.push_back(0);
    std::vector<std::uint32_t> ids;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
      auto span = manifest.phoneme_ids(i);
      ids.assign(span.begin(), span.end());
      std::sort(ids.begin(), ids.end());
      for (std::size_t k = 0; k < ids.size();) {
        std::size_t run = k;
        while (run < ids.size() && ids[run] == ids[k]) ++run;
        tokens_.push_back({ids[k], static_cast<double>(run - k)});
        k = run;
      }
      offsets_.push_back(tokens_.size());
      lengths_.push_back(static_cast<double>(span.size()));
      speaker_of_.push_back(manifest.speaker_id(i));
      speaker_increment_.push_back(
          options.duration_weighted_speakers ? manifest.duration(i) : 1.0);
    }
  }

  std::optional<std::size_t> first(const Pool& pool) { return next(pool); }

  std::optional<std::size_t> next(const Pool& pool) {
    auto best = executor_.argmax(pool.size(), [&](std::size_t i) -> std::optional<double> {
      if (!pool.eligible(i)) return std::nullopt;
      return score(i);
    });
    if (!best.found()) return std::nullopt;
    return best.index;
  }

  // Objective of S + {i}, touching only the tokens i contains. The per-token
  // deltas are summed in sorted order: two candidates that produce the same
  // count table then get bitwise-equal scores, and the tie goes to the
  // lower index as intended.
  double score(std::size_t i) const {
    thread_local std::vector<double> deltas;
    deltas.clear();
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      const double c = phoneme_counts_[tokens_[k].id];
      deltas.push_back(xlog2x(c + tokens_[k].count) - xlog2x(c));
    }
    std::sort(deltas.begin(), deltas.end());
    double delta = 0.0;
    for (double d : deltas) delta += d;
    double value = options_.phoneme_weight *
                   entropy_from_moments(phoneme_total_ + lengths_[i],
                                        phoneme_xlogx_ + delta);
    if (with_speaker_) {
      const double c = speaker_counts_[speaker_of_[i]];
      const double w = speaker_increment_[i];
      const double sp = speaker_xlogx_ + xlog2x(c + w) - xlog2x(c);
      value += options_.speaker_weight * entropy_from_moments(speaker_total_ + w, sp);
    }
    return value;
  }

  void add(std::size_t i) {
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      phoneme_counts_[tokens_[k].id] += tokens_[k].count;
    }
    phoneme_total_ += lengths_[i];
    speaker_counts_[speaker_of_[i]] += speaker_increment_[i];
    speaker_total_ += speaker_increment_[i];
    // Recomputed from the tables rather than updated, so no drift builds up.
    phoneme_xlogx_ = 0.0;
    for (double c : phoneme_counts_) phoneme_xlogx_ += xlog2x(c);
    speaker_xlogx_ = 0.0;
    for (double c : speaker_counts_) speaker_xlogx_ += xlog2x(c);
  }

  double objective() const {
    double value = options_.phoneme_weight * entropy(phoneme_counts_);
    if (with_speaker_) value += options_.speaker_weight * entropy(speaker_counts_);
    return value;
  }

 private:
  struct TokenCount {
    std::uint32_t id;
    double count;
  };

  EntropyBalanceOptions options_;
  bool with_speaker_;
  detail::Executor executor_;
  std::vector<TokenCount> tokens_;
  std::vector<std::size_t> offsets_;
  std::vector<double> lengths_;
  std::vector<std::uint32_t> speaker_of_;
  std::vector<double> speaker_increment_;
  std::vector<double> phoneme_counts_;
  std::vector<double> speaker_counts_;
  double phoneme_total_ = 0.0;
  double speaker_total_ = 0.0;
  double phoneme_xlogx_ = 0.0;
  double speaker_xlogx_ = 0.0;
};

class RandomStrategy {
 public:
  RandomStrategy(const Manifest& manifest, std::uint64_t seed)
      : manifest_(manifest), phoneme_counts_(manifest.phoneme_inventory().size(), 0.0) {
    Rng rng(seed);
    order_ = random_permutation(rng, manifest.size());
  }

  std::optional<std::size_t> first(const Pool& pool) { return next(pool); }

  std::optional<std::size_t> next(const Pool& pool) {
    while (pos_ < order_.size() && !pool.eligible(order_[pos_])) ++pos_;
    if (pos_ == order_.size()) return std::nullopt;
    return order_[pos_];
  }

  void add(std::size_t i) {
    for (auto id : manifest_.phoneme_ids(i)) phoneme_counts_[id] += 1.0;
  }

  double objective() const { return entropy(phoneme_counts_); }

 private:
  const Manifest& manifest_;
  std::vector<std::size_t> order_;
  std::size_t pos_ = 0;
  std::vector<double> phoneme_counts_;
};

}  // namespace

std::string_view to_string(Method m) {
  for (const auto& [k, v] : kMethodNames) {
    if (k == m) return v;
  }
  return "unknown";
}

std::string_view to_string(OverflowPolicy p) {
  for (const auto& [k, v] : kPolicyNames) {
    if (k == p) return v;
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  const auto n = underscored(name);
  for (const auto& [k, v] : kMethodNames) {
    if (v == n) return k;
  }
  return std::nullopt;
}

std::optional<OverflowPolicy> parse_overflow_policy(std::string_view name) {
  const auto n = underscored(name);
  for (const auto& [k, v] : kPolicyNames) {
    if (v == n) return k;
  }
  return std::nullopt;
}

bool is_stochastic(Method m) {
  return m == Method::kDiversity || m == Method::kRandom ||
         m == Method::kFarthestPoint;
}

bool needs_features(Method m) {
  return m == Method::kDiversity || m == Method::kFarthestPoint;
}

void SelectionBudget::validate() const {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw InvalidArgumentError("t_max must be finite and > 0, got " +
                               std::to_string(t_max));
  }
}

bool operator==(const SelectionResult& a, const SelectionResult& b) {
  auto steps_equal = [](const SelectionStep& x, const SelectionStep& y) {
    return x.index == y.index && x.objective == y.objective &&
           x.cumulative_duration == y.cumulative_duration;
  };
  return a.method == b.method && a.indices == b.indices && a.seed == b.seed &&
         a.budget.t_max == b.budget.t_max &&
         a.budget.overflow_policy == b.budget.overflow_policy &&
         a.manifest_size == b.manifest_size &&
         a.manifest_fingerprint == b.manifest_fingerprint &&
         std::equal(a.per_step.begin(), a.per_step.end(), b.per_step.begin(),
                    b.per_step.end(), steps_equal);
}

SelectionResult select_diversity(const FeatureMatrix& features,
                                 const Manifest& manifest,
                                 const SelectionBudget& budget,
                                 std::uint64_t seed,
                                 const ExecutionOptions& exec) {
  check_inputs(manifest, budget);
  check_features(features, manifest);
  DiversityStrategy strategy(features, seed, exec);
  return run(Method::kDiversity, manifest, budget, seed, strategy);
}

SelectionResult select_farthest_point(const FeatureMatrix& features,
                                      const Manifest& manifest,
                                      const SelectionBudget& budget,
                                      std::uint64_t seed,
                                      const ExecutionOptions& exec) {
  check_inputs(manifest, budget);
  check_features(features, manifest);
  FarthestPointStrategy strategy(features, seed, exec);
  return run(Method::kFarthestPoint, manifest, budget, seed, strategy);
}

SelectionResult select_entropy_balance(const Manifest& manifest,
                                       const EntropyBalanceOptions& options,
                                       const SelectionBudget& budget,
                                       std::uint64_t seed,
                                       const ExecutionOptions& exec) {
  check_inputs(manifest, budget);
  if (!(options.phoneme_weight >= 0.0) || !(options.speaker_weight >= 0.0)) {
    throw InvalidArgumentError("entropy weights must be >= 0");
  }
  EntropyStrategy strategy(manifest, options, exec);
  const Method method = options.objective == EntropyObjective::kPhoneme
                            ? Method::kPhonemeBalance
                            : Method::kInputBalance;
  return run(method, manifest, budget, seed, strategy);
}

SelectionResult select_random(const Manifest& manifest,
                              const SelectionBudget& budget,
                              std::uint64_t seed) {
  check_inputs(manifest, budget);
  RandomStrategy strategy(manifest, seed);
  return run(Method::kRandom, manifest, budget, seed, strategy);
}

SelectionResult select(Method method, const Manifest& manifest,
                       const FeatureMatrix* features,
                       const SelectionBudget& budget, std::uint64_t seed,
                       const ExecutionOptions& exec,
                       const EntropyBalanceOptions& entropy_options) {
  auto require_features = [&]() -> const FeatureMatrix& {
    if (features == nullptr) {
      throw InvalidArgumentError(std::string(to_string(method)) +
                                 " selection needs a feature matrix");
    }
    return *features;
  };
  switch (method) {
    case Method::kDiversity:
      return select_diversity(require_features(), manifest, budget, seed, exec);
    case Method::kFarthestPoint:
      return select_farthest_point(require_features(), manifest, budget, seed, exec);
    case Method::kPhonemeBalance:
    case Method::kInputBalance: {
      auto opts = entropy_options;
      opts.objective = method == Method::kPhonemeBalance
                           ? EntropyObjective::kPhoneme
                           : EntropyObjective::kPhonemePlusSpeaker;
      return select_entropy_balance(manifest, opts, budget, seed, exec);
    }
    case Method::kRandom:
      return select_random(manifest, budget, seed);
  }
  throw InvalidArgumentError("unknown method");
}

}  // namespace coreset
