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

#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "coreset/error.hpp"
#include "coreset/features.hpp"
#include "coreset/manifest.hpp"
#include "coreset/report.hpp"
#include "coreset/selectors.hpp"

namespace coreset::cli {

namespace {

constexpr double kSecondsPerHour = 3600.0;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFoundError(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FileNotFoundError(path);
  f << text;
  if (!f) throw Error("failed writing " + path);
}

// Whitespace-separated non-negative integers.
std::vector<std::size_t> read_indices(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::size_t> indices;
  std::string tok;
  while (in >> tok) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(),
                                    [](unsigned char c) { return std::isdigit(c); })) {
      throw InvalidArgumentError(path + ": not an index: \"" + tok + "\"");
    }
    indices.push_back(static_cast<std::size_t>(std::stoull(tok)));
  }
  return indices;
}

void check_alignment(const Manifest& manifest, const FeatureMatrix& features,
                     const std::string& path) {
  if (features.rows() != manifest.size()) {
    throw ShapeMismatchError(path + ": feature rows (" +
                             std::to_string(features.rows()) +
                             ") != manifest lines (" +
                             std::to_string(manifest.size()) + ")");
  }
}

// ---- validate ------------------------------------------------------------

struct ValidateArgs {
  std::string manifest;
  std::vector<std::string> features;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
  const Manifest manifest = load_manifest(a.manifest);
  out << "manifest " << a.manifest << ": records=" << manifest.size()
      << " speakers=" << manifest.speaker_inventory().size()
      << " phonemes=" << manifest.phoneme_inventory().size()
      << " total_duration_sec=" << manifest.total_duration() << '\n';
  for (const auto& path : a.features) {
    const FeatureMatrix f = load_features(path);
    check_alignment(manifest, f, path);
    out << "features " << path << ": rows=" << f.rows() << " dim=" << f.dim()
        << '\n';
  }
  return kOk;
}

// ---- join ----------------------------------------------------------------

struct JoinArgs {
  std::vector<std::string> parts;
  bool normalize_parts = false;
  bool normalize_output = false;
  std::string out;
};

int cmd_join(const JoinArgs& a, std::ostream& out) {
  std::vector<FeatureMatrix> parts;
  parts.reserve(a.parts.size());
  for (const auto& path : a.parts) {
    auto m = load_features(path);
    parts.push_back(a.normalize_parts ? normalize_rows(m) : std::move(m));
  }
  FeatureMatrix joined = concat_features(parts);
  if (a.normalize_output) joined = normalize_rows(joined);
  write_features(a.out, joined);
  out << "wrote " << a.out << ": rows=" << joined.rows()
      << " dim=" << joined.dim() << '\n';
  return kOk;
}

// ---- select --------------------------------------------------------------

struct SelectArgs {
  std::string method;
  std::string manifest;
  std::string features;
  std::optional<double> t_max_seconds;
  std::optional<double> t_max_hours;
  std::optional<std::uint64_t> seed;
  std::string overflow_policy = "stop_on_first_overflow";
  std::string out;
  std::string table_out;
  std::size_t threads = 1;
  double phoneme_weight = 1.0;
  double speaker_weight = 1.0;
  bool duration_weighted_speakers = false;
};

int cmd_select(const SelectArgs& a, std::ostream& out, std::ostream& err) {
  const auto method = parse_method(a.method);
  if (!method) throw InvalidArgumentError("unknown method \"" + a.method + "\"");
  const auto policy = parse_overflow_policy(a.overflow_policy);
  if (!policy) {
    throw InvalidArgumentError("unknown overflow policy \"" + a.overflow_policy + "\"");
  }
  if (is_stochastic(*method) && !a.seed) {
    throw InvalidArgumentError("--seed is required for method " +
                               std::string(to_string(*method)));
  }
  if (needs_features(*method) && a.features.empty()) {
    throw InvalidArgumentError("--features is required for method " +
                               std::string(to_string(*method)));
  }

  SelectionBudget budget;
  budget.t_max = a.t_max_seconds ? *a.t_max_seconds : *a.t_max_hours * kSecondsPerHour;
  budget.overflow_policy = *policy;
  budget.validate();

  const Manifest manifest = load_manifest(a.manifest);
  std::optional<FeatureMatrix> features;
  if (!a.features.empty()) {
    features = load_features(a.features);
    check_alignment(manifest, *features, a.features);
  }

  EntropyBalanceOptions entropy_options;
  entropy_options.phoneme_weight = a.phoneme_weight;
  entropy_options.speaker_weight = a.speaker_weight;
  entropy_options.duration_weighted_speakers = a.duration_weighted_speakers;

  const FeatureMatrix* fm = features ? &*features : nullptr;
  const SelectionResult result =
      select(*method, manifest, fm, budget, a.seed.value_or(0),
             ExecutionOptions{a.threads}, entropy_options);
  const SubsetMetrics metrics = evaluate_subset(manifest, fm, result.indices);

  const std::string report = selection_report_json(result, manifest, metrics) + "\n";
  if (a.out.empty()) {
    out << report;
  } else {
    write_text(a.out, report);
  }
  if (!a.table_out.empty()) write_text(a.table_out, per_step_csv(result, manifest));

  if (result.indices.empty()) {
    err << "warning: empty selection (t_max_sec=" << budget.t_max
        << ", shortest record " << manifest.min_duration() << " s)\n";
  }
  const double objective = result.per_step.empty() ? 0.0 : result.per_step.back().objective;
  // The summary goes to stdout only when the report itself went to a file.
  std::ostream& summary = a.out.empty() ? err : out;
  summary << "method=" << to_string(result.method)
          << " n_selected=" << result.indices.size()
          << " total_duration_sec=" << result.total_duration()
          << " objective=" << objective << '\n';
  return kOk;
}

// ---- evaluate ------------------------------------------------------------

struct EvaluateArgs {
  std::string manifest;
  std::string features;
  std::string indices_file;
  std::string result_file;
  std::string out;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const Manifest manifest = load_manifest(a.manifest);
  std::optional<FeatureMatrix> features;
  if (!a.features.empty()) {
    features = load_features(a.features);
    check_alignment(manifest, *features, a.features);
  }
  std::vector<std::size_t> indices;
  if (!a.indices_file.empty()) {
    indices = read_indices(a.indices_file);
  } else {
    indices = parse_selection_report(read_file(a.result_file), manifest).indices;
  }
  const auto metrics = evaluate_subset(manifest, features ? &*features : nullptr, indices);
  const std::string report = evaluation_report_json(metrics, indices) + "\n";
  if (a.out.empty()) {
    out << report;
  } else {
    write_text(a.out, report);
  }
  return kOk;
}

// ---- compare -------------------------------------------------------------

struct CompareArgs {
  std::string manifest;
  std::string features;
  std::vector<std::string> results;
  std::string out;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  const Manifest manifest = load_manifest(a.manifest);
  std::optional<FeatureMatrix> features;
  if (!a.features.empty()) {
    features = load_features(a.features);
    check_alignment(manifest, *features, a.features);
  }
  std::vector<SelectionResult> results;
  for (const auto& path : a.results) {
    results.push_back(parse_selection_report(read_file(path), manifest));
  }
  const auto rows = compare_methods(results, manifest, features ? &*features : nullptr);
  const auto table = comparison_csv(rows);
  if (a.out.empty()) {
    out << table;
  } else {
    write_text(a.out, table);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Budget-constrained core-set selection for speech corpora", "coreset"};
  app.require_subcommand(1);

  ValidateArgs va;
  auto* validate = app.add_subcommand(
      "validate", "Check a manifest and the row alignment of feature files");
  validate->add_option("manifest", va.manifest, "Manifest (JSON lines)")->required();
  validate->add_option("features", va.features, "Feature files (FVEC)");

  JoinArgs ja;
  auto* join = app.add_subcommand("join", "Concatenate per-aspect feature files row-wise");
  join->add_option("parts", ja.parts, "Feature files, in concatenation order")
      ->required();
  join->add_flag("--normalize-parts", ja.normalize_parts,
                 "Scale each part's rows to unit norm before joining");
  join->add_flag("--normalize-output", ja.normalize_output,
                 "Scale the joined rows to unit norm");
  join->add_option("--out", ja.out, "Output feature file")->required();

  SelectArgs sa;
  auto* sel = app.add_subcommand("select", "Select a subset under a duration budget");
  sel->add_option("--method", sa.method,
                  "diversity | phoneme-balance | input-balance | random | farthest-point")
      ->required();
  sel->add_option("--manifest", sa.manifest, "Manifest (JSON lines)")->required();
  sel->add_option("--features", sa.features, "Joint feature file (FVEC)");
  auto* secs = sel->add_option("--t-max-seconds", sa.t_max_seconds, "Duration budget in seconds");
  auto* hours = sel->add_option("--t-max-hours", sa.t_max_hours, "Duration budget in hours");
  secs->excludes(hours);
  sel->add_option("--seed", sa.seed, "RNG seed (required for stochastic methods)");
  sel->add_option("--overflow-policy", sa.overflow_policy,
                  "stop-on-first-overflow (default) | skip-and-continue");
  sel->add_option("--out", sa.out, "Selection report path (default: stdout)");
  sel->add_option("--table-out", sa.table_out, "Per-step CSV path");
  sel->add_option("--threads", sa.threads, "Worker threads for candidate scans (0 = all)");
  sel->add_option("--phoneme-weight", sa.phoneme_weight, "Phoneme entropy weight");
  sel->add_option("--speaker-weight", sa.speaker_weight, "Speaker entropy weight (input-balance)");
  sel->add_flag("--duration-weighted-speakers", sa.duration_weighted_speakers,
                "Weight speaker counts by utterance duration (input-balance)");

  EvaluateArgs ea;
  auto* eval = app.add_subcommand("evaluate", "Report subset quality metrics");
  eval->add_option("--manifest", ea.manifest, "Manifest (JSON lines)")->required();
  eval->add_option("--features", ea.features, "Feature file (FVEC)");
  auto* idx = eval->add_option("--indices-file", ea.indices_file,
                               "Whitespace-separated manifest indices");
  auto* res = eval->add_option("--result-file", ea.result_file, "Selection report");
  idx->excludes(res);
  eval->add_option("--out", ea.out, "Report path (default: stdout)");

  CompareArgs ca;
  auto* cmp = app.add_subcommand("compare", "Tabulate metrics of several selection reports");
  cmp->add_option("--manifest", ca.manifest, "Manifest (JSON lines)")->required();
  cmp->add_option("--features", ca.features, "Feature file (FVEC)");
  cmp->add_option("results", ca.results, "Selection reports")->required();
  cmp->add_option("--out", ca.out, "CSV path (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (sel->parsed() && !sa.t_max_seconds && !sa.t_max_hours) {
      throw CLI::RequiredError("--t-max-seconds or --t-max-hours");
    }
    if (eval->parsed() && ea.indices_file.empty() && ea.result_file.empty()) {
      throw CLI::RequiredError("--indices-file or --result-file");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(va, out);
    if (join->parsed()) return cmd_join(ja, out);
    if (sel->parsed()) return cmd_select(sa, out, err);
    if (eval->parsed()) return cmd_evaluate(ea, out);
    if (cmp->parsed()) return cmd_compare(ca, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace coreset::cli
