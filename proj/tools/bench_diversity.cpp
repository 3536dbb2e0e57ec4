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

// Wall-clock benchmark for diversity selection on random unit-norm rows.
//
//   coreset_bench --rows 100000 --dim 1024 --picks 1000 --threads 8

#include <chrono>
#include <iostream>
#include <random>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "coreset/features.hpp"
#include "coreset/manifest.hpp"
#include "coreset/selectors.hpp"

int main(int argc, char** argv) {
  std::size_t rows = 100000, dim = 1024, picks = 1000, threads = 0;
  std::uint64_t seed = 1;
  CLI::App app{"diversity selection benchmark"};
  app.add_option("--rows", rows)->check(CLI::PositiveNumber);
  app.add_option("--dim", dim)->check(CLI::PositiveNumber);
  app.add_option("--picks", picks)->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "0 = all hardware threads");
  app.add_option("--seed", seed);
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(seed);
  std::normal_distribution<float> g;
  std::vector<float> data(rows * dim);
  for (auto& v : data) v = g(rng);
  const auto features = coreset::normalize_rows(coreset::FeatureMatrix(rows, dim, std::move(data)));

  std::vector<coreset::UtteranceRecord> records(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    records[i].id = "u" + std::to_string(i);
    records[i].speaker = "s";
    records[i].duration_sec = 1.0;
  }
  const coreset::Manifest manifest(std::move(records));

  const auto t0 = std::chrono::steady_clock::now();
  const auto r = coreset::select_diversity(
      features, manifest, {static_cast<double>(picks), coreset::OverflowPolicy::kStopOnFirstOverflow},
      seed, {threads});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "rows=" << rows << " dim=" << dim << " picks=" << r.indices.size()
            << " threads=" << (threads == 0 ? std::thread::hardware_concurrency() : threads)
            << " seconds=" << secs << "\n";
  return 0;
}
