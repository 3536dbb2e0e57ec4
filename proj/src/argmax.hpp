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

#ifndef CORESET_SRC_ARGMAX_HPP_
#define CORESET_SRC_ARGMAX_HPP_

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/parallel_reduce.h>
#include <tbb/task_arena.h>

#include <cstddef>
#include <limits>
#include <optional>

namespace coreset::detail {

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t index = std::numeric_limits<std::size_t>::max();

  bool found() const { return index != std::numeric_limits<std::size_t>::max(); }

  // Higher value wins; equal values go to the lower index. This is a total
  // order, so any split of the scan reduces to the same winner.
  void merge(const Best& o) {
    if (!o.found()) return;
    if (!found() || o.value > value || (o.value == value && o.index < index)) {
      *this = o;
    }
  }
};

// Ranges shorter than this are scanned on the calling thread.
inline constexpr std::size_t kParallelGrain = 512;

class Executor {
 public:
  explicit Executor(std::size_t threads)
      : threads_(threads == 0 ? static_cast<std::size_t>(
                                    tbb::this_task_arena::max_concurrency())
                              : threads) {
    if (threads_ > 1) arena_.emplace(static_cast<int>(threads_));
  }

  // `score(i)` returns nullopt for candidates that are out of contention.
  template <typename Score>
  Best argmax(std::size_t n, Score&& score) {
    auto scan = [&](std::size_t lo, std::size_t hi) {
      Best b;
      for (std::size_t i = lo; i < hi; ++i) {
        if (auto v = score(i)) b.merge({*v, i});
      }
      return b;
    };
    if (!arena_ || n < 2 * kParallelGrain) return scan(0, n);
    Best out;
    arena_->execute([&] {
      out = tbb::parallel_reduce(
          tbb::blocked_range<std::size_t>(0, n, kParallelGrain), Best{},
          [&](const tbb::blocked_range<std::size_t>& r, Best b) {
            b.merge(scan(r.begin(), r.end()));
            return b;
          },
          [](Best a, const Best& b) {
            a.merge(b);
            return a;
          });
    });
    return out;
  }

  template <typename Body>
  void for_each(std::size_t n, Body&& body) {
    if (!arena_ || n < 2 * kParallelGrain) {
      for (std::size_t i = 0; i < n; ++i) body(i);
      return;
    }
    arena_->execute([&] {
      tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n, kParallelGrain),
                        [&](const tbb::blocked_range<std::size_t>& r) {
                          for (std::size_t i = r.begin(); i < r.end(); ++i) body(i);
                        });
    });
  }

 private:
  std::size_t threads_;
  std::optional<tbb::task_arena> arena_;
};

}  // namespace coreset::detail

#endif  // CORESET_SRC_ARGMAX_HPP_
