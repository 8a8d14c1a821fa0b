// SPDX-License-Identifier: Apache-2.0
//
// rbf-lab: multi-cell MIMO random beamforming laboratory
// Copyright (C) 2026 The rbf-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RBF_MONTECARLO_HPP
#define RBF_MONTECARLO_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace rbf {

// Worker count: RBF_THREADS if set, otherwise the hardware concurrency.
int default_threads();

// Runs body(begin, end) over fixed chunks of [0, count). Chunk boundaries do
// not depend on the thread count, so per-chunk results merged in chunk order
// are bit-identical for any number of workers. make_body() is called once per
// worker to build its thread-local state.
template <typename MakeBody>
void for_each_chunk(std::int64_t count, std::int64_t chunk, int threads, MakeBody make_body)
{
    const std::int64_t chunks = (count + chunk - 1) / chunk;
    const int workers = static_cast<int>(std::clamp<std::int64_t>(threads > 0 ? threads : default_threads(), 1,
                                                                  std::max<std::int64_t>(chunks, 1)));
    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        try {
            auto body = make_body();
            for (std::int64_t i = next.fetch_add(1); i < chunks; i = next.fetch_add(1)) {
                body(i, i * chunk, std::min(count, (i + 1) * chunk));
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next.store(chunks);
        }
    };
    if (workers == 1) {
        run();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(run);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

// Sums and sums of squares of `width` statistics over independent trials.
struct TrialStats {
    std::int64_t trials = 0;
    std::vector<double> sum;
    std::vector<double> sum_sq;

    double mean(std::size_t i) const { return sum[i] / static_cast<double>(trials); }
    // sample standard deviation / sqrt(trials); zero for a single trial
    double std_error(std::size_t i) const
    {
        if (trials < 2) {
            return 0.0;
        }
        const double n = static_cast<double>(trials);
        const double var = std::max(0.0, (sum_sq[i] - sum[i] * sum[i] / n) / (n - 1.0));
        return std::sqrt(var / n);
    }
};

inline constexpr std::int64_t kTrialChunk = 16;

// make_worker() returns a callable worker(trial_index, std::span<double> out)
// filling `width` statistics for that trial.
template <typename MakeWorker>
TrialStats accumulate_trials(std::int64_t trials, std::size_t width, MakeWorker make_worker, int threads = 0)
{
    const std::int64_t chunks = (trials + kTrialChunk - 1) / kTrialChunk;
    std::vector<std::vector<double>> partial(static_cast<std::size_t>(chunks), std::vector<double>(2 * width, 0.0));
    for_each_chunk(trials, kTrialChunk, threads, [&] {
        return [&, worker = make_worker(), values = std::vector<double>(width)](
                   std::int64_t chunk, std::int64_t begin, std::int64_t end) mutable {
            auto &acc = partial[static_cast<std::size_t>(chunk)];
            for (std::int64_t t = begin; t < end; ++t) {
                worker(t, std::span<double>(values));
                for (std::size_t i = 0; i < width; ++i) {
                    acc[i] += values[i];
                    acc[width + i] += values[i] * values[i];
                }
            }
        };
    });
    TrialStats stats;
    stats.trials = trials;
    stats.sum.assign(width, 0.0);
    stats.sum_sq.assign(width, 0.0);
    for (const auto &acc : partial) {
        for (std::size_t i = 0; i < width; ++i) {
            stats.sum[i] += acc[i];
            stats.sum_sq[i] += acc[width + i];
        }
    }
    return stats;
}

// Collects `width` values per trial into a trial-major vector.
template <typename MakeWorker>
std::vector<double> collect_trials(std::int64_t trials, std::size_t width, MakeWorker make_worker, int threads = 0)
{
    std::vector<double> out(static_cast<std::size_t>(trials) * width);
    for_each_chunk(trials, kTrialChunk, threads, [&] {
        return [&, worker = make_worker()](std::int64_t, std::int64_t begin, std::int64_t end) mutable {
            for (std::int64_t t = begin; t < end; ++t) {
                worker(t, std::span<double>(out).subspan(static_cast<std::size_t>(t) * width, width));
            }
        };
    });
    return out;
}

} // namespace rbf

#endif // RBF_MONTECARLO_HPP
