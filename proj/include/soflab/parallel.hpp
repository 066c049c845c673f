#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace soflab {

/// Worker cap: hardware concurrency, overridden by the SOFICITY_LAB_THREADS
/// environment variable when set. Always at least 1.
unsigned thread_cap();

/// Splits [0, n) into at most thread_cap() half-open chunks in index order.
std::vector<std::pair<std::size_t, std::size_t>> split_range(std::size_t n);

/// Runs the jobs on up to thread_cap() threads and joins them all.
void run_jobs(std::vector<std::function<void()>> jobs);

/// Applies chunk(lo, hi) over a partition of [0, n); results come back
/// ordered by chunk index, so a sequential fold over them is
/// schedule-independent.
template <typename R, typename F>
std::vector<R> chunked_map(std::size_t n, F&& chunk) {
    auto ranges = split_range(n);
    std::vector<R> results(ranges.size());
    std::vector<std::function<void()>> jobs;
    jobs.reserve(ranges.size());
    for (std::size_t i = 0; i < ranges.size(); ++i) {
        jobs.push_back([&, i] { results[i] = chunk(ranges[i].first, ranges[i].second); });
    }
    run_jobs(std::move(jobs));
    return results;
}

}
