#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace qzrp {

// Deterministic chunked parallel map: items are split into contiguous chunks,
// each worker fills its own result slots, and results are combined in index
// order, so the outcome is independent of the job count.
template <typename Item, typename Result, typename Fn>
std::vector<Result> parallel_map(const std::vector<Item>& items, Fn&& fn, int jobs) {
    std::vector<Result> results(items.size());
    if (jobs <= 1 || items.size() <= 1) {
        for (std::size_t i = 0; i < items.size(); ++i) results[i] = fn(items[i]);
        return results;
    }
    jobs = std::min<int>(jobs, static_cast<int>(items.size()));
    std::vector<std::thread> workers;
    std::size_t chunk = (items.size() + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
        std::size_t lo = w * chunk, hi = std::min(items.size(), lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) results[i] = fn(items[i]);
        });
    }
    for (auto& th : workers) th.join();
    return results;
}

}  // namespace qzrp
