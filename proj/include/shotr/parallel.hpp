#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace shotr {

/**
 * Evaluates fn(0) .. fn(n-1) on up to `workers` threads and returns the results
 * in index order. The first exception (by index) is rethrown after all workers
 * finish. workers == 0 picks the hardware concurrency.
 */
template <class Fn>
auto parallel_map(std::size_t n, Fn&& fn, unsigned workers = 0) {
    using R = decltype(fn(std::size_t{}));
    std::vector<std::optional<R>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t count = std::min<std::size_t>(workers, n);
    if (count <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(count);
        for (std::size_t w = 0; w < count; ++w) pool.emplace_back(work);
    }

    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<R> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace shotr
