#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace rtepr {

// Runs fn(i) for i in [0, count) across `workers` threads. Work items must be
// independent; exceptions are collected and the first one rethrown after all
// threads join, so partial results never escape silently.
inline void parallel_for(int count, int workers, const std::function<void(int)>& fn)
{
    if (count <= 0) return;
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto body = [&]() {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= count) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) threads.emplace_back(body);
    for (std::thread& th : threads) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace rtepr
