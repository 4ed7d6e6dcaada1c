#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace bcast {

// BCAST_DELAY_THREADS overrides the worker count; 0 or unset means one per core.
inline int worker_count() {
    if (const char* env = std::getenv("BCAST_DELAY_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs body(i) for i in [0, count). Callers write into slot i only, so the
// result does not depend on the schedule.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
    const int workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace bcast
