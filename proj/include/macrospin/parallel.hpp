#pragma once

#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace macrospin {

// Worker count: the THREADS environment variable when set, otherwise one
// worker per available core.
inline unsigned worker_count()
{
    if (const char* env = std::getenv("THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v < 1) throw std::invalid_argument("THREADS must be a positive integer");
        return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, count) across workers. Each index writes only
// its own output slot, so results are independent of the schedule.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn)
{
    unsigned workers = std::min<std::size_t>(worker_count(), count == 0 ? 1 : count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace macrospin
