#include "tsko/pipeline/worker_pool.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "tsko/errors.hpp"

namespace tsko::pipeline {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& task) {
    if (threads < 1) {
        throw ConfigError("thread count must be at least 1");
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex mutex;
    std::size_t first_failure = std::numeric_limits<std::size_t>::max();
    std::exception_ptr error;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) {
                return;
            }
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(mutex);
                failed = true;
                if (i < first_failure) {
                    first_failure = i;
                    error = std::current_exception();
                }
            }
        }
    };

    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

int default_threads() {
    if (const char* env = std::getenv("TSKO_THREADS"); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            const int n = std::stoi(env, &used);
            if (used == std::string(env).size() && n >= 1) {
                return n;
            }
        } catch (const std::exception&) {
        }
        throw ConfigError(std::string("TSKO_THREADS must be a positive integer, got '") + env + "'");
    }
    return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

} // namespace tsko::pipeline
