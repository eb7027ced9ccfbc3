#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ncvem {

// Worker cap: NCVEM_THREADS when set, otherwise the hardware count.
inline int max_threads() {
    if (const char* env = std::getenv("NCVEM_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Run f(i) for i in [0, n); results must go to independent slots so the
// outcome is identical for any thread count.
template <class F> void parallel_for(int n, F&& f) {
    int nt = std::min(max_threads(), n);
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(nt);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < nt; ++t) {
        int lo = static_cast<int>(static_cast<long>(n) * t / nt);
        int hi = static_cast<int>(static_cast<long>(n) * (t + 1) / nt);
        workers.emplace_back([&, lo, hi]() {
            try {
                for (int i = lo; i < hi; ++i) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    if (error) std::rethrow_exception(error);
}

} // namespace ncvem
