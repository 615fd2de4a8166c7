#include "swlw/parallel.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace swlw {

int max_threads() {
    static const int cached = [] {
        const char* env = std::getenv("SWLW_THREADS");
        if (!env) return 1;
        const int v = std::atoi(env);
        if (v < 1) return 1;
        const int hw = int(std::thread::hardware_concurrency());
        return hw > 0 ? std::min(v, hw) : v;
    }();
    return cached;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn) {
    const int workers = max_threads();
    if (workers <= 1 || count < 256) {
        fn(0, count);
        return;
    }
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w) {
        const std::size_t lo = std::min(count, w * chunk);
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo < hi) pool.emplace_back(fn, lo, hi);
    }
    fn(0, std::min(count, chunk));
    for (auto& t : pool) t.join();
}

} // namespace swlw
