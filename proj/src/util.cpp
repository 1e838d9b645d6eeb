#include "devis/util.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace devis {

namespace {
int g_workers = 1;
}

void set_worker_count(int jobs) { g_workers = std::max(1, jobs); }

int worker_count() { return g_workers; }

void parallel_for(int n, const std::function<void(int)>& fn) {
    int jobs = std::min(g_workers, n);
    if (jobs <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace devis
