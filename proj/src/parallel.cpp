#include "anamac/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace anamac {

namespace {
constexpr size_t kChunk = 1024;
}

unsigned worker_count() {
    if (const char* env = std::getenv("ANAMAC_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return unsigned(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

std::vector<std::vector<double>> run_chunked(
    size_t total, const std::function<std::vector<double>(size_t, size_t)>& chunk_fn) {
    size_t nchunks = (total + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> results(nchunks);
    unsigned workers = worker_count();
    if (workers <= 1 || nchunks <= 1) {
        for (size_t c = 0; c < nchunks; ++c)
            results[c] = chunk_fn(c * kChunk, std::min(total, (c + 1) * kChunk));
        return results;
    }
    std::atomic<size_t> next{0};
    auto pull = [&] {
        for (;;) {
            size_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            results[c] = chunk_fn(c * kChunk, std::min(total, (c + 1) * kChunk));
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(pull);
    pull();
    for (auto& t : pool) t.join();
    return results;
}

double kahan_sum_slot(const std::vector<std::vector<double>>& chunks, size_t slot) {
    double sum = 0.0, comp = 0.0;
    for (const auto& c : chunks) {
        double y = c[slot] - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

} // namespace anamac
