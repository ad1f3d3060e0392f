#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace anamac {

// Worker count: ANAMAC_THREADS when set, else the hardware count, at least 1.
unsigned worker_count();

// Splits [0, total) into fixed 1024-trial chunks, runs chunk_fn(first, last)
// for each, and returns the per-chunk accumulator vectors in chunk order.
// Chunk boundaries and the returned order never depend on the worker count,
// so any reduction over the result is bit-identical however it was scheduled.
std::vector<std::vector<double>> run_chunked(
    size_t total, const std::function<std::vector<double>(size_t, size_t)>& chunk_fn);

// Compensated left-to-right sum of one accumulator slot across chunks.
double kahan_sum_slot(const std::vector<std::vector<double>>& chunks, size_t slot);

} // namespace anamac
