#ifndef HOLDERLAB_PARALLEL_HPP
#define HOLDERLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace holderlab {

// Pairwise (tree) summation. Used for every statistical accumulation so
// that sequential and sharded runs produce identical doubles.
double pairwise_sum(std::span<const double> values);

double mean(std::span<const double> values);

// Unbiased sample variance (n - 1 denominator). Requires n >= 2.
double sample_variance(std::span<const double> values);

// Number of worker threads: `requested` if > 0, otherwise the
// HOLDERLAB_THREADS environment variable, otherwise 1.
int resolve_threads(int requested);

// Runs body(i) for i in [0, n). Work is claimed by atomic index, so the
// schedule is nondeterministic but each index is processed exactly once;
// callers must write results into per-index slots.
void parallel_for_index(std::size_t n, int threads,
                        const std::function<void(std::size_t)>& body);

}  // namespace holderlab

#endif
