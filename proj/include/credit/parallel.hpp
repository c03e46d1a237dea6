#ifndef CREDIT_PARALLEL_HPP
#define CREDIT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace credit {

/// Worker count from CH_THREADS, else the hardware concurrency (at least 1).
int default_thread_count();

/// Calls body(i) for every i in [0, count) on up to `threads` workers (0 = default).
/// Callers write results by index, so output never depends on the worker count.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace credit

#endif  // CREDIT_PARALLEL_HPP
