#pragma once

#include <cstddef>
#include <functional>

namespace hardylab {

/// Worker count: HARDY_LAB_THREADS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (at least 1).
std::size_t worker_count();

/// Calls body(i) for every i in [0, n), split into contiguous blocks across
/// worker_count() threads. body must only write to state owned by index i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hardylab
