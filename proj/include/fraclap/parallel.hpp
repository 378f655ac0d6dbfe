#pragma once

#include <cstddef>
#include <functional>

namespace fraclap {

/// Worker count used by parallel_for. Defaults to 1; the CLI sets it from --threads.
void set_thread_count(int count);
int thread_count();

/// Calls body(i) for i in [0, count), split into contiguous static chunks.
/// Each index must write only its own outputs; results then do not depend on
/// the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fraclap
