#pragma once

#include <cstddef>
#include <functional>

namespace relaynet {

// Worker count for grid loops. Defaults to RELAYNET_THREADS or the hardware concurrency.
int thread_count();
void set_thread_count(int n);

// Runs body(i) for i in [0, n). Each index writes only its own output slot, so results
// do not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace relaynet
