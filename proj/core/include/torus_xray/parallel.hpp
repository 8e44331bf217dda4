#pragma once

#include <cstddef>
#include <functional>

namespace torus_xray {

// Upper bound on worker threads used by the batch operations. 0 means use
// std::thread::hardware_concurrency().
void set_thread_limit(unsigned limit);
unsigned thread_limit();

// Runs body(i) for i in [0, count). Each index is visited exactly once; callers
// write into preallocated slots so the merge order never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace torus_xray
