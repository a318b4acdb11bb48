#pragma once

#include <cstddef>
#include <functional>

namespace tepml {

/// Number of worker threads used by parallel loops (default 1).
void set_thread_count(int n);
int thread_count();

/// Calls body(i) for i in [0, n) on contiguous static chunks. Each index must
/// write only its own output slot, so results do not depend on the thread
/// count. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tepml
