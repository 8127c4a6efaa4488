#pragma once

#include <functional>

namespace rnm {

/// Worker count used by grid and moment loops. Defaults to the RNM_THREADS
/// environment variable, else the hardware concurrency.
int thread_count();
void set_thread_count(int threads);

/// Calls body(i) for i in [begin, end) across thread_count() workers.
/// The first exception thrown by any worker is rethrown.
void parallel_for(int begin, int end, const std::function<void(int)>& body);

}  // namespace rnm
