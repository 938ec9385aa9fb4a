#pragma once

#include <cstddef>
#include <functional>

namespace slicedw {

// Worker count: `requested` if nonzero, else hardware concurrency; always
// capped by the SW_THREADS environment variable when it is set.
unsigned resolve_workers(unsigned requested = 0);

// Runs body(i) for i in [0, count). Work items are handed out dynamically,
// so callers must write results into index-addressed slots; any reduction
// happens afterwards in index order. The first exception thrown by a body
// is rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace slicedw
