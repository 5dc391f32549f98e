#pragma once

#include <cstddef>
#include <functional>

namespace mstates {

/// Resolves a requested thread count; 0 means one per hardware thread.
unsigned resolve_threads(unsigned requested);

/// Runs body(i) for i in [0, count) on up to `threads` workers.
///
/// Indices are handed out dynamically, so callers must write each result to a
/// slot owned by i alone. Under that rule the output does not depend on the
/// schedule. The first exception thrown by any body is rethrown on the caller.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace mstates
