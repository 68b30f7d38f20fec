#pragma once

#include <functional>

namespace qskyrm {

// requested <= 0 means "use all hardware threads".  Always returns >= 1.
int resolve_thread_count(int requested);

// Runs fn(i) for i in [begin, end) split into contiguous chunks, one worker
// thread per chunk.  fn must be safe to call concurrently for distinct i;
// threads <= 1 degrades to a plain loop.
void parallel_for(int begin, int end, int threads,
                  const std::function<void(int)>& fn);

}  // namespace qskyrm
