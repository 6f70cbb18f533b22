#pragma once

#include <cstddef>
#include <functional>

namespace ampkit {

/// Splits [begin, end) into `threads` contiguous chunks and runs
/// fn(chunk_begin, chunk_end, thread_index) on each, joining before return.
/// threads <= 1 runs inline. Chunk boundaries depend only on (begin, end,
/// threads), so results are reproducible for a fixed thread count.
void parallel_chunks(
    std::size_t begin, std::size_t end, unsigned threads,
    const std::function<void(std::size_t, std::size_t, unsigned)>& fn);

/// Hardware thread count, at least 1.
unsigned default_threads();

}  // namespace ampkit
