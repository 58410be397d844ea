#pragma once

#include <cstddef>
#include <functional>

namespace qam {

/// Worker count: hardware concurrency, capped by the QAM_THREADS variable.
unsigned thread_count();

/// Splits [0, n) into contiguous chunks and runs body(begin, end, chunk) for
/// each, possibly concurrently. Returns the number of chunks used; chunk ids
/// are 0..chunks-1 in index order so callers can reduce deterministically.
std::size_t parallel_chunks(std::size_t n,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

/// Upper bound on the chunk count parallel_chunks will use for n items.
std::size_t max_chunks(std::size_t n);

}  // namespace qam
