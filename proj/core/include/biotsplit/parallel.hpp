#pragma once

#include <cstddef>
#include <functional>

namespace biotsplit {

/// Worker count for element loops: hardware concurrency, capped by the
/// BIOT_SPLIT_THREADS environment variable when it holds a positive integer.
int assembly_threads();

/// Splits [0, n) into `chunks` contiguous ranges and runs
/// body(chunk, begin, end) for each, one thread per chunk. Chunk c always
/// covers the same range for a given (n, chunks), so per-chunk output
/// concatenated in chunk order is independent of scheduling.
void parallel_chunks(std::size_t n, int chunks, const std::function<void(int, std::size_t, std::size_t)>& body);

}  // namespace biotsplit
