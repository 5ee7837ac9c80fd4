#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace sternlab {

/// Global worker cap for batch operations. Defaults to hardware
/// concurrency; the STERN_SPECTRAL_THREADS environment variable (read once
/// at startup) acts as a fallback when no explicit value is set.
unsigned thread_count();
void set_thread_count(unsigned n);

/// Splits [0, n) into fixed chunks, maps each chunk on a worker, and
/// reduces the per-chunk results in chunk order. The chunk layout depends
/// only on n (never on the worker count), so results are bit-identical for
/// any thread configuration.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t chunk_index,
                                              std::size_t begin,
                                              std::size_t end)>& body);

/// Number of chunks parallel_chunks will use for a range of size n.
std::size_t chunk_count(std::size_t n);

}  // namespace sternlab
