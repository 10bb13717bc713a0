#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace drgtk {

// Runs fn(0..n-1) on up to `jobs` threads. Rethrows the exception of the
// smallest failing index once all workers stop, so errors are deterministic.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

// Applies fn to every block in order-preserving parallel fashion. Exceptions
// are rewrapped with the 1-based block index so corpus errors are locatable.
std::vector<std::string> map_blocks(const std::vector<std::string>& blocks, int jobs,
                                    const std::function<std::string(const std::string&, std::size_t)>& fn);

}  // namespace drgtk
