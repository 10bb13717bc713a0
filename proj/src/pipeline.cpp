#include "drgtk/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "drgtk/drg.hpp"

namespace drgtk {

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs < 1) jobs = 1;
  std::size_t workers = std::min<std::size_t>(jobs, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<std::string> map_blocks(
    const std::vector<std::string>& blocks, int jobs,
    const std::function<std::string(const std::string&, std::size_t)>& fn) {
  std::vector<std::string> out(blocks.size());
  parallel_for(blocks.size(), jobs, [&](std::size_t i) {
    try {
      out[i] = fn(blocks[i], i);
    } catch (const std::exception& e) {
      throw DrgError("graph " + std::to_string(i + 1) + ": " + e.what());
    }
  });
  return out;
}

}  // namespace drgtk
