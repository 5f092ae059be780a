#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace subgauss::detail {

/// Runs body(c) for every chunk index c < chunks, spread over at most
/// `threads` workers. The first exception raised by any worker is rethrown.
template <class F>
void for_each_chunk(std::size_t chunks, unsigned threads, F&& body) {
  if (threads <= 1 || chunks <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
    for (unsigned t = 0; t < count; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (std::size_t c = t; c < chunks; c += count) body(c);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace subgauss::detail
