#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace seamcheck::detail {

// Splits [0, n) into contiguous chunks, runs `fn(begin, end)` for each on up
// to `jobs` threads and concatenates the returned vectors in chunk order, so
// the result is identical for every `jobs` value.
template <class T, class Fn>
std::vector<T> parallel_collect(std::size_t n, int jobs, Fn fn) {
  const std::size_t workers = std::clamp<std::size_t>(jobs < 1 ? 1 : static_cast<std::size_t>(jobs),
                                                      1, std::max<std::size_t>(n, 1));
  if (workers == 1) return fn(std::size_t{0}, n);

  std::vector<std::vector<T>> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = n * w / workers;
      const std::size_t end = n * (w + 1) / workers;
      threads.emplace_back([&, w, begin, end] {
        try {
          parts[w] = fn(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<T> out;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  out.reserve(total);
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace seamcheck::detail
