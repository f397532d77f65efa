#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace nalength {

/// Splits [0, n) into fixed-size blocks that `jobs` threads pull in any
/// order. Block results are combined strictly in block order, so the result
/// does not depend on `jobs`. An exception from the lowest failing block is
/// rethrown.
template <class T, class Body, class Combine>
T parallel_reduce(std::size_t n, std::size_t jobs, std::size_t block, T init, Body body, Combine combine) {
  block = std::max<std::size_t>(block, 1);
  const std::size_t blocks = (n + block - 1) / block;
  std::vector<std::optional<T>> results(blocks);
  std::vector<std::exception_ptr> errors(blocks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t b = next++; b < blocks; b = next++) {
      try {
        results[b] = body(b * block, std::min(n, (b + 1) * block));
      } catch (...) {
        errors[b] = std::current_exception();
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(blocks, 1));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t b = 0; b < blocks; ++b) {
    if (errors[b]) std::rethrow_exception(errors[b]);
    init = combine(std::move(init), std::move(*results[b]));
  }
  return init;
}

/// Smallest i in [0, n) with pred(i), evaluating blocks in parallel. Blocks
/// above an already found index are skipped.
template <class Pred>
std::optional<std::size_t> parallel_find_first(std::size_t n, std::size_t jobs, std::size_t block, Pred pred) {
  std::atomic<std::size_t> best{n};
  auto found = parallel_reduce(
      n, jobs, block, std::optional<std::size_t>{},
      [&](std::size_t begin, std::size_t end) -> std::optional<std::size_t> {
        for (std::size_t i = begin; i < end; ++i) {
          if (i >= best.load()) return std::nullopt;
          if (pred(i)) {
            std::size_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            return i;
          }
        }
        return std::nullopt;
      },
      [](std::optional<std::size_t> acc, std::optional<std::size_t> x) { return acc ? acc : x; });
  return found;
}

}  // namespace nalength
