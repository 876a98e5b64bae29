#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qtomo {

/// Splits [0, count) into `shards` contiguous ranges and runs fn(shard, begin,
/// end) for each, one thread per shard. Rethrows the first failure.
template <typename Fn>
void for_each_shard(std::size_t count, std::size_t shards, Fn&& fn) {
  shards = std::max<std::size_t>(1, std::min(shards, std::max<std::size_t>(count, 1)));
  auto bounds = [&](std::size_t s) { return count * s / shards; };
  if (shards == 1) {
    fn(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(shards);
  std::vector<std::thread> threads;
  threads.reserve(shards);
  for (std::size_t s = 0; s < shards; ++s) {
    threads.emplace_back([&, s] {
      try {
        fn(s, bounds(s), bounds(s + 1));
      } catch (...) {
        errors[s] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace qtomo
