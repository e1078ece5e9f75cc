#pragma once

// Rectangular event grids and a deterministic partitioned sweep.

#include <cstddef>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nullcong/spinor.hpp"

namespace nullcong {

struct GridSpec {
  Event center;
  Vec4 half_width{};
  std::array<int, 4> points{1, 1, 1, 1};

  static GridSpec cube(const Event& center, double half_width, int n);
  // n points on x, y, z at fixed t.
  static GridSpec spatial(const Event& center, double half_width, int n);

  // Throws std::invalid_argument. An axis with one point must have zero width.
  void validate() const;
  std::size_t size() const;
  // Row-major in (t, x, y, z), z fastest.
  Event point(std::size_t index) const;
  std::vector<Event> events() const;
};

// "T,X,Y,Z:H:N" where H and N are single values or four comma-separated ones.
GridSpec parse_grid(const std::string& text);
std::string format_grid(const GridSpec& g);

// Contiguous blocks [begin, end), fixed by (n, workers) alone.
std::vector<std::pair<std::size_t, std::size_t>> partition(std::size_t n, int workers);

// Calls fn(part, begin, end) for each block, one thread per block.
template <typename Fn>
void for_each_partition(std::size_t n, int workers, Fn&& fn) {
  const auto parts = partition(n, workers);
  if (parts.size() <= 1) {
    if (!parts.empty()) fn(std::size_t{0}, parts[0].first, parts[0].second);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p)
    threads.emplace_back([&fn, &parts, p] { fn(p, parts[p].first, parts[p].second); });
  for (auto& t : threads) t.join();
}

}  // namespace nullcong
