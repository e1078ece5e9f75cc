#include <atomic>
#include <set>

#include "doctest.h"
#include "nullcong/grid.hpp"

using namespace nullcong;

TEST_CASE("cube grid enumerates z fastest") {
  const GridSpec g = GridSpec::cube(Event(1, 2, 3, 4), 0.5, 3);
  CHECK(g.size() == 81);
  const Event first = g.point(0), second = g.point(1), last = g.point(80);
  CHECK(first.x == Vec4{0.5, 1.5, 2.5, 3.5});
  CHECK(second.x == Vec4{0.5, 1.5, 2.5, 4.0});
  CHECK(last.x == Vec4{1.5, 2.5, 3.5, 4.5});
  CHECK(g.events().size() == 81);
}

TEST_CASE("spatial grid keeps t fixed") {
  const GridSpec g = GridSpec::spatial(Event(0.7, 0, 0, 0), 0.05, 9);
  g.validate();
  CHECK(g.size() == 729);
  for (const Event& e : g.events()) CHECK(e[0] == 0.7);
  CHECK(std::abs(g.point(1)[3] - g.point(0)[3] - 0.0125) < 1e-15);
}

TEST_CASE("parse and format round trip") {
  const GridSpec g = parse_grid("0,0.1,0.1,0.1:0,0.05,0.05,0.05:1,9,9,9");
  CHECK(g.points == std::array<int, 4>{1, 9, 9, 9});
  CHECK(g.half_width[1] == 0.05);
  const GridSpec h = parse_grid(format_grid(g));
  CHECK(h.center.x == g.center.x);
  CHECK(h.half_width == g.half_width);
  CHECK(h.points == g.points);
  CHECK(parse_grid("0,0,0,0:1:9").size() == 6561);
}

TEST_CASE("malformed grids are rejected") {
  for (const char* bad : {"", "0,0,0:1:3", "0,0,0,0:1", "0,0,0,0:1:0", "0,0,0,0:1:1", "0,0,0,0:0:3",
                          "0,0,0,0:-1:3", "0,0,0,0:1:2.5", "0,0,0,0:1,1:3", "a,0,0,0:1:3", "0,0,0,0:1:3x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_grid(bad), std::invalid_argument);
  }
}

TEST_CASE("partitions cover the range in order") {
  for (std::size_t n : {0u, 1u, 7u, 100u})
    for (int w : {-3, 0, 1, 2, 3, 8, 200}) {
      const auto parts = partition(n, w);
      std::size_t next = 0;
      for (const auto& [b, e] : parts) {
        CHECK(b == next);
        CHECK(e > b);
        next = e;
      }
      CHECK(next == n);
      CHECK(parts.size() <= std::max<std::size_t>(1, static_cast<std::size_t>(std::max(w, 1))));
    }
  CHECK(partition(10, 3) == std::vector<std::pair<std::size_t, std::size_t>>{{0, 4}, {4, 7}, {7, 10}});
}

TEST_CASE("partitioned sweep visits every index once") {
  std::vector<int> hits(1000, 0);
  std::atomic<int> calls{0};
  for_each_partition(hits.size(), 4, [&](std::size_t, std::size_t b, std::size_t e) {
    ++calls;
    for (std::size_t i = b; i < e; ++i) ++hits[i];
  });
  CHECK(calls == 4);
  CHECK(std::set<int>(hits.begin(), hits.end()) == std::set<int>{1});
}
