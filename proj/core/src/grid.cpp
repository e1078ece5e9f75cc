#include "nullcong/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace nullcong {

GridSpec GridSpec::cube(const Event& center, double half_width, int n) {
  GridSpec g;
  g.center = center;
  g.half_width = {half_width, half_width, half_width, half_width};
  g.points = {n, n, n, n};
  return g;
}

GridSpec GridSpec::spatial(const Event& center, double half_width, int n) {
  GridSpec g = cube(center, half_width, n);
  g.half_width[0] = 0.0;
  g.points[0] = 1;
  return g;
}

void GridSpec::validate() const {
  for (int a = 0; a < 4; ++a) {
    if (!std::isfinite(center.x[a]) || !std::isfinite(half_width[a]) || half_width[a] < 0.0)
      throw std::invalid_argument("grid: center and half-widths must be finite, widths >= 0");
    if (points[a] < 1) throw std::invalid_argument("grid: at least one point per axis");
    if (points[a] == 1 && half_width[a] != 0.0)
      throw std::invalid_argument("grid: an axis with one point must have zero half-width");
    if (points[a] > 1 && half_width[a] == 0.0)
      throw std::invalid_argument("grid: an axis with several points needs a positive half-width");
  }
  if (size() > (std::size_t{1} << 28)) throw std::invalid_argument("grid: too many points");
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int p : points) n *= static_cast<std::size_t>(std::max(p, 0));
  return n;
}

Event GridSpec::point(std::size_t index) const {
  Event e = center;
  for (int a = 3; a >= 0; --a) {
    const auto n = static_cast<std::size_t>(points[a]);
    const auto i = index % n;
    index /= n;
    if (n > 1) e.x[a] += -half_width[a] + 2.0 * half_width[a] * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return e;
}

std::vector<Event> GridSpec::events() const {
  std::vector<Event> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = point(i);
  return out;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("grid: bad number '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("grid: bad number '" + s + "'");
  return v;
}

template <typename T, typename Conv>
std::array<T, 4> one_or_four(const std::string& s, Conv conv) {
  const auto parts = split(s, ',');
  std::array<T, 4> out{};
  if (parts.size() == 1) {
    out.fill(conv(parts[0]));
  } else if (parts.size() == 4) {
    for (int a = 0; a < 4; ++a) out[a] = conv(parts[a]);
  } else {
    throw std::invalid_argument("grid: expected 1 or 4 values in '" + s + "'");
  }
  return out;
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  const auto fields = split(text, ':');
  if (fields.size() != 3) throw std::invalid_argument("grid: expected T,X,Y,Z:H:N");
  const auto c = split(fields[0], ',');
  if (c.size() != 4) throw std::invalid_argument("grid: center needs 4 coordinates");
  GridSpec g;
  for (int a = 0; a < 4; ++a) g.center.x[a] = to_double(c[a]);
  g.half_width = one_or_four<double>(fields[1], to_double);
  g.points = one_or_four<int>(fields[2], [](const std::string& s) {
    const double v = to_double(s);
    if (!(v >= 0.0 && v <= 1e7) || v != static_cast<int>(v)) throw std::invalid_argument("grid: point count must be an integer");
    return static_cast<int>(v);
  });
  g.validate();
  return g;
}

std::string format_grid(const GridSpec& g) {
  std::string out;
  char buf[64];
  auto put = [&](const auto& arr, const char* fmt) {
    for (int a = 0; a < 4; ++a) {
      std::snprintf(buf, sizeof buf, fmt, arr[a]);
      out += buf;
      out += a < 3 ? "," : "";
    }
  };
  put(g.center.x, "%.17g");
  out += ":";
  put(g.half_width, "%.17g");
  out += ":";
  put(g.points, "%d");
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> partition(std::size_t n, int workers) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (n == 0) return out;
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n);
  const std::size_t base = n / w, extra = n % w;
  std::size_t begin = 0;
  for (std::size_t p = 0; p < w; ++p) {
    const std::size_t len = base + (p < extra ? 1 : 0);
    out.emplace_back(begin, begin + len);
    begin += len;
  }
  return out;
}

}  // namespace nullcong
