#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cognet {

inline constexpr const char* kVersion = "0.1.0";

// Locale-independent formatting with a fixed number of significant digits.
// Used for all CSV output so artifacts are byte-stable across environments.
inline std::string fmt_double(double x, int significant = 12) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x,
                           std::chars_format::general, significant);
  return std::string(buf, res.ptr);
}

// Shortest round-trip representation, for JSON-adjacent text output.
inline std::string fmt_double_exact(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("linspace: need at least 2 points");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  out.back() = hi;
  return out;
}

inline void require_grid_in_unit(const std::vector<double>& p_grid,
                                 const char* what) {
  if (p_grid.empty())
    throw std::invalid_argument(std::string(what) + ": empty p grid");
  double prev = 0.0;
  for (double p : p_grid) {
    if (!(p > prev) || p > 1.0)
      throw std::invalid_argument(std::string(what) +
                                  ": p grid must be strictly increasing within (0,1]");
    prev = p;
  }
}

// Index-chunked parallel map. Work item i writes only to slot i of whatever
// the caller owns, so the reduction order (and therefore the result) does not
// depend on the number of threads.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 0) threads = std::max(1, hw);
  threads = std::min(threads, n);
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (int i = t; i < n; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace cognet
