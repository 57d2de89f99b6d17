#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <string_view>
#include <thread>
#include <vector>

#include "nkcp3/quat.hpp"

namespace nkcp3 {

/// The two standard charts of the sphere: z and w = 1/z.
enum class Chart { kZero, kInfinity };

std::string_view to_string(Chart chart);  // "0" or "inf"

/// Map a chart coordinate to the coordinate of the other chart.
inline Complex to_other_chart(Complex z) { return Complex{1.0} / z; }

struct GridPoint {
  Chart chart;
  Complex z;
  int ix;
  int iy;
};

/// Square sample grid [-w, w]^2 on each requested chart.
struct GridSpec {
  Real half_width = 1.5;
  int samples = 41;
  std::vector<Chart> charts{Chart::kZero, Chart::kInfinity};

  /// Throws InvalidArgument unless samples >= 9, half_width > 0 and charts nonempty.
  void validate() const;
  Complex node(int ix, int iy) const;
  std::vector<GridPoint> points() const;
  bool has_chart(Chart c) const { return std::find(charts.begin(), charts.end(), c) != charts.end(); }
};

/// Evaluates fn(i) for i in [0, n) on up to `jobs` threads. Results keep index
/// order, so any reduction over them is independent of `jobs`.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, int jobs, F&& fn) {
  std::vector<T> out(n);
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          out[i] = fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace nkcp3
