#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <thread>
#include <vector>

#include <cmath>

// Boost 1.74's pchip calls isnan unqualified, which only resolves when the
// name is visible in its namespace.
namespace boost::math::interpolators {
using std::isnan;
}
#include <boost/math/interpolators/pchip.hpp>

namespace chlab {

/// Shape-preserving cubic through strictly increasing abscissas. Never
/// overshoots monotone data. Outside the table the end values are held.
class MonotoneCurve {
 public:
  MonotoneCurve(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double front_x() const noexcept { return x_front_; }
  double back_x() const noexcept { return x_back_; }

 private:
  double x_front_;
  double x_back_;
  double y_front_;
  double y_back_;
  boost::math::interpolators::pchip<std::vector<double>> spline_;
};

inline MonotoneCurve::MonotoneCurve(std::vector<double> x, std::vector<double> y)
    : x_front_(x.front()),
      x_back_(x.back()),
      y_front_(y.front()),
      y_back_(y.back()),
      spline_(std::move(x), std::move(y)) {}

inline double MonotoneCurve::operator()(double x) const {
  if (x <= x_front_) return y_front_;
  if (x >= x_back_) return y_back_;
  return spline_(x);
}

/// Runs fn(i) for i in [0, n) on up to `threads` worker threads. Each index
/// is independent, so results do not depend on the thread count.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
}

/// Composite trapezoid weights on a uniform grid with fourth-order Gregory
/// end corrections. Requires at least 8 points.
std::vector<double> gregory_weights(std::size_t n, double h);

}  // namespace chlab
