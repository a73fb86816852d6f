#include "chlab/numerics.hpp"

#include "chlab/errors.hpp"

namespace chlab {

std::vector<double> gregory_weights(std::size_t n, double h) {
  if (n < 8) throw Error(ErrorCode::InvalidArgument, "end-corrected weights need >= 8 points");
  std::vector<double> w(n, h);
  const double ends[4] = {17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0, 49.0 / 48.0};
  for (std::size_t i = 0; i < 4; ++i) {
    w[i] = ends[i] * h;
    w[n - 1 - i] = ends[i] * h;
  }
  return w;
}

}  // namespace chlab
