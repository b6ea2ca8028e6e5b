// Compiled with -ffast-math (see src/CMakeLists.txt) so the loop vectorizes
// to the libmvec tanh entry points. Elementwise only: no reductions, no
// NaN/Inf-sensitive logic may live in this translation unit.

#include <cmath>
#include <cstddef>

namespace lcr::detail {

void tanh_inplace(double* values, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = std::tanh(values[i]);
  }
}

}  // namespace lcr::detail
