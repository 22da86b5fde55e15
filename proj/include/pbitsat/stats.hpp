#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace pbitsat {

// Median with the lower-middle convention for even-length input, so the
// result is always an observed value. For five seeds this is the 3rd order
// statistic.
template <typename T>
T median_lower(std::vector<T> values) {
  if (values.empty()) throw std::invalid_argument("median of empty list");
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

template <typename T>
double mean(const std::vector<T>& values) {
  if (values.empty()) throw std::invalid_argument("mean of empty list");
  double total = 0;
  for (const T& v : values) total += static_cast<double>(v);
  return total / static_cast<double>(values.size());
}

} // namespace pbitsat
