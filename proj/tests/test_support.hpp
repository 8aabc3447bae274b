#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "eja/algebra.hpp"
#include "eja/matrix.hpp"
#include "oracles.hpp"

namespace eja::testing {

inline std::vector<DescriptorPtr> all_descriptors() {
  std::vector<DescriptorPtr> out;
  for (std::size_t n = 2; n <= 5; ++n) out.push_back(share(AlgebraDescriptor::sym(n)));
  for (std::size_t n = 3; n <= 8; ++n) out.push_back(share(AlgebraDescriptor::spin(n)));
  out.push_back(share(AlgebraDescriptor::direct_sum({AlgebraDescriptor::sym(2), AlgebraDescriptor::spin(3)})));
  return out;
}

inline double max_abs_diff(const Element& x, const Element& y) {
  double m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

inline double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
  REQUIRE(x.size() == y.size());
  double m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

inline double max_abs_diff(const Matrix& x, const Matrix& y) {
  double m = 0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) m = std::max(m, std::abs(x(i, j) - y(i, j)));
  return m;
}

}  // namespace eja::testing
