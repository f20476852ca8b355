#pragma once

#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <utility>

namespace cosurf::detail {

// Gauss-Legendre nodes and weights mapped to [0, 1].
template <int N>
std::array<std::pair<double, double>, N> unit_rule() {
  using Rule = boost::math::quadrature::gauss<double, N>;
  std::array<std::pair<double, double>, N> out{};
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  int k = 0;
  // abscissa() holds the non-negative half of the symmetric rule
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      out[k++] = {0.5, 0.5 * w[i]};
      continue;
    }
    out[k++] = {0.5 * (1.0 - x[i]), 0.5 * w[i]};
    out[k++] = {0.5 * (1.0 + x[i]), 0.5 * w[i]};
  }
  return out;
}

}  // namespace cosurf::detail
