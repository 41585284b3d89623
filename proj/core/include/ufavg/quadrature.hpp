#pragma once

#include <cstddef>
#include <vector>

namespace ufavg {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss–Legendre rule mapped onto [a, b]. Nodes ascend.
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

}  // namespace ufavg
