#pragma once

#include <cstddef>
#include <vector>

namespace kcl {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached per order; safe to call from several threads.
const GaussRule& gauss_legendre(std::size_t order);

}  // namespace kcl
