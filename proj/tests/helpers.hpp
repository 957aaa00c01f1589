#pragma once

#include "hhnn/algebra.hpp"

#include <random>
#include <vector>

namespace hhnn::testing {

// Small integer coefficients keep double arithmetic exact, so structural
// identities can be asserted with zero tolerance.
inline HNumber random_int_number(const AlgebraPtr& alg, std::mt19937_64& eng, int lo = -3,
                                 int hi = 3) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<double> c(static_cast<std::size_t>(alg->dim()));
  for (double& v : c) v = dist(eng);
  return HNumber(alg, std::move(c));
}

inline HNumber random_real_number(const AlgebraPtr& alg, std::mt19937_64& eng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(alg->dim()));
  for (double& v : c) v = gauss(eng);
  return HNumber(alg, std::move(c));
}

}  // namespace hhnn::testing
