#ifndef NCURV_TEST_UTIL_HPP
#define NCURV_TEST_UTIL_HPP

#include "ncurv/exact_linalg.hpp"

#include <random>

namespace test_util {

using ncurv::Index;
using ncurv::Matrix;
using ncurv::Rational;

// Small entries with a bias toward zero, so rank deficiency is common.
inline Rational small_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3), zero(0, 2);
  if (zero(rng) == 0) return Rational(0);
  return Rational(num(rng)) / Rational(den(rng));
}

inline Matrix random_matrix(std::mt19937& rng, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = small_rational(rng);
  return m;
}

// Product of random rows x r and r x cols factors: rank at most r.
inline Matrix random_low_rank(std::mt19937& rng, Index rows, Index cols, Index r) {
  return random_matrix(rng, rows, r) * random_matrix(rng, r, cols);
}

}  // namespace test_util

#endif
