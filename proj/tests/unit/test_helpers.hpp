#pragma once

// Test-side oracles. These build dense equivalents from closed forms and
// never call the fast paths they are used to check.

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ampkit/rng.hpp"
#include "ampkit/xforms.hpp"

namespace testutil {

using ampkit::cplx;

using RealMatrix = std::vector<std::vector<double>>;
using ComplexMatrix = std::vector<std::vector<cplx>>;

// Sylvester-ordered orthonormal Hadamard: H[i][j] = (-1)^popcount(i&j)/sqrt(n).
inline RealMatrix dense_hadamard(std::size_t n) {
  RealMatrix h(n, std::vector<double>(n));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      h[i][j] = (std::popcount(i & j) % 2 == 0 ? scale : -scale);
    }
  }
  return h;
}

// Unitary DFT: W[k][j] = exp(-2 pi i k j / n)/sqrt(n).
inline ComplexMatrix dense_fourier(std::size_t n) {
  ComplexMatrix w(n, std::vector<cplx>(n));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = -2.0 * std::numbers::pi *
                           static_cast<double>(k * j % n) /
                           static_cast<double>(n);
      w[k][j] = scale * cplx(std::cos(angle), std::sin(angle));
    }
  }
  return w;
}

// Dense equivalent of one randomized block: rows(modes) of T diag(signs) P,
// assembled entry by entry.
template <class Matrix>
Matrix dense_block(const ampkit::BlockRandomization& rand,
                   const Matrix& transform) {
  const std::size_t n_c = rand.n_c();
  const std::size_t n_r = rand.n_r();
  Matrix block(n_r, typename Matrix::value_type(n_c));
  for (std::size_t g = 0; g < n_r; ++g) {
    for (std::size_t i = 0; i < n_c; ++i) {
      block[g][rand.column_perm[i]] =
          transform[rand.modes[g]][i] * static_cast<double>(rand.signs[i]);
    }
  }
  return block;
}

inline std::vector<double> random_real_vector(std::size_t n,
                                              std::uint64_t seed) {
  ampkit::Rng rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = rng.gaussian();
  return x;
}

inline std::vector<cplx> random_complex_vector(std::size_t n,
                                               std::uint64_t seed) {
  ampkit::Rng rng(seed);
  std::vector<cplx> x(n);
  for (auto& v : x) v = cplx(rng.gaussian(), rng.gaussian());
  return x;
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

inline double max_abs_diff(const std::vector<cplx>& a,
                           const std::vector<cplx>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

}  // namespace testutil
