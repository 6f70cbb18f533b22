#pragma once

// Dense-matrix reference implementation of the AMP recursion, used to check
// the operator-based solver iterate by iterate. Works directly on an
// explicit matrix with naive loops; shares no code with the fast paths.

#include <cmath>
#include <complex>
#include <vector>

#include "ampkit/amp.hpp"
#include "ampkit/structured_operator.hpp"

namespace testutil {

template <class Scalar>
struct ReferenceAmp {
  const ampkit::DenseMatrix<Scalar>& matrix;
  std::vector<Scalar> y;
  ampkit::AmpConfig config;

  std::vector<Scalar> a, w, r;
  std::vector<double> v, theta, sigma2;

  template <class Prior>
  void init(const Prior& prior) {
    const std::size_t n = matrix.cols;
    const std::size_t m = matrix.rows;
    a.assign(n, prior.init_mean());
    v.assign(n, prior.init_variance());
    w = y;
    r.assign(n, Scalar{});
    sigma2.assign(n, 0.0);
    theta.assign(m, 0.0);
    for (std::size_t mu = 0; mu < m; ++mu) {
      for (std::size_t i = 0; i < n; ++i) {
        theta[mu] += std::norm(matrix.at(mu, i)) * v[i];
      }
    }
  }

  template <class Prior>
  void step(const Prior& prior) {
    const std::size_t n = matrix.cols;
    const std::size_t m = matrix.rows;
    const double delta_eff = std::max(config.delta, config.variance_floor);

    std::vector<double> theta_new(m, 0.0);
    for (std::size_t mu = 0; mu < m; ++mu) {
      for (std::size_t i = 0; i < n; ++i) {
        theta_new[mu] += std::norm(matrix.at(mu, i)) * v[i];
      }
    }
    std::vector<Scalar> w_new(m, Scalar{});
    for (std::size_t mu = 0; mu < m; ++mu) {
      for (std::size_t i = 0; i < n; ++i) w_new[mu] += matrix.at(mu, i) * a[i];
      w_new[mu] -= theta_new[mu] * (y[mu] - w[mu]) / (delta_eff + theta[mu]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t mu = 0; mu < m; ++mu) {
        acc += std::norm(matrix.at(mu, i)) / (delta_eff + theta_new[mu]);
      }
      sigma2[i] = 1.0 / acc;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Scalar acc{};
      for (std::size_t mu = 0; mu < m; ++mu) {
        Scalar entry = matrix.at(mu, i);
        if constexpr (!std::is_same_v<Scalar, double>) entry = std::conj(entry);
        acc += entry * (y[mu] - w_new[mu]) / (delta_eff + theta_new[mu]);
      }
      r[i] = a[i] + sigma2[i] * acc;
    }
    std::vector<Scalar> a_new(n);
    std::vector<double> v_new(n);
    prior.denoise(sigma2, r, a_new, v_new);
    a = std::move(a_new);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = std::max(v_new[i], config.variance_floor);
    }
    w = std::move(w_new);
    theta = std::move(theta_new);
  }
};

}  // namespace testutil
