#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <concepts>
#include <span>
#include <string>
#include <vector>

#include "ampkit/errors.hpp"
#include "ampkit/signals.hpp"

namespace ampkit {

/// The four-operator interface the AMP recursion consumes.
template <class Op, class Scalar>
concept MeasurementOperator =
    requires(const Op& op, std::span<const Scalar> x, std::span<Scalar> y,
             std::span<const double> v, std::span<double> u) {
      { op.rows() } -> std::convertible_to<std::size_t>;
      { op.cols() } -> std::convertible_to<std::size_t>;
      { op.block_cols() } -> std::convertible_to<std::size_t>;
      requires requires(std::span<const Scalar> f, std::span<Scalar> xo) {
        op.forward(x, y);
        op.adjoint(f, xo);
      };
      requires requires(std::span<const double> vi, std::span<double> vo) {
        op.sq_forward(vi, vo);
        op.sq_adjoint(vi, vo);
      };
    };

/// Convergence measure on the change of the estimate between iterations:
/// max_i |a_i^t - a_i^{t-1}|^2 (the pseudocode's delta_max) or the mean of
/// the same squared changes (the criterion used for the code experiments).
enum class ConvergenceCriterion { max_squared, mean_squared };

enum class StopReason { converged, max_iterations };

inline const char* to_string(StopReason reason) {
  return reason == StopReason::converged ? "converged" : "max_iterations";
}

struct AmpConfig {
  double epsilon = 1e-12;  // threshold on the convergence measure
  int t_max = 1000;
  double delta = 0.0;           // channel noise variance
  double variance_floor = 1e-17;  // replaces delta inside denominators only
  double damping = 0.0;           // new = (1-damping)*new + damping*old
  ConvergenceCriterion criterion = ConvergenceCriterion::max_squared;
  bool record_trace = true;
  bool record_timing = true;  // wall-clock column in the trace
};

struct TraceRow {
  int iteration = 0;
  double mse = -1.0;  // -1 when no reference signal was supplied
  std::vector<double> block_mse;
  double delta = 0.0;
  double seconds = 0.0;
};

struct Trace {
  std::vector<TraceRow> rows;
};

/// Everything one AMP iteration reads and writes.
template <class Scalar>
struct AmpState {
  std::vector<Scalar> a;       // current estimate of x
  std::vector<double> v;       // its per-component uncertainty
  std::vector<Scalar> w;       // estimate of the clean measurements
  std::vector<double> theta;   // its uncertainty
  std::vector<Scalar> r;       // pseudo-data
  std::vector<double> sigma2;  // effective noise on the pseudo-data
  int t = 0;
};

template <class Scalar>
struct AmpResult {
  std::vector<Scalar> a;
  Trace trace;
  StopReason reason = StopReason::max_iterations;
  int iterations = 0;
};

/// Initialization: a = prior mean of the estimate (0 for Gauss-Bernoulli,
/// 1/B for sections), v = prior variance, w = y, Theta = O~(v).
template <class Op, class Prior,
          class Scalar = typename Prior::scalar_type>
  requires MeasurementOperator<Op, Scalar>
AmpState<Scalar> amp_init(std::span<const Scalar> y, const Op& op,
                          const Prior& prior) {
  const std::size_t n = op.cols();
  const std::size_t m = op.rows();
  if (y.size() != m) {
    throw SizeError("amp_init: y has length " + std::to_string(y.size()) +
                    ", operator expects " + std::to_string(m));
  }
  AmpState<Scalar> state;
  state.a.assign(n, prior.init_mean());
  state.v.assign(n, prior.init_variance());
  state.w.assign(y.begin(), y.end());
  state.theta.resize(m);
  op.sq_forward(state.v, state.theta);
  state.r = state.a;
  state.sigma2 = state.v;
  state.t = 0;
  return state;
}

namespace detail {

template <class Scalar>
double squared_change(Scalar a, Scalar b) {
  if constexpr (std::is_same_v<Scalar, double>) {
    const double d = a - b;
    return d * d;
  } else {
    return std::norm(a - b);
  }
}

}  // namespace detail

/// One sweep of the operator-based AMP recursion:
///   Theta' = O~(v)
///   w'     = O(a) - Theta' (y - w) / (Delta + Theta)
///   Sigma2 = [O~*(1/(Delta + Theta'))]^{-1}
///   R      = a + Sigma2 . O*((y - w') / (Delta + Theta'))
///   (a, v) = denoiser(Sigma2, R)
/// Returns the convergence measure on the change of a. Note the Onsager term
/// divides by the previous iteration's Theta while multiplying the new one,
/// exactly as in the pseudocode.
template <class Op, class Prior,
          class Scalar = typename Prior::scalar_type>
  requires MeasurementOperator<Op, Scalar>
double amp_iterate(AmpState<Scalar>& state, std::span<const Scalar> y,
                   const Op& op, const Prior& prior, const AmpConfig& config) {
  const std::size_t n = op.cols();
  const std::size_t m = op.rows();
  const double delta_eff = std::max(config.delta, config.variance_floor);

  std::vector<double> theta_new(m);
  op.sq_forward(state.v, theta_new);

  std::vector<Scalar> w_new(m);
  op.forward(state.a, w_new);
  for (std::size_t mu = 0; mu < m; ++mu) {
    w_new[mu] -= theta_new[mu] * (y[mu] - state.w[mu]) /
                 (delta_eff + state.theta[mu]);
  }
  if (config.damping > 0.0) {
    for (std::size_t mu = 0; mu < m; ++mu) {
      w_new[mu] = (1.0 - config.damping) * w_new[mu] +
                  config.damping * state.w[mu];
    }
  }

  std::vector<double> inv_den(m);
  for (std::size_t mu = 0; mu < m; ++mu) {
    inv_den[mu] = 1.0 / (delta_eff + theta_new[mu]);
  }
  op.sq_adjoint(inv_den, state.sigma2);
  for (std::size_t i = 0; i < n; ++i) {
    state.sigma2[i] = 1.0 / state.sigma2[i];
  }

  std::vector<Scalar> residual(m);
  for (std::size_t mu = 0; mu < m; ++mu) {
    residual[mu] = (y[mu] - w_new[mu]) * inv_den[mu];
  }
  op.adjoint(residual, state.r);
  for (std::size_t i = 0; i < n; ++i) {
    state.r[i] = state.a[i] + state.sigma2[i] * state.r[i];
  }

  std::vector<Scalar> a_new(n);
  std::vector<double> v_new(n);
  prior.denoise(state.sigma2, state.r, a_new, v_new);
  if (config.damping > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      a_new[i] = (1.0 - config.damping) * a_new[i] +
                 config.damping * state.a[i];
    }
  }

  double delta_measure = 0.0;
  if (config.criterion == ConvergenceCriterion::max_squared) {
    for (std::size_t i = 0; i < n; ++i) {
      delta_measure =
          std::max(delta_measure, detail::squared_change(a_new[i], state.a[i]));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      delta_measure += detail::squared_change(a_new[i], state.a[i]);
    }
    delta_measure /= static_cast<double>(n);
  }

  state.a = std::move(a_new);
  for (std::size_t i = 0; i < n; ++i) {
    state.v[i] = std::max(v_new[i], config.variance_floor);
  }
  state.w = std::move(w_new);
  state.theta = std::move(theta_new);
  ++state.t;

  double w_probe = 0.0;
  for (std::size_t mu = 0; mu < m; ++mu) {
    w_probe += detail::squared_change(state.w[mu], Scalar{});
  }
  if (!std::isfinite(delta_measure) || !std::isfinite(w_probe)) {
    throw DivergenceError("amp_iterate: iterates became non-finite",
                          state.t);
  }
  return delta_measure;
}

/// Runs the full loop: iterate until the convergence measure drops to
/// epsilon or t_max is reached. When true_x is supplied the trace records
/// the MSE and the per-block MSE (block partition taken from the operator).
template <class Op, class Prior,
          class Scalar = typename Prior::scalar_type>
  requires MeasurementOperator<Op, Scalar>
AmpResult<Scalar> amp_run(std::span<const Scalar> y, const Op& op,
                          const Prior& prior, const AmpConfig& config,
                          std::span<const Scalar> true_x = {}) {
  if (!true_x.empty() && true_x.size() != op.cols()) {
    throw SizeError("amp_run: reference signal length mismatch");
  }
  const auto start = std::chrono::steady_clock::now();
  AmpState<Scalar> state = amp_init(y, op, prior);

  AmpResult<Scalar> result;
  result.reason = StopReason::max_iterations;
  for (int t = 0; t < config.t_max; ++t) {
    const double delta_measure = amp_iterate(state, y, op, prior, config);
    if (config.record_trace) {
      TraceRow row;
      row.iteration = state.t;
      row.delta = delta_measure;
      if (!true_x.empty()) {
        row.mse = mse(std::span<const Scalar>(state.a), true_x);
        row.block_mse = blockwise_mse(std::span<const Scalar>(state.a), true_x,
                                      op.block_cols());
      }
      if (config.record_timing) {
        row.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
      }
      result.trace.rows.push_back(std::move(row));
    }
    if (delta_measure <= config.epsilon) {
      result.reason = StopReason::converged;
      break;
    }
  }
  result.iterations = state.t;
  result.a = std::move(state.a);
  return result;
}

}  // namespace ampkit
