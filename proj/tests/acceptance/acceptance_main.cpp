// Acceptance suite: one check per release criterion, each printing a single
// [PASS]/[FAIL] line. Run with no arguments for the full suite or pass
// criterion numbers to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ampkit/amp.hpp"
#include "ampkit/config.hpp"
#include "ampkit/dense_operator.hpp"
#include "ampkit/denoisers.hpp"
#include "ampkit/experiments.hpp"
#include "ampkit/parallel.hpp"
#include "ampkit/rng.hpp"
#include "ampkit/signals.hpp"
#include "ampkit/sparc.hpp"
#include "ampkit/state_evolution.hpp"
#include "ampkit/structured_operator.hpp"

using namespace ampkit;

namespace {

struct Criterion {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
  void note(const std::string& text) {
    if (detail.tellp() > 0) detail << "; ";
    detail << text;
  }
};

double now_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string fmt(double value) {
  std::ostringstream out;
  out.precision(4);
  out << value;
  return out.str();
}

CouplingEnsemble make_ensemble(std::uint32_t l_c, std::uint32_t l_r,
                               std::uint32_t w, double sqrt_j, double alpha,
                               double beta_seed) {
  CouplingEnsemble e;
  e.block_cols = l_c;
  e.block_rows = l_r;
  e.window = w;
  e.sqrt_j = sqrt_j;
  e.alpha = alpha;
  e.beta_seed = beta_seed;
  return e;
}

// ---------------------------------------------------------------------------
// 1. Operator correctness: fast paths vs dense materialization at
//    N in {64, 128, 256} to 1e-12; adjoint identity to 1e-10. Under 10 s.
// ---------------------------------------------------------------------------

template <class Scalar>
void check_operator_against_dense(Criterion& c,
                                  const StructuredOperator<Scalar>& op,
                                  const std::string& label) {
  const auto dense = op.materialize();
  const std::size_t m = op.rows(), n = op.cols();
  Rng rng(4242);

  std::vector<Scalar> x(n), f(m);
  std::vector<double> v(n), u(m);
  for (auto& value : x) {
    if constexpr (std::is_same_v<Scalar, double>) value = rng.gaussian();
    else value = cplx(rng.gaussian(), rng.gaussian());
  }
  for (auto& value : f) {
    if constexpr (std::is_same_v<Scalar, double>) value = rng.gaussian();
    else value = cplx(rng.gaussian(), rng.gaussian());
  }
  for (auto& value : v) value = rng.uniform();
  for (auto& value : u) value = rng.uniform();

  const auto fwd = op.forward(std::span<const Scalar>(x));
  const auto adj = op.adjoint(std::span<const Scalar>(f));
  const auto sqf = op.sq_forward(std::span<const double>(v));
  const auto sqa = op.sq_adjoint(std::span<const double>(u));

  double worst = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    Scalar acc{};
    double sq_acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += dense.at(r, i) * x[i];
      sq_acc += std::norm(dense.at(r, i)) * v[i];
    }
    worst = std::max(worst, std::abs(fwd[r] - acc));
    worst = std::max(worst, std::abs(sqf[r] - sq_acc));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Scalar acc{};
    double sq_acc = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      if constexpr (std::is_same_v<Scalar, double>) {
        acc += dense.at(r, i) * f[r];
      } else {
        acc += std::conj(dense.at(r, i)) * f[r];
      }
      sq_acc += std::norm(dense.at(r, i)) * u[r];
    }
    worst = std::max(worst, std::abs(adj[i] - acc));
    worst = std::max(worst, std::abs(sqa[i] - sq_acc));
  }
  c.require(worst < 1e-12, label + ": fast-vs-dense deviation " + fmt(worst));

  // adjoint identity <Ax, f> = <x, A*f>
  Scalar lhs{}, rhs{};
  double nx = 0.0, nf = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    if constexpr (std::is_same_v<Scalar, double>) lhs += fwd[r] * f[r];
    else lhs += fwd[r] * std::conj(f[r]);
    nf += std::norm(f[r]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if constexpr (std::is_same_v<Scalar, double>) rhs += x[i] * adj[i];
    else rhs += x[i] * std::conj(adj[i]);
    nx += std::norm(x[i]);
  }
  const double gap = std::abs(lhs - rhs) / std::sqrt(nx * nf);
  c.require(gap < 1e-10, label + ": adjoint identity gap " + fmt(gap));
}

Criterion criterion_operators() {
  Criterion c;
  for (const std::size_t n : {64u, 128u, 256u}) {
    const auto full_r = RealOperator::build(CouplingEnsemble::full(0.5),
                                            TransformKind::hadamard, n, 17);
    check_operator_against_dense(c, full_r,
                                 "full hadamard N=" + std::to_string(n));
    const auto full_c = ComplexOperator::build(CouplingEnsemble::full(0.5),
                                               TransformKind::fourier, n, 18);
    check_operator_against_dense(c, full_c,
                                 "full fourier N=" + std::to_string(n));
    const auto coupled = make_ensemble(4, 5, 1, 0.3, 0.4, 1.2);
    const auto coup_r =
        RealOperator::build(coupled, TransformKind::hadamard, n, 19);
    check_operator_against_dense(c, coup_r,
                                 "coupled hadamard N=" + std::to_string(n));
    const auto coup_c =
        ComplexOperator::build(coupled, TransformKind::fourier, n, 20);
    check_operator_against_dense(c, coup_c,
                                 "coupled fourier N=" + std::to_string(n));
  }
  return c;
}

// ---------------------------------------------------------------------------
// 2. Denoiser oracle suite over >= 100 parameter points each. Under 60 s.
// ---------------------------------------------------------------------------

Criterion criterion_denoisers() {
  Criterion c;
  Rng rng(7001);
  double worst_real = 0.0;
  for (int point = 0; point < 120; ++point) {
    const GaussBernoulliReal prior{0.05 + 0.9 * rng.uniform(),
                                   0.5 * rng.gaussian(),
                                   0.3 + 2.0 * rng.uniform()};
    const double Sigma2 = 0.01 + 2.0 * rng.uniform();
    const double R = 3.0 * rng.gaussian();
    const auto fast = gb_real(Sigma2, R, prior);
    const auto slow = posterior_oracle(prior, Sigma2, R);
    worst_real = std::max({worst_real, std::abs(fast.a - slow.a),
                           std::abs(fast.v - slow.v)});
  }
  c.require(worst_real < 1e-8, "gb_real worst " + fmt(worst_real));

  double worst_complex = 0.0;
  for (int point = 0; point < 100; ++point) {
    const GaussBernoulliComplex prior{
        0.05 + 0.9 * rng.uniform(),
        cplx(0.3 * rng.gaussian(), 0.3 * rng.gaussian()),
        0.3 + 1.5 * rng.uniform()};
    const double Sigma2 = 0.02 + 1.5 * rng.uniform();
    const cplx R(2.0 * rng.gaussian(), 2.0 * rng.gaussian());
    const auto fast = gb_complex(Sigma2, R, prior);
    const auto slow = posterior_oracle(prior, Sigma2, R);
    worst_complex = std::max({worst_complex, std::abs(fast.a - slow.a),
                              std::abs(fast.v - slow.v)});
  }
  c.require(worst_complex < 1e-6, "gb_complex worst " + fmt(worst_complex));

  double worst_section = 0.0;
  for (int point = 0; point < 120; ++point) {
    const std::size_t b = 2 + rng.uniform_below(7);
    std::vector<double> sigma(b), r(b), a(b), v(b), oa(b), ov(b);
    for (std::size_t i = 0; i < b; ++i) {
      sigma[i] = 0.05 + rng.uniform();
      r[i] = 2.0 * rng.gaussian();
    }
    section_denoise(sigma, r, a, v);
    posterior_oracle_section(sigma, r, oa, ov);
    for (std::size_t i = 0; i < b; ++i) {
      worst_section = std::max(
          {worst_section, std::abs(a[i] - oa[i]), std::abs(v[i] - ov[i])});
    }
  }
  c.require(worst_section < 1e-10, "section worst " + fmt(worst_section));
  c.note("worst dev real " + fmt(worst_real) + ", complex " +
         fmt(worst_complex) + ", section " + fmt(worst_section));
  return c;
}

// ---------------------------------------------------------------------------
// 3. State-evolution consistency.
// ---------------------------------------------------------------------------

Criterion criterion_se() {
  Criterion c;
  const GaussBernoulliReal prior{0.1, 0.0, 1.0};

  // exact zero fixed point
  c.require(se_step_scalar(0.0, prior, 0.0, 0.35) == 0.0,
            "E=0, Delta=0 not an exact fixed point");
  const std::vector<double> zero{0.0};
  const auto coupled_zero = se_step_coupled<GaussBernoulliReal>(
      zero, prior, 0.0, CouplingEnsemble::full(0.35));
  c.require(coupled_zero[0] == 0.0, "coupled zero fixed point");

  // coupled 1x1 equals scalar along a trajectory
  double e_scalar = prior.init_variance();
  std::vector<double> e_coupled{e_scalar};
  double worst_gap = 0.0;
  const auto full = CouplingEnsemble::full(0.3);
  for (int t = 0; t < 40; ++t) {
    e_scalar = se_step_scalar(e_scalar, prior, 1e-8, full.alpha);
    e_coupled =
        se_step_coupled<GaussBernoulliReal>(e_coupled, prior, 1e-8, full);
    worst_gap = std::max(worst_gap, std::abs(e_scalar - e_coupled[0]));
  }
  c.require(worst_gap < 1e-12, "coupled/scalar gap " + fmt(worst_gap));

  // quadrature vs Monte-Carlo, three significant digits
  const double Sigma2 = prior.rho * prior.sigma2 / 0.35;
  const double quad = se_mmse(prior, Sigma2);
  Rng rng(31415);
  double mc = 0.0;
  const std::size_t samples = 1000000;
  const double w0 = std::sqrt(Sigma2);
  const double w1 = std::sqrt(prior.sigma2 + Sigma2);
  for (std::size_t s = 0; s < samples; ++s) {
    const double z = rng.gaussian();
    mc += (1.0 - prior.rho) * gb_real(Sigma2, z * w0, prior).v +
          prior.rho * gb_real(Sigma2, z * w1, prior).v;
  }
  mc /= static_cast<double>(samples);
  const double rel = std::abs(quad - mc) / quad;
  c.require(rel < 5e-3, "quadrature-vs-MC relative gap " + fmt(rel));
  c.note("quad " + fmt(quad) + " vs MC " + fmt(mc));
  return c;
}

// ---------------------------------------------------------------------------
// 4. AMP vs SE on dense i.i.d. Gaussian matrices, N = 2^13, first 15
//    iterations within 10%, final MSE < 1e-6, on >= 8/10 seeds. Under 5 min.
// ---------------------------------------------------------------------------

Criterion criterion_amp_vs_se() {
  Criterion c;
  const GaussBernoulliReal prior{0.1, 0.0, 1.0};
  const std::size_t n = std::size_t{1} << 13;
  const auto m = static_cast<std::size_t>(
      std::llround(0.35 * static_cast<double>(n)));

  std::vector<double> se_curve;
  double e = prior.init_variance();
  for (int t = 0; t < 40; ++t) {
    e = se_step_scalar(e, prior, 0.0, 0.35);
    se_curve.push_back(e);
  }

  int good_seeds = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    DenseIidOperator op(m, n, derive_stream_seed(seed, 1),
                        std::size_t{1} << 26, default_threads());
    SignalSpec<double> spec{n, prior, derive_stream_seed(seed, 0)};
    const auto x = generate_gb(spec);
    const auto y = op.forward(std::span<const double>(x));
    AmpConfig config;
    config.t_max = 40;
    const auto result = amp_run(std::span<const double>(y), op, prior, config,
                                std::span<const double>(x));
    const double final_mse =
        mse(std::span<const double>(result.a), std::span<const double>(x));
    bool tracked = final_mse < 1e-6 && result.trace.rows.size() >= 15;
    for (int t = 0; tracked && t < 15; ++t) {
      const double rel =
          std::abs(result.trace.rows[t].mse - se_curve[t]) / se_curve[t];
      tracked = rel <= 0.10;
    }
    good_seeds += tracked ? 1 : 0;
  }
  c.require(good_seeds >= 8,
            "only " + std::to_string(good_seeds) + "/10 seeds tracked SE");
  c.note(std::to_string(good_seeds) + "/10 seeds within 10% for 15 iters");
  return c;
}

// ---------------------------------------------------------------------------
// 5. Structured-operator recovery at N = 2^16: success at alpha = 0.35,
//    total failure at alpha = 0.9*rho. Under 5 min.
// ---------------------------------------------------------------------------

int count_successes(double alpha, double rho, std::size_t n, int seeds,
                    int t_max) {
  const GaussBernoulliReal prior{rho, 0.0, 1.0};
  int successes = 0;
  for (int seed = 1; seed <= seeds; ++seed) {
    const auto op = RealOperator::build(
        CouplingEnsemble::full(alpha), TransformKind::hadamard, n,
        derive_stream_seed(900 + static_cast<std::uint64_t>(seed), 1));
    SignalSpec<double> spec{
        n, prior, derive_stream_seed(900 + static_cast<std::uint64_t>(seed), 0)};
    const auto x = generate_gb(spec);
    const auto y = op.forward(std::span<const double>(x));
    AmpConfig config;
    config.t_max = t_max;
    config.record_trace = false;
    const auto result = amp_run(std::span<const double>(y), op, prior, config,
                                std::span<const double>(x));
    const double final_mse =
        mse(std::span<const double>(result.a), std::span<const double>(x));
    successes += final_mse < 1e-6 ? 1 : 0;
  }
  return successes;
}

Criterion criterion_full_recovery() {
  Criterion c;
  const std::size_t n = std::size_t{1} << 16;
  const int above = count_successes(0.35, 0.1, n, 10, 400);
  const int below = count_successes(0.9 * 0.1, 0.1, n, 10, 400);
  c.require(above >= 9, "alpha=0.35 succeeded on only " +
                            std::to_string(above) + "/10 seeds");
  c.require(below == 0, "alpha=0.09 succeeded on " + std::to_string(below) +
                            "/10 seeds (expected none)");
  c.note("0.35: " + std::to_string(above) + "/10, 0.09: " +
         std::to_string(below) + "/10");
  return c;
}

// ---------------------------------------------------------------------------
// 6. Spatial-coupling wave at N = 2^16 with the Fig. 3 ensemble: recovery on
//    >= 7/10 seeds, seed block collapsing strictly first. Under 10 min.
// ---------------------------------------------------------------------------

Criterion criterion_coupled_wave() {
  Criterion c;
  const std::size_t n = std::size_t{1} << 16;
  const auto ensemble = make_ensemble(8, 10, 1, 0.1, 0.22, 1.36);
  const GaussBernoulliReal prior{0.1, 0.0, 1.0};

  int successes = 0;
  bool wave_ordered = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto op = RealOperator::build(ensemble, TransformKind::hadamard, n,
                                        derive_stream_seed(700 + seed, 1));
    SignalSpec<double> spec{n, prior, derive_stream_seed(700 + seed, 0)};
    const auto x = generate_gb(spec);
    const auto y = op.forward(std::span<const double>(x));
    AmpConfig config;
    config.t_max = 2000;
    const auto result = amp_run(std::span<const double>(y), op, prior, config,
                                std::span<const double>(x));
    const double final_mse =
        mse(std::span<const double>(result.a), std::span<const double>(x));
    if (final_mse >= 1e-6) continue;
    ++successes;

    int first_seed_block = -1, first_last_block = -1;
    for (const auto& row : result.trace.rows) {
      if (first_seed_block < 0 && row.block_mse.front() <= 1e-4) {
        first_seed_block = row.iteration;
      }
      if (first_last_block < 0 && row.block_mse.back() <= 1e-4) {
        first_last_block = row.iteration;
      }
    }
    if (first_seed_block < 0 || first_last_block < 0 ||
        first_seed_block >= first_last_block) {
      wave_ordered = false;
    }
  }
  c.require(successes >= 7,
            "recovered on only " + std::to_string(successes) + "/10 seeds");
  c.require(wave_ordered, "seed block did not collapse strictly first");
  c.note(std::to_string(successes) + "/10 recovered, wave order held");
  return c;
}

// ---------------------------------------------------------------------------
// 7. Performance scaling: operator AMP vs the dense path.
// ---------------------------------------------------------------------------

template <class Op>
double solve_seconds(const Op& op, const GaussBernoulliReal& prior,
                     std::span<const double> x, std::span<const double> y,
                     int t_max, double target_mse, int* iterations_out) {
  AmpConfig config;
  config.record_trace = false;
  const auto start = std::chrono::steady_clock::now();
  auto state = amp_init(y, op, prior);
  for (int t = 0; t < t_max; ++t) {
    amp_iterate(state, y, op, prior, config);
    if (mse(std::span<const double>(state.a), x) < target_mse) break;
  }
  if (iterations_out != nullptr) *iterations_out = state.t;
  return now_seconds(start);
}

Criterion criterion_scaling() {
  Criterion c;
  const GaussBernoulliReal prior{0.1, 0.0, 1.0};
  const double alpha = 0.35;

  std::vector<double> log_n, log_t;
  double op_seconds_at_2_16 = 0.0;
  for (std::size_t p = 12; p <= 17; ++p) {
    const std::size_t n = std::size_t{1} << p;
    std::vector<double> times;
    for (std::uint64_t inst = 0; inst < 10; ++inst) {
      const std::uint64_t seed = derive_stream_seed(3000 + p, inst);
      const auto op = RealOperator::build(CouplingEnsemble::full(alpha),
                                          TransformKind::hadamard, n,
                                          derive_stream_seed(seed, 1));
      SignalSpec<double> spec{n, prior, derive_stream_seed(seed, 0)};
      const auto x = generate_gb(spec);
      const auto y = op.forward(std::span<const double>(x));
      times.push_back(solve_seconds(op, prior, x, y, 200, 1e-6, nullptr));
    }
    std::sort(times.begin(), times.end());
    const double median = 0.5 * (times[4] + times[5]);
    if (p == 16) op_seconds_at_2_16 = median;
    log_n.push_back(std::log(static_cast<double>(n)));
    log_t.push_back(std::log(median));
  }

  // least-squares slope of log t against log N
  const auto k = static_cast<double>(log_n.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    sx += log_n[i];
    sy += log_t[i];
    sxx += log_n[i] * log_n[i];
    sxy += log_n[i] * log_t[i];
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  c.require(slope <= 1.3, "operator scaling slope " + fmt(slope));

  // dense path at N = 2^16 on the same protocol
  const std::size_t n = std::size_t{1} << 16;
  const auto m = static_cast<std::size_t>(
      std::llround(alpha * static_cast<double>(n)));
  double dense_seconds = 0.0;
  int dense_iters = 0;
  try {
    const std::uint64_t seed = derive_stream_seed(3100, 0);
    DenseIidOperator op(m, n, derive_stream_seed(seed, 1),
                        std::size_t{1} << 31, default_threads());
    SignalSpec<double> spec{n, prior, derive_stream_seed(seed, 0)};
    const auto x = generate_gb(spec);
    const auto y = op.forward(std::span<const double>(x));
    dense_seconds = solve_seconds(op, prior, x, y, 60, 1e-6, &dense_iters);
  } catch (const std::bad_alloc&) {
    c.require(false, "dense 2^16 matrix did not fit in memory");
    return c;
  }
  const double ratio = dense_seconds / op_seconds_at_2_16;
  c.require(ratio >= 5.0, "operator only " + fmt(ratio) + "x faster");
  c.note("slope " + fmt(slope) + ", operator " + fmt(op_seconds_at_2_16) +
         " s vs dense " + fmt(dense_seconds) + " s (" + fmt(ratio) +
         "x, dense iters " + std::to_string(dense_iters) + ")");
  return c;
}

// ---------------------------------------------------------------------------
// 8. Codes round trip at alpha = 1, Delta = 0, plus the capacity value.
// ---------------------------------------------------------------------------

Criterion criterion_code_roundtrip() {
  Criterion c;
  c.require(capacity(15.0) == 2.0, "capacity(15) != 2.0 exactly");

  CodeParams params{64, 16, rate_of(16, 1.0),
                    std::numeric_limits<double>::infinity()};
  const auto op = build_code_operator(params, CouplingEnsemble::full(1.0), 5);
  int exact = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const auto message =
        random_message(params.sections, params.section_size, 4000 + trial);
    const auto x = section_encode(message, params.section_size);
    const auto word = transmit(x, op, 0.0, trial);
    const auto result =
        decode(word.y_noisy, op, params, code_amp_config(), &message);
    exact += result.ser == 0.0 ? 1 : 0;
  }
  c.require(exact == 100,
            "only " + std::to_string(exact) + "/100 exact recoveries");
  c.note(std::to_string(exact) + "/100 messages recovered exactly");
  return c;
}

// ---------------------------------------------------------------------------
// 9. Spatial-coupling gain for superposition codes at snr = 100, B = 256,
//    L = 2^10: highest rate with >= 90% block success, coupled vs full on
//    identical seeds. Under 30 min.
// ---------------------------------------------------------------------------

Criterion criterion_code_gain() {
  Criterion c;
  CodeParams base{std::size_t{1} << 10, 256, 1.0, 100.0};
  const std::vector<double> rates{1.0, 1.3, 1.6, 1.9, 2.2};
  const std::size_t instances = 50;
  const std::uint64_t sweep_seed = 424242;
  const auto config = code_amp_config();
  const unsigned threads = default_threads();

  const auto coupled_ensemble = make_ensemble(16, 17, 2, 0.4, 1.0, 1.8);
  const auto coupled = sweep_rates(base, rates, coupled_ensemble, instances,
                                   sweep_seed, config, threads);
  const auto full = sweep_rates(base, rates, CouplingEnsemble::full(1.0),
                                instances, sweep_seed, config, threads);

  const auto best_rate = [&](const std::vector<RatePoint>& table) {
    double best = 0.0;
    for (const auto& point : table) {
      if (1.0 - point.block_error_rate >= 0.9) {
        best = std::max(best, point.rate);
      }
    }
    return best;
  };
  const double best_coupled = best_rate(coupled);
  const double best_full = best_rate(full);
  c.require(best_coupled > best_full,
            "coupled best rate " + fmt(best_coupled) + " not above full " +
                fmt(best_full));
  std::ostringstream grid;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    grid << (i > 0 ? " " : "") << rates[i] << ":"
         << fmt(1.0 - coupled[i].block_error_rate) << "/"
         << fmt(1.0 - full[i].block_error_rate);
  }
  c.note("success coupled/full per rate: " + grid.str() + "; best " +
         fmt(best_coupled) + " vs " + fmt(best_full));
  return c;
}

// ---------------------------------------------------------------------------
// 10. Reproducibility: rerunning every command with the same config gives
//     bitwise-identical output files (timing recording disabled).
// ---------------------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Criterion criterion_reproducibility() {
  Criterion c;
  namespace fs = std::filesystem;
  const auto base = fs::temp_directory_path() / "ampkit_acceptance_repro";
  fs::remove_all(base);

  const std::map<std::string, std::string> configs{
      {"cs-run",
       R"({"schema":"ampkit-config/1","experiment":"cs-run","record_timing":false,
           "seeds":[1,2],"signal":{"n":512,"rho":0.1},
           "operator":{"ensemble":{"alpha":0.5}},"amp":{"t_max":60}})"},
      {"cs-phase",
       R"({"schema":"ampkit-config/1","experiment":"cs-phase","record_timing":false,
           "seeds":[1,2,3],"signal":{"n":1024},
           "phase":{"rho_grid":[0.1],"alpha_grid":[0.3,0.6]},"amp":{"t_max":80}})"},
      {"se-phase",
       R"({"schema":"ampkit-config/1","experiment":"se-phase","record_timing":false,
           "phase":{"rho_grid":[0.1,0.2],"alpha_grid":[0.2,0.4]}})"},
      {"bench",
       R"({"schema":"ampkit-config/1","experiment":"bench","record_timing":false,
           "bench":{"operator_sizes":[4096],"dense_sizes":[4096],
                    "instances":2,"dense_instances":1},"amp":{"t_max":60}})"},
      {"code-run",
       R"({"schema":"ampkit-config/1","experiment":"code-run","record_timing":false,
           "seeds":[5,6],"code":{"sections":64,"b":16,"rate":0.5,"snr":100.0,"coupled":false}})"},
      {"code-sweep",
       R"({"schema":"ampkit-config/1","experiment":"code-sweep","record_timing":false,
           "code":{"sections":32,"b":16,"rates":[0.5],"instances":3,"snr":100.0,"coupled":false}})"}};

  for (const auto& [name, text] : configs) {
    auto config = ExperimentConfig::from_json_text(text);
    config.out_dir = (base / name).string();
    const auto first = run_experiment(config);
    std::map<std::string, std::string> contents;
    for (const auto& file : first.files) contents[file] = read_file(file);
    const auto second = run_experiment(config);
    c.require(first.files == second.files, name + ": file lists differ");
    for (const auto& file : second.files) {
      if (read_file(file) != contents[file]) {
        c.require(false, name + ": " + fs::path(file).filename().string() +
                             " changed between runs");
      }
    }
  }
  c.note("all six commands reproduced bitwise");
  return c;
}

struct Entry {
  int id;
  const char* name;
  Criterion (*run)();
  double limit_seconds;  // 0: no stated limit
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Entry> entries{
      {1, "operator correctness vs dense materialization", criterion_operators,
       10.0},
      {2, "denoiser oracle agreement", criterion_denoisers, 60.0},
      {3, "state-evolution consistency", criterion_se, 0.0},
      {4, "AMP tracks SE on dense i.i.d. matrices", criterion_amp_vs_se,
       300.0},
      {5, "full-operator recovery at N=2^16", criterion_full_recovery, 300.0},
      {6, "spatial-coupling reconstruction wave", criterion_coupled_wave,
       600.0},
      {7, "operator-vs-dense performance scaling", criterion_scaling, 0.0},
      {8, "code round trip and capacity", criterion_code_roundtrip, 0.0},
      {9, "coupled-code rate gain", criterion_code_gain, 1800.0},
      {10, "bitwise reproducibility of commands", criterion_reproducibility,
       0.0},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  bool all_pass = true;
  for (const auto& entry : entries) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), entry.id) ==
            selected.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Criterion result;
    try {
      result = entry.run();
    } catch (const std::exception& e) {
      result.pass = false;
      result.note(std::string("exception: ") + e.what());
    }
    const double seconds = now_seconds(start);
    if (entry.limit_seconds > 0.0 && seconds >= entry.limit_seconds) {
      result.pass = false;
      result.note("runtime " + fmt(seconds) + " s exceeded the " +
                  fmt(entry.limit_seconds) + " s budget");
    }
    all_pass = all_pass && result.pass;
    std::cout << (result.pass ? "[PASS]" : "[FAIL]") << " criterion "
              << entry.id << ": " << entry.name << " (" << fmt(seconds)
              << " s)";
    const std::string detail = result.detail.str();
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << std::endl;
  }
  return all_pass ? 0 : 1;
}
