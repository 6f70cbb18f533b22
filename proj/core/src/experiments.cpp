#include "ampkit/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "ampkit/dense_operator.hpp"
#include "ampkit/denoisers.hpp"
#include "ampkit/parallel.hpp"
#include "ampkit/rng.hpp"
#include "ampkit/sparc.hpp"
#include "ampkit/state_evolution.hpp"
#include "ampkit/trace_io.hpp"

namespace ampkit {

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct OutputContext {
  fs::path dir;
  std::string config_json;
  std::string seed_hash;
  std::vector<std::string> files;

  std::string path(const std::string& name) {
    files.push_back((dir / name).string());
    return files.back();
  }
};

OutputContext make_context(const ExperimentConfig& config) {
  OutputContext ctx;
  ctx.dir = config.out_dir;
  fs::create_directories(ctx.dir);
  ctx.config_json = config.to_json_text();
  ctx.seed_hash = seed_list_hash(config.seeds);
  return ctx;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

template <class Scalar>
GaussBernoulli<Scalar> make_prior(const SignalConfig& signal) {
  GaussBernoulli<Scalar> prior;
  prior.rho = signal.rho;
  prior.sigma2 = signal.sigma2;
  if constexpr (std::is_same_v<Scalar, cplx>) {
    prior.xbar = cplx(signal.xbar_re, signal.xbar_im);
  } else {
    prior.xbar = signal.xbar_re;
  }
  return prior;
}

template <class Scalar>
void add_channel_noise(std::vector<Scalar>& y, double delta,
                       std::uint64_t seed) {
  if (delta <= 0.0) return;
  Rng rng(seed);
  const double sigma = std::sqrt(delta);
  for (auto& value : y) {
    if constexpr (std::is_same_v<Scalar, cplx>) {
      value += cplx(sigma * rng.gaussian(), sigma * rng.gaussian());
    } else {
      value += sigma * rng.gaussian();
    }
  }
}

struct CsInstanceResult {
  Trace trace;
  double final_mse = 0.0;
  int iterations = 0;
  StopReason reason = StopReason::max_iterations;
};

// One CS reconstruction: draw the signal, measure, add noise, run AMP.
// Sub-streams of `seed`: 0 signal, 1 operator, 2 noise.
template <class Scalar, class Op>
CsInstanceResult run_cs_instance(const Op& op,
                                 const GaussBernoulli<Scalar>& prior,
                                 std::size_t n, std::uint64_t seed,
                                 const AmpConfig& amp_config,
                                 bool keep_trace) {
  SignalSpec<Scalar> spec{n, prior, derive_stream_seed(seed, 0)};
  const auto x = generate_gb(spec);
  auto y = op.forward(std::span<const Scalar>(x));
  add_channel_noise(y, amp_config.delta, derive_stream_seed(seed, 2));

  AmpConfig run_config = amp_config;
  run_config.record_trace = keep_trace;
  auto amp = amp_run(std::span<const Scalar>(y), op, prior, run_config,
                     std::span<const Scalar>(x));
  CsInstanceResult result;
  result.final_mse = mse(std::span<const Scalar>(amp.a),
                         std::span<const Scalar>(x));
  result.iterations = amp.iterations;
  result.reason = amp.reason;
  result.trace = std::move(amp.trace);
  return result;
}

bool is_full_grid(const CouplingEnsemble& e) {
  return e.block_rows == 1 && e.block_cols == 1;
}

// SE trajectory matching a cs-run configuration, one row per iteration.
template <class Scalar>
std::vector<std::vector<double>> se_trajectory(const ExperimentConfig& config,
                                               const CouplingEnsemble& ensemble,
                                               bool scalar_se, int steps) {
  const auto prior = make_prior<Scalar>(config.signal);
  std::vector<std::vector<double>> rows;
  if (scalar_se) {
    double e = prior.init_variance();
    for (int t = 0; t < steps; ++t) {
      e = se_step_scalar(e, prior, config.amp.delta, ensemble.alpha,
                         config.se);
      rows.push_back({e});
    }
  } else {
    std::vector<double> e(ensemble.block_cols, prior.init_variance());
    for (int t = 0; t < steps; ++t) {
      e = se_step_coupled<GaussBernoulli<Scalar>>(e, prior, config.amp.delta,
                                                  ensemble, config.se);
      rows.push_back(e);
    }
  }
  return rows;
}

json trace_summary(const CsInstanceResult& result) {
  return json{{"final_mse", result.final_mse},
              {"iterations", result.iterations},
              {"reason", to_string(result.reason)}};
}

CommandResult finish(OutputContext& ctx, json summary) {
  summary["seed_hash"] = ctx.seed_hash;
  summary["config"] = json::parse(ctx.config_json);
  CommandResult result;
  result.summary_json = summary.dump(2) + "\n";
  const std::string path = ctx.path("summary.json");
  write_text_file(path, result.summary_json);
  result.files = ctx.files;
  return result;
}

template <class Scalar>
CommandResult cs_run_impl(const ExperimentConfig& config) {
  auto ctx = make_context(config);
  const auto prior = make_prior<Scalar>(config.signal);
  const AmpConfig amp_config = config.amp.to_amp_config(config.record_timing);
  const std::size_t n = config.signal.n;

  const bool dense = config.op.type == "dense-iid";
  const bool scalar_se = dense || is_full_grid(config.op.ensemble);
  CouplingEnsemble ensemble = config.op.ensemble;

  json per_seed = json::array();
  int longest = 1;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t k = 0; k < config.seeds.size(); ++k) {
    const std::uint64_t seed = config.seeds[k];
    CsInstanceResult result;
    if (dense) {
      if constexpr (std::is_same_v<Scalar, double>) {
        const auto m = static_cast<std::size_t>(
            std::llround(ensemble.alpha * static_cast<double>(n)));
        DenseIidOperator op(m, n, derive_stream_seed(seed, 1),
                            config.op.dense_limit,
                            config.resolved_threads());
        result = run_cs_instance(op, prior, n, seed, amp_config, true);
      } else {
        throw ConfigError("dense-iid runs are real-valued");
      }
    } else {
      using Op = StructuredOperator<Scalar>;
      const auto op = Op::build(ensemble, config.op.kind, n,
                                derive_stream_seed(seed, 1), config.op.gain);
      result = run_cs_instance(op, prior, n, seed, amp_config, true);
    }
    longest = std::max(longest, result.iterations);
    const std::size_t blocks = dense ? 1 : ensemble.block_cols;
    write_trace_csv(ctx.path("trace_seed" + std::to_string(seed) + ".csv"),
                    result.trace, blocks, ctx.config_json, ctx.seed_hash);
    json row = trace_summary(result);
    row["seed"] = seed;
    per_seed.push_back(row);
  }

  // Matching SE prediction, same iteration span as the slowest seed.
  const auto se_rows =
      se_trajectory<Scalar>(config, ensemble, scalar_se, longest);
  const std::size_t blocks = scalar_se ? 1 : ensemble.block_cols;
  std::string header = "iteration,E";
  for (std::size_t b = 1; b <= blocks; ++b) header += ",E_p_" + std::to_string(b);
  std::string body = csv_prelude(ctx.config_json, ctx.seed_hash, header);
  for (std::size_t t = 0; t < se_rows.size(); ++t) {
    const auto& row = se_rows[t];
    double mean = 0.0;
    for (double e : row) mean += e;
    mean /= static_cast<double>(row.size());
    body += std::to_string(t + 1) + "," + format_double(mean);
    for (double e : row) body += "," + format_double(e);
    body += "\n";
  }
  write_text_file(ctx.path("se_trace.csv"), body);

  json summary{{"experiment", "cs-run"},
               {"runs", per_seed},
               {"wall_time_s",
                config.record_timing ? elapsed_seconds(start) : 0.0}};
  return finish(ctx, summary);
}

template <class Scalar>
CommandResult cs_phase_impl(const ExperimentConfig& config) {
  auto ctx = make_context(config);
  const AmpConfig amp_config = config.amp.to_amp_config(config.record_timing);
  const std::size_t n = config.signal.n;
  const auto& rhos = config.phase.rho_grid;
  const auto& alphas = config.phase.alpha_grid;
  if (rhos.empty() || alphas.empty()) {
    throw ConfigError("cs-phase requires nonempty rho and alpha grids");
  }

  struct Cell {
    bool feasible = true;
    std::size_t successes = 0;
    double mse_sum = 0.0;
    double iter_sum = 0.0;
  };
  const std::size_t seeds = config.seeds.size();
  std::vector<Cell> cells(rhos.size() * alphas.size());

  struct Task {
    std::size_t cell;
    double rho;
    double alpha;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      for (std::size_t k = 0; k < seeds; ++k) {
        tasks.push_back(Task{i * alphas.size() + j, rhos[i], alphas[j],
                             config.seeds[k]});
      }
    }
  }

  struct TaskResult {
    bool feasible = false;
    bool success = false;
    double final_mse = 0.0;
    int iterations = 0;
  };
  std::vector<TaskResult> results(tasks.size());
  const auto start = std::chrono::steady_clock::now();

  parallel_chunks(
      0, tasks.size(), config.resolved_threads(),
      [&](std::size_t lo, std::size_t hi, unsigned) {
        for (std::size_t idx = lo; idx < hi; ++idx) {
          const Task& task = tasks[idx];
          auto prior = make_prior<Scalar>(config.signal);
          prior.rho = task.rho;
          CouplingEnsemble ensemble = config.op.ensemble;
          ensemble.alpha = task.alpha;
          TaskResult& out = results[idx];
          try {
            CsInstanceResult run;
            if (config.op.type == "dense-iid") {
              if constexpr (std::is_same_v<Scalar, double>) {
                const auto m = static_cast<std::size_t>(std::llround(
                    task.alpha * static_cast<double>(n)));
                DenseIidOperator op(m, n, derive_stream_seed(task.seed, 1),
                                    config.op.dense_limit, 1);
                run = run_cs_instance(op, prior, n, task.seed, amp_config,
                                      false);
              } else {
                throw ConfigError("dense-iid runs are real-valued");
              }
            } else {
              using Op = StructuredOperator<Scalar>;
              const auto op =
                  Op::build(ensemble, config.op.kind, n,
                            derive_stream_seed(task.seed, 1), config.op.gain);
              run = run_cs_instance(op, prior, n, task.seed, amp_config,
                                    false);
            }
            out.feasible = true;
            out.success = run.final_mse < config.phase.success_mse;
            out.final_mse = run.final_mse;
            out.iterations = run.iterations;
          } catch (const ConstructionError&) {
            out.feasible = false;
          }
        }
      });

  for (std::size_t idx = 0; idx < tasks.size(); ++idx) {
    Cell& cell = cells[tasks[idx].cell];
    if (!results[idx].feasible) {
      cell.feasible = false;
      continue;
    }
    cell.successes += results[idx].success ? 1 : 0;
    cell.mse_sum += results[idx].final_mse;
    cell.iter_sum += results[idx].iterations;
  }

  std::string body = csv_prelude(
      ctx.config_json, ctx.seed_hash,
      "rho,alpha,feasible,seeds,successes,success_fraction,mean_final_mse,"
      "mean_iterations");
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      const Cell& cell = cells[i * alphas.size() + j];
      body += format_double(rhos[i]) + "," + format_double(alphas[j]);
      if (!cell.feasible) {
        body += ",0,0,0,,,\n";
        continue;
      }
      const double count = static_cast<double>(seeds);
      body += ",1," + std::to_string(seeds) + "," +
              std::to_string(cell.successes) + "," +
              format_double(static_cast<double>(cell.successes) / count) +
              "," + format_double(cell.mse_sum / count) + "," +
              format_double(cell.iter_sum / count) + "\n";
    }
  }
  write_text_file(ctx.path("phase.csv"), body);

  json summary{{"experiment", "cs-phase"},
               {"cells", rhos.size() * alphas.size()},
               {"seeds_per_cell", seeds},
               {"wall_time_s",
                config.record_timing ? elapsed_seconds(start) : 0.0}};
  return finish(ctx, summary);
}

CommandResult se_phase_impl(const ExperimentConfig& config) {
  auto ctx = make_context(config);
  const auto& rhos = config.phase.rho_grid;
  const auto& alphas = config.phase.alpha_grid;
  if (rhos.empty() || alphas.empty()) {
    throw ConfigError("se-phase requires nonempty rho and alpha grids");
  }
  struct Row {
    double e_star;
    bool converged;
    int iterations;
  };
  std::vector<Row> rows(rhos.size() * alphas.size());
  const auto start = std::chrono::steady_clock::now();
  parallel_chunks(0, rows.size(), config.resolved_threads(),
                  [&](std::size_t lo, std::size_t hi, unsigned) {
                    for (std::size_t idx = lo; idx < hi; ++idx) {
                      const double rho = rhos[idx / alphas.size()];
                      const double alpha = alphas[idx % alphas.size()];
                      SeFixedPoint fp;
                      if (config.signal.complex_signal) {
                        auto prior = make_prior<cplx>(config.signal);
                        prior.rho = rho;
                        fp = se_fixed_point(prior, config.amp.delta, alpha,
                                            -1.0, 1e-12, 10000, config.se);
                      } else {
                        auto prior = make_prior<double>(config.signal);
                        prior.rho = rho;
                        fp = se_fixed_point(prior, config.amp.delta, alpha,
                                            -1.0, 1e-12, 10000, config.se);
                      }
                      rows[idx] = Row{fp.e_star, fp.converged, fp.iterations};
                    }
                  });

  std::string body = csv_prelude(ctx.config_json, ctx.seed_hash,
                                 "rho,alpha,E_star,converged,iterations");
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    body += format_double(rhos[idx / alphas.size()]) + "," +
            format_double(alphas[idx % alphas.size()]) + "," +
            format_double(rows[idx].e_star) + "," +
            (rows[idx].converged ? "1" : "0") + "," +
            std::to_string(rows[idx].iterations) + "\n";
  }
  write_text_file(ctx.path("se_phase.csv"), body);

  json summary{{"experiment", "se-phase"},
               {"cells", rows.size()},
               {"wall_time_s",
                config.record_timing ? elapsed_seconds(start) : 0.0}};
  return finish(ctx, summary);
}

struct BenchPoint {
  double seconds = 0.0;
  int iterations = 0;
  double final_mse = 0.0;
};

// Fig. 5 protocol: iterate until the true MSE crosses the target. The timer
// covers only the solve loop, not operator construction.
template <class Op>
BenchPoint bench_solve(const Op& op, const GaussBernoulliReal& prior,
                       std::span<const double> x, std::span<const double> y,
                       const AmpConfig& config, double target_mse) {
  const auto start = std::chrono::steady_clock::now();
  auto state = amp_init(y, op, prior);
  BenchPoint point;
  for (int t = 0; t < config.t_max; ++t) {
    amp_iterate(state, y, op, prior, config);
    point.final_mse = mse(std::span<const double>(state.a), x);
    point.iterations = state.t;
    if (point.final_mse < target_mse) break;
  }
  point.seconds = elapsed_seconds(start);
  return point;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double stddev(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

CommandResult bench_impl(const ExperimentConfig& config) {
  auto ctx = make_context(config);
  GaussBernoulliReal prior{config.bench.rho, 0.0, 1.0};
  AmpConfig amp_config = config.amp.to_amp_config(config.record_timing);
  amp_config.delta = 0.0;
  amp_config.record_trace = false;
  const std::uint64_t master = config.seeds.front();
  const auto start = std::chrono::steady_clock::now();

  std::string body = csv_prelude(
      ctx.config_json, ctx.seed_hash,
      "path,n,instances,median_seconds,stddev_seconds,median_iterations,"
      "max_final_mse");
  json summary_rows = json::array();
  std::uint64_t counter = 0;

  const auto run_size = [&](const std::string& path_name, std::size_t n,
                            std::size_t instances, bool dense) {
    std::vector<double> seconds, iters;
    double worst_mse = 0.0;
    for (std::size_t i = 0; i < instances; ++i) {
      const std::uint64_t seed = derive_stream_seed(master, counter++);
      SignalSpec<double> spec{n, prior, derive_stream_seed(seed, 0)};
      const auto x = generate_gb(spec);
      BenchPoint point;
      if (dense) {
        const auto m = static_cast<std::size_t>(
            std::llround(config.bench.alpha * static_cast<double>(n)));
        DenseIidOperator op(m, n, derive_stream_seed(seed, 1),
                            config.bench.dense_limit,
                            config.resolved_threads());
        const auto y = op.forward(std::span<const double>(x));
        point = bench_solve(op, prior, x, y, amp_config,
                            config.bench.target_mse);
      } else {
        const auto op = RealOperator::build(
            CouplingEnsemble::full(config.bench.alpha),
            TransformKind::hadamard, n, derive_stream_seed(seed, 1));
        const auto y = op.forward(std::span<const double>(x));
        point = bench_solve(op, prior, x, y, amp_config,
                            config.bench.target_mse);
      }
      seconds.push_back(config.record_timing ? point.seconds : 0.0);
      iters.push_back(static_cast<double>(point.iterations));
      worst_mse = std::max(worst_mse, point.final_mse);
    }
    body += path_name + "," + std::to_string(n) + "," +
            std::to_string(instances) + "," + format_double(median(seconds)) +
            "," + format_double(stddev(seconds)) + "," +
            format_double(median(iters)) + "," + format_double(worst_mse) +
            "\n";
    summary_rows.push_back(json{{"path", path_name},
                                {"n", n},
                                {"median_seconds", median(seconds)},
                                {"median_iterations", median(iters)},
                                {"max_final_mse", worst_mse}});
  };

  for (std::size_t n : config.bench.operator_sizes) {
    run_size("operator", n, config.bench.instances, false);
  }
  for (std::size_t n : config.bench.dense_sizes) {
    run_size("dense", n, config.bench.dense_instances, true);
  }
  write_text_file(ctx.path("bench.csv"), body);

  json summary{{"experiment", "bench"},
               {"rows", summary_rows},
               {"wall_time_s",
                config.record_timing ? elapsed_seconds(start) : 0.0}};
  return finish(ctx, summary);
}

CouplingEnsemble code_ensemble(const ExperimentConfig& config) {
  if (config.code.coupled) return config.op.ensemble;
  return CouplingEnsemble::full(1.0);  // alpha is set by the code parameters
}

CommandResult code_run_impl(const ExperimentConfig& config) {
  auto ctx = make_context(config);
  CodeParams params{config.code.sections, config.code.b, config.code.rate,
                    config.code.snr};
  params.validate();
  const CouplingEnsemble ensemble = code_ensemble(config);
  AmpConfig amp_config = config.amp.to_amp_config(config.record_timing);
  amp_config.record_trace = false;
  const auto start = std::chrono::steady_clock::now();

  std::string body = csv_prelude(ctx.config_json, ctx.seed_hash,
                                 "seed,ser,block_error,iterations,reason");
  json rows = json::array();
  for (const std::uint64_t seed : config.seeds) {
    const auto message = random_message(params.sections, params.section_size,
                                        derive_stream_seed(seed, 0));
    const auto op = build_code_operator(params, ensemble,
                                        derive_stream_seed(seed, 1),
                                        config.code.power_scale);
    const auto x = section_encode(message, params.section_size);
    const auto word = transmit(x, op, params.noise_variance(),
                               derive_stream_seed(seed, 2));
    const auto result = decode(word.y_noisy, op, params, amp_config, &message);
    body += std::to_string(seed) + "," + format_double(result.ser) + "," +
            (result.block_error ? "1" : "0") + "," +
            std::to_string(result.iterations) + "," +
            to_string(result.reason) + "\n";
    rows.push_back(json{{"seed", seed},
                        {"ser", result.ser},
                        {"block_error", result.block_error},
                        {"iterations", result.iterations}});
  }
  write_text_file(ctx.path("code_run.csv"), body);

  json summary{{"experiment", "code-run"},
               {"rate", params.rate},
               {"alpha", params.alpha()},
               {"channel_uses", params.channel_uses()},
               {"capacity", capacity(params.snr)},
               {"runs", rows}};

  // Optional end-to-end payload demo: encode file bits, decode, write back.
  if (!config.code.payload_in.empty()) {
    std::ifstream in(config.code.payload_in, std::ios::binary);
    if (!in) throw ConfigError("cannot open payload " + config.code.payload_in);
    std::vector<std::uint8_t> payload(
        (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto message =
        message_from_bits(payload, params.sections, params.section_size);
    const auto op = build_code_operator(
        params, ensemble, derive_stream_seed(config.seeds.front(), 1),
        config.code.power_scale);
    const auto x = section_encode(message, params.section_size);
    const auto word = transmit(x, op, params.noise_variance(),
                               derive_stream_seed(config.seeds.front(), 2));
    const auto result = decode(word.y_noisy, op, params, amp_config, &message);
    summary["payload_ser"] = result.ser;
    if (!config.code.payload_out.empty()) {
      const auto bytes =
          bits_from_message(result.message, params.section_size);
      std::ofstream out(config.code.payload_out, std::ios::binary);
      out.write(reinterpret_cast<const char*>(bytes.data()),
                static_cast<std::streamsize>(bytes.size()));
      summary["payload_out"] = config.code.payload_out;
    }
  }

  summary["wall_time_s"] = config.record_timing ? elapsed_seconds(start) : 0.0;
  return finish(ctx, summary);
}

CommandResult code_sweep_impl(const ExperimentConfig& config) {
  auto ctx = make_context(config);
  if (config.code.rates.empty()) {
    throw ConfigError("code-sweep requires a nonempty code.rates grid");
  }
  CodeParams base{config.code.sections, config.code.b, config.code.rates[0],
                  config.code.snr};
  const CouplingEnsemble ensemble = code_ensemble(config);
  AmpConfig amp_config = config.amp.to_amp_config(config.record_timing);
  amp_config.record_trace = false;
  const auto start = std::chrono::steady_clock::now();

  const auto table =
      sweep_rates(base, config.code.rates, ensemble, config.code.instances,
                  config.seeds.front(), amp_config,
                  config.resolved_threads());

  std::string body = csv_prelude(
      ctx.config_json, ctx.seed_hash,
      "rate,alpha,channel_uses,instances,ser_mean,block_error_rate,"
      "mean_iterations");
  json rows = json::array();
  for (const RatePoint& point : table) {
    CodeParams params = base;
    params.rate = point.rate;
    body += format_double(point.rate) + "," + format_double(params.alpha()) +
            "," + std::to_string(params.channel_uses()) + "," +
            std::to_string(point.instances) + "," +
            format_double(point.ser_mean) + "," +
            format_double(point.block_error_rate) + "," +
            format_double(point.mean_iterations) + "\n";
    rows.push_back(json{{"rate", point.rate},
                        {"ser_mean", point.ser_mean},
                        {"block_error_rate", point.block_error_rate}});
  }
  write_text_file(ctx.path("code_sweep.csv"), body);

  json summary{{"experiment", "code-sweep"},
               {"capacity", capacity(base.snr)},
               {"rows", rows},
               {"wall_time_s",
                config.record_timing ? elapsed_seconds(start) : 0.0}};
  return finish(ctx, summary);
}

}  // namespace

CommandResult cmd_cs_run(const ExperimentConfig& config) {
  return config.signal.complex_signal ? cs_run_impl<cplx>(config)
                                      : cs_run_impl<double>(config);
}

CommandResult cmd_cs_phase(const ExperimentConfig& config) {
  return config.signal.complex_signal ? cs_phase_impl<cplx>(config)
                                      : cs_phase_impl<double>(config);
}

CommandResult cmd_se_phase(const ExperimentConfig& config) {
  return se_phase_impl(config);
}

CommandResult cmd_bench(const ExperimentConfig& config) {
  return bench_impl(config);
}

CommandResult cmd_code_run(const ExperimentConfig& config) {
  return code_run_impl(config);
}

CommandResult cmd_code_sweep(const ExperimentConfig& config) {
  return code_sweep_impl(config);
}

CommandResult run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case ExperimentKind::cs_run: return cmd_cs_run(config);
    case ExperimentKind::cs_phase: return cmd_cs_phase(config);
    case ExperimentKind::se_phase: return cmd_se_phase(config);
    case ExperimentKind::bench: return cmd_bench(config);
    case ExperimentKind::code_run: return cmd_code_run(config);
    case ExperimentKind::code_sweep: return cmd_code_sweep(config);
  }
  throw ConfigError("unhandled experiment kind");
}

}  // namespace ampkit
