#include "ampkit/sparc.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "ampkit/errors.hpp"
#include "ampkit/parallel.hpp"
#include "ampkit/rng.hpp"

namespace ampkit {

namespace {

std::size_t log2_exact(std::size_t b) {
  return static_cast<std::size_t>(std::countr_zero(b));
}

}  // namespace

void CodeParams::validate() const {
  if (sections < 1) throw ConstructionError("code: need at least one section");
  if (section_size < 2 || !is_power_of_two(section_size)) {
    throw ConstructionError("code: section size must be a power of 2, >= 2");
  }
  if (!(rate > 0.0)) throw ConstructionError("code: rate must be > 0");
  if (!(snr > 0.0)) throw ConstructionError("code: snr must be > 0");
  if (channel_uses() < 1 || channel_uses() > signal_length()) {
    throw ConstructionError("code: rate " + std::to_string(rate) +
                            " gives M outside [1, N]");
  }
}

std::size_t CodeParams::info_bits() const {
  return sections * log2_exact(section_size);
}

std::size_t CodeParams::channel_uses() const {
  return static_cast<std::size_t>(
      std::llround(static_cast<double>(info_bits()) / rate));
}

double CodeParams::alpha() const {
  return static_cast<double>(channel_uses()) /
         static_cast<double>(signal_length());
}

double capacity(double snr) {
  if (!(snr > 0.0)) throw DomainError("capacity: snr must be > 0");
  return 0.5 * std::log2(1.0 + snr);
}

double rate_of(std::size_t section_size, double alpha) {
  if (section_size < 2 || !is_power_of_two(section_size)) {
    throw DomainError("rate_of: section size must be a power of 2, >= 2");
  }
  if (!(alpha > 0.0)) throw DomainError("rate_of: alpha must be > 0");
  return static_cast<double>(log2_exact(section_size)) /
         (alpha * static_cast<double>(section_size));
}

Message random_message(std::size_t sections, std::size_t section_size,
                       std::uint64_t seed) {
  Rng rng(seed);
  Message message;
  message.symbols.resize(sections);
  for (auto& s : message.symbols) {
    s = static_cast<std::uint32_t>(rng.uniform_below(section_size)) + 1;
  }
  return message;
}

Message message_from_bits(std::span<const std::uint8_t> bytes,
                          std::size_t sections, std::size_t section_size) {
  const std::size_t bits_per_symbol = log2_exact(section_size);
  const std::size_t needed = sections * bits_per_symbol;
  if (bytes.size() * 8 < needed) {
    throw SizeError("message_from_bits: need " + std::to_string(needed) +
                    " bits, got " + std::to_string(bytes.size() * 8));
  }
  Message message;
  message.symbols.resize(sections);
  std::size_t bit = 0;
  for (std::size_t l = 0; l < sections; ++l) {
    std::uint32_t value = 0;
    for (std::size_t k = 0; k < bits_per_symbol; ++k, ++bit) {
      const std::uint8_t byte = bytes[bit / 8];
      const int shift = 7 - static_cast<int>(bit % 8);  // MSB first
      value = (value << 1) | ((byte >> shift) & 1u);
    }
    message.symbols[l] = value + 1;
  }
  return message;
}

std::vector<std::uint8_t> bits_from_message(const Message& message,
                                            std::size_t section_size) {
  const std::size_t bits_per_symbol = log2_exact(section_size);
  const std::size_t total_bits = message.symbols.size() * bits_per_symbol;
  std::vector<std::uint8_t> bytes((total_bits + 7) / 8, 0);
  std::size_t bit = 0;
  for (const std::uint32_t symbol : message.symbols) {
    const std::uint32_t value = symbol - 1;
    for (std::size_t k = 0; k < bits_per_symbol; ++k, ++bit) {
      const std::uint32_t b =
          (value >> (bits_per_symbol - 1 - k)) & 1u;  // MSB first
      bytes[bit / 8] |= static_cast<std::uint8_t>(b << (7 - bit % 8));
    }
  }
  return bytes;
}

std::vector<double> section_encode(const Message& message,
                                   std::size_t section_size) {
  if (section_size < 2) {
    throw ConstructionError("section_encode: section size must be >= 2");
  }
  std::vector<double> x(message.symbols.size() * section_size, 0.0);
  for (std::size_t l = 0; l < message.symbols.size(); ++l) {
    const std::uint32_t symbol = message.symbols[l];
    if (symbol < 1 || symbol > section_size) {
      throw DomainError("section_encode: symbol " + std::to_string(symbol) +
                        " outside {1.." + std::to_string(section_size) + "}");
    }
    x[l * section_size + symbol - 1] = 1.0;
  }
  return x;
}

Message section_decide(std::span<const double> a, std::size_t sections,
                       std::size_t section_size) {
  if (a.size() != sections * section_size) {
    throw SizeError("section_decide: estimate length mismatch");
  }
  Message message;
  message.symbols.resize(sections);
  for (std::size_t l = 0; l < sections; ++l) {
    const auto section = a.subspan(l * section_size, section_size);
    std::size_t best = 0;
    for (std::size_t i = 1; i < section_size; ++i) {
      if (section[i] > section[best]) best = i;  // ties keep the lowest index
    }
    message.symbols[l] = static_cast<std::uint32_t>(best) + 1;
  }
  return message;
}

double section_error_rate(const Message& decoded, const Message& sent) {
  if (decoded.symbols.size() != sent.symbols.size() ||
      decoded.symbols.empty()) {
    throw SizeError("section_error_rate: message length mismatch");
  }
  std::size_t wrong = 0;
  for (std::size_t l = 0; l < decoded.symbols.size(); ++l) {
    wrong += decoded.symbols[l] != sent.symbols[l] ? 1 : 0;
  }
  return static_cast<double>(wrong) /
         static_cast<double>(decoded.symbols.size());
}

double code_power_gain(const CodeParams& params,
                       const CouplingEnsemble& ensemble) {
  params.validate();
  CouplingEnsemble e = ensemble;
  e.alpha = params.alpha();
  const RatePlan plan = derive_rates(e, params.signal_length());
  // E||y_clean||^2/M = gain^2 * L/(N L_c) * (sum_r M_r S_r)/M with
  // S_r = sum_c J_rc; solve for gain. Uncoupled this reduces to sqrt(B).
  double weighted = 0.0;
  for (std::uint32_t r = 0; r < e.block_rows; ++r) {
    double s_r = 0.0;
    for (std::uint32_t c = 0; c < e.block_cols; ++c) {
      s_r += e.block_variance(r, c);
    }
    weighted += static_cast<double>(plan.row_counts[r]) * s_r;
  }
  const double b = static_cast<double>(params.section_size);
  const double m = static_cast<double>(plan.total_rows);
  return std::sqrt(b * static_cast<double>(e.block_cols) * m / weighted);
}

RealOperator build_code_operator(const CodeParams& params,
                                 const CouplingEnsemble& ensemble,
                                 std::uint64_t seed,
                                 std::optional<double> power_scale) {
  params.validate();
  CouplingEnsemble e = ensemble;
  e.alpha = params.alpha();
  const double gain =
      power_scale ? *power_scale : code_power_gain(params, ensemble);
  return RealOperator::build(e, TransformKind::hadamard,
                             params.signal_length(), seed, gain);
}

Codeword transmit(std::span<const double> x, const RealOperator& op,
                  double delta, std::uint64_t noise_seed) {
  if (x.size() != op.cols()) {
    throw SizeError("transmit: signal length does not match the operator");
  }
  if (delta < 0.0) throw DomainError("transmit: delta must be >= 0");
  Codeword word;
  word.y_clean = op.forward(x);
  word.xi.assign(op.rows(), 0.0);
  if (delta > 0.0) {
    Rng rng(noise_seed);
    const double sigma = std::sqrt(delta);
    for (auto& value : word.xi) value = sigma * rng.gaussian();
  }
  word.y_noisy = word.y_clean;
  for (std::size_t mu = 0; mu < word.y_noisy.size(); ++mu) {
    word.y_noisy[mu] += word.xi[mu];
  }
  return word;
}

AmpConfig code_amp_config() {
  AmpConfig config;
  config.criterion = ConvergenceCriterion::mean_squared;
  config.epsilon = 1e-8;
  config.t_max = 3000;
  return config;
}

DecodeResult decode(std::span<const double> y, const RealOperator& op,
                    const CodeParams& params, const AmpConfig& config,
                    const Message* sent) {
  params.validate();
  if (op.cols() != params.signal_length() || y.size() != op.rows()) {
    throw SizeError("decode: dimensions do not match the code");
  }
  SectionPrior prior{params.sections, params.section_size};
  AmpConfig run_config = config;
  run_config.delta = params.noise_variance();

  std::vector<double> reference;
  if (sent != nullptr) {
    reference = section_encode(*sent, params.section_size);
  }
  auto amp = amp_run(y, op, prior, run_config,
                     std::span<const double>(reference));

  DecodeResult result;
  result.message =
      section_decide(amp.a, params.sections, params.section_size);
  result.trace = std::move(amp.trace);
  result.reason = amp.reason;
  result.iterations = amp.iterations;
  if (sent != nullptr) {
    result.ser = section_error_rate(result.message, *sent);
    result.block_error = result.ser > 0.0;
  }
  return result;
}

std::vector<RatePoint> sweep_rates(const CodeParams& base,
                                   std::span<const double> rates,
                                   const CouplingEnsemble& ensemble,
                                   std::size_t n_instances,
                                   std::uint64_t sweep_seed,
                                   const AmpConfig& config, unsigned threads) {
  if (rates.empty()) throw DomainError("sweep_rates: empty rate grid");
  if (n_instances == 0) throw DomainError("sweep_rates: zero instances");

  std::vector<RatePoint> table;
  table.reserve(rates.size());
  for (std::size_t rate_idx = 0; rate_idx < rates.size(); ++rate_idx) {
    CodeParams params = base;
    params.rate = rates[rate_idx];
    params.validate();

    struct InstanceOutcome {
      double ser = 0.0;
      bool block_error = false;
      int iterations = 0;
    };
    std::vector<InstanceOutcome> outcomes(n_instances);

    parallel_chunks(
        0, n_instances, threads,
        [&](std::size_t lo, std::size_t hi, unsigned) {
          for (std::size_t inst = lo; inst < hi; ++inst) {
            // Instance streams depend only on (sweep_seed, rate, instance),
            // so two sweeps on the same seed see identical draws.
            const std::uint64_t instance_seed = derive_stream_seed(
                sweep_seed, rate_idx * n_instances + inst);
            const auto message =
                random_message(params.sections, params.section_size,
                               derive_stream_seed(instance_seed, 0));
            const auto op = build_code_operator(
                params, ensemble, derive_stream_seed(instance_seed, 1));
            const auto x = section_encode(message, params.section_size);
            const auto word = transmit(x, op, params.noise_variance(),
                                       derive_stream_seed(instance_seed, 2));
            AmpConfig instance_config = config;
            instance_config.record_trace = false;
            const auto result =
                decode(word.y_noisy, op, params, instance_config, &message);
            outcomes[inst] = {result.ser, result.block_error,
                              result.iterations};
          }
        });

    RatePoint point;
    point.rate = params.rate;
    point.instances = n_instances;
    for (const auto& outcome : outcomes) {
      point.ser_mean += outcome.ser;
      point.block_error_rate += outcome.block_error ? 1.0 : 0.0;
      point.mean_iterations += static_cast<double>(outcome.iterations);
    }
    const auto count = static_cast<double>(n_instances);
    point.ser_mean /= count;
    point.block_error_rate /= count;
    point.mean_iterations /= count;
    table.push_back(point);
  }
  return table;
}

}  // namespace ampkit
