#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ampkit/amp.hpp"
#include "ampkit/structured_operator.hpp"

namespace ampkit {

/// Sparse superposition code over the AWGN channel: L sections of size B,
/// one unit entry per section, rate R information bits per channel use.
/// Derived quantities follow M = L log2(B) / R and alpha = log2(B)/(R B).
struct CodeParams {
  std::size_t sections = 0;      // L
  std::size_t section_size = 0;  // B, a power of 2
  double rate = 0.0;             // R
  double snr = 1.0;

  std::size_t signal_length() const { return sections * section_size; }   // N
  std::size_t info_bits() const;                                          // K
  std::size_t channel_uses() const;          // M = round(L log2(B) / R)
  double alpha() const;                      // M/N after rounding
  double noise_variance() const { return 1.0 / snr; }

  void validate() const;
};

/// Shannon capacity of the power-constrained AWGN channel.
double capacity(double snr);

/// Rate from section size and measurement rate: R = log2(B)/(alpha B).
double rate_of(std::size_t section_size, double alpha);

/// Message symbols, one per section, each in {1..B}.
struct Message {
  std::vector<std::uint32_t> symbols;
};

/// Uniformly random message.
Message random_message(std::size_t sections, std::size_t section_size,
                       std::uint64_t seed);

/// Packs a bitstream into symbols, log2(B) bits per symbol, MSB first.
/// Requires sections*log2(B) bits; excess bytes are ignored.
Message message_from_bits(std::span<const std::uint8_t> bytes,
                          std::size_t sections, std::size_t section_size);
std::vector<std::uint8_t> bits_from_message(const Message& message,
                                            std::size_t section_size);

/// One-hot expansion: section l carries a single 1 at position symbols[l].
/// Works for any section size >= 2 (power-of-2 is a CodeParams constraint,
/// not an encoding one).
std::vector<double> section_encode(const Message& message,
                                   std::size_t section_size);

/// Hard decision: per-section argmax of the estimate, lowest index on ties.
Message section_decide(std::span<const double> a, std::size_t sections,
                       std::size_t section_size);

/// Fraction of wrongly decoded sections.
double section_error_rate(const Message& decoded, const Message& sent);

/// Coding operator: a structured Hadamard operator with its gain set so that
/// random codewords satisfy the unit per-symbol power constraint
/// E||y_clean||^2 / M = 1.
RealOperator build_code_operator(const CodeParams& params,
                                 const CouplingEnsemble& ensemble,
                                 std::uint64_t seed,
                                 std::optional<double> power_scale = {});

/// The power-normalizing gain used by build_code_operator.
double code_power_gain(const CodeParams& params,
                       const CouplingEnsemble& ensemble);

struct Codeword {
  std::vector<double> y_clean;
  std::vector<double> y_noisy;
  std::vector<double> xi;  // the noise draw
};

/// y_clean = F x; y_noisy adds i.i.d. Gaussian noise of variance delta.
Codeword transmit(std::span<const double> x, const RealOperator& op,
                  double delta, std::uint64_t noise_seed);

struct DecodeResult {
  Message message;
  double ser = 0.0;      // filled when the sent message is supplied
  bool block_error = false;
  Trace trace;
  StopReason reason = StopReason::max_iterations;
  int iterations = 0;
};

/// AMP decoding with the section denoiser; SER and block error are computed
/// against `sent` when given.
DecodeResult decode(std::span<const double> y, const RealOperator& op,
                    const CodeParams& params, const AmpConfig& config,
                    const Message* sent = nullptr);

/// Default AMP configuration for code experiments: mean-squared change
/// criterion at 1e-8, t_max 3000.
AmpConfig code_amp_config();

struct RatePoint {
  double rate = 0.0;
  std::size_t instances = 0;
  double ser_mean = 0.0;
  double block_error_rate = 0.0;
  double mean_iterations = 0.0;
};

/// Decodes n_instances random messages per rate on a shared seed list and
/// aggregates SER and block-error statistics. `ensemble` describes the
/// coupled grid; pass the trivial 1x1 ensemble for full operators (its alpha
/// field is overridden per rate). Instances run on `threads` workers;
/// aggregation order is fixed by instance index.
std::vector<RatePoint> sweep_rates(const CodeParams& base,
                                   std::span<const double> rates,
                                   const CouplingEnsemble& ensemble,
                                   std::size_t n_instances,
                                   std::uint64_t sweep_seed,
                                   const AmpConfig& config,
                                   unsigned threads = 1);

}  // namespace ampkit
