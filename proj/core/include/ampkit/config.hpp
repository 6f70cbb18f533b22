#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ampkit/amp.hpp"
#include "ampkit/ensemble.hpp"
#include "ampkit/state_evolution.hpp"
#include "ampkit/xforms.hpp"

namespace ampkit {

/// Experiment families the CLI can run.
enum class ExperimentKind { cs_run, cs_phase, se_phase, bench, code_run,
                            code_sweep };

const char* to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

struct SignalConfig {
  std::size_t n = 1 << 16;
  double rho = 0.1;
  double sigma2 = 1.0;
  double xbar_re = 0.0;
  double xbar_im = 0.0;
  bool complex_signal = false;
};

struct OperatorConfig {
  std::string type = "structured";  // "structured" | "dense-iid"
  TransformKind kind = TransformKind::hadamard;
  CouplingEnsemble ensemble;        // carries alpha
  double gain = 1.0;
  std::size_t dense_limit = std::size_t{1} << 26;  // materialization cap
};

struct AmpSection {
  double epsilon = 1e-12;
  int t_max = 400;
  double delta = 0.0;
  double damping = 0.0;
  double variance_floor = 1e-17;
  std::string criterion = "max";  // "max" | "mean"

  AmpConfig to_amp_config(bool record_timing) const;
};

struct PhaseSection {
  std::vector<double> rho_grid;
  std::vector<double> alpha_grid;
  double success_mse = 1e-6;
};

struct BenchSection {
  std::vector<std::size_t> operator_sizes;
  std::vector<std::size_t> dense_sizes;
  std::size_t instances = 10;
  std::size_t dense_instances = 3;
  double rho = 0.1;
  double alpha = 0.35;
  double target_mse = 1e-6;
  std::size_t dense_limit = 1700000000;  // entries; above this, stream
};

struct CodeSection {
  std::size_t sections = 1 << 10;
  std::size_t b = 256;
  double rate = 1.0;
  double snr = 100.0;
  std::vector<double> rates;      // code-sweep grid
  std::size_t instances = 50;     // per rate
  std::optional<double> power_scale;
  bool coupled = true;            // false: full operator (1x1 ensemble)
  std::string payload_in;         // optional binary payload round trip
  std::string payload_out;
};

/// Parsed, schema-validated experiment description. Unknown JSON fields are
/// rejected at every level. Fields absent from the input take desk- or
/// paper-scale defaults; the serialized form always carries every resolved
/// field, so parse -> serialize -> parse is the identity.
struct ExperimentConfig {
  static constexpr const char* kSchema = "ampkit-config/1";

  ExperimentKind experiment = ExperimentKind::cs_run;
  std::string scale = "desk";  // "desk" | "paper"
  std::vector<std::uint64_t> seeds{1};
  unsigned threads = 0;  // 0: hardware default
  std::string out_dir = "out";
  bool record_timing = true;

  SignalConfig signal;
  OperatorConfig op;
  AmpSection amp;
  SeOptions se;
  PhaseSection phase;
  BenchSection bench;
  CodeSection code;

  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);
  std::string to_json_text() const;  // canonical: sorted keys, resolved fields

  unsigned resolved_threads() const;
};

}  // namespace ampkit
