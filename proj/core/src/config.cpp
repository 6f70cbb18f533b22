#include "ampkit/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ampkit/errors.hpp"
#include "ampkit/parallel.hpp"

namespace ampkit {

using nlohmann::json;

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::cs_run: return "cs-run";
    case ExperimentKind::cs_phase: return "cs-phase";
    case ExperimentKind::se_phase: return "se-phase";
    case ExperimentKind::bench: return "bench";
    case ExperimentKind::code_run: return "code-run";
    case ExperimentKind::code_sweep: return "code-sweep";
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  if (name == "cs-run") return ExperimentKind::cs_run;
  if (name == "cs-phase") return ExperimentKind::cs_phase;
  if (name == "se-phase") return ExperimentKind::se_phase;
  if (name == "bench") return ExperimentKind::bench;
  if (name == "code-run") return ExperimentKind::code_run;
  if (name == "code-sweep") return ExperimentKind::code_sweep;
  throw ConfigError("unknown experiment kind: " + name);
}

AmpConfig AmpSection::to_amp_config(bool record_timing) const {
  AmpConfig config;
  config.epsilon = epsilon;
  config.t_max = t_max;
  config.delta = delta;
  config.damping = damping;
  config.variance_floor = variance_floor;
  if (criterion == "max") {
    config.criterion = ConvergenceCriterion::max_squared;
  } else if (criterion == "mean") {
    config.criterion = ConvergenceCriterion::mean_squared;
  } else {
    throw ConfigError("amp.criterion must be \"max\" or \"mean\"");
  }
  config.record_timing = record_timing;
  return config;
}

unsigned ExperimentConfig::resolved_threads() const {
  return threads == 0 ? default_threads() : threads;
}

namespace {

// Desk scale keeps every experiment laptop-sized; paper scale restores the
// published protocol sizes.
void apply_scale_defaults(ExperimentConfig& config) {
  const bool paper = config.scale == "paper";
  switch (config.experiment) {
    case ExperimentKind::cs_run:
      config.signal.n = paper ? (std::size_t{1} << 20) : (std::size_t{1} << 16);
      config.amp.t_max = 2000;
      break;
    case ExperimentKind::cs_phase: {
      config.signal.n = paper ? (std::size_t{1} << 18) : (std::size_t{1} << 14);
      config.amp.t_max = 400;
      const auto grid = [](double lo, double hi, int steps) {
        std::vector<double> g;
        for (int i = 0; i < steps; ++i) {
          g.push_back(lo + (hi - lo) * i / (steps - 1));
        }
        return g;
      };
      config.phase.rho_grid = grid(0.05, 0.25, paper ? 9 : 3);
      config.phase.alpha_grid = grid(0.05, 0.6, paper ? 23 : 8);
      break;
    }
    case ExperimentKind::se_phase:
      config.phase.rho_grid = {0.05, 0.1, 0.15, 0.2, 0.25};
      config.phase.alpha_grid = [] {
        std::vector<double> g;
        for (int i = 1; i <= 60; ++i) g.push_back(i / 100.0);
        return g;
      }();
      break;
    case ExperimentKind::bench:
      config.bench.operator_sizes.clear();
      for (std::size_t p = 12; p <= (paper ? 20u : 17u); ++p) {
        config.bench.operator_sizes.push_back(std::size_t{1} << p);
      }
      config.bench.dense_sizes.clear();
      for (std::size_t p = 12; p <= 16u; ++p) {
        config.bench.dense_sizes.push_back(std::size_t{1} << p);
      }
      config.bench.instances = 10;
      config.bench.dense_instances = 3;
      config.amp.t_max = 200;
      break;
    case ExperimentKind::code_run:
      config.code.sections = paper ? (std::size_t{1} << 13) : (std::size_t{1} << 10);
      config.amp = AmpSection{};
      config.amp.criterion = "mean";
      config.amp.epsilon = 1e-8;
      config.amp.t_max = 3000;
      break;
    case ExperimentKind::code_sweep:
      config.code.sections = paper ? (std::size_t{1} << 13) : (std::size_t{1} << 10);
      config.code.instances = paper ? 10000 : 50;
      config.code.rates = {1.0, 1.2, 1.4, 1.6, 1.8, 2.0};
      config.amp = AmpSection{};
      config.amp.criterion = "mean";
      config.amp.epsilon = 1e-8;
      config.amp.t_max = 3000;
      break;
  }
}

void reject_unknown(const json& j, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw ConfigError("unknown field \"" + key + "\" in " + where);
    }
  }
}

template <class T>
void read_field(const json& j, const char* key, T& into) {
  if (!j.contains(key)) return;
  try {
    into = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field \"") + key + "\": " + e.what());
  }
}

void parse_signal(const json& j, SignalConfig& signal) {
  reject_unknown(j, {"n", "rho", "sigma2", "xbar_re", "xbar_im", "complex"},
                 "signal");
  read_field(j, "n", signal.n);
  read_field(j, "rho", signal.rho);
  read_field(j, "sigma2", signal.sigma2);
  read_field(j, "xbar_re", signal.xbar_re);
  read_field(j, "xbar_im", signal.xbar_im);
  read_field(j, "complex", signal.complex_signal);
}

void parse_ensemble(const json& j, CouplingEnsemble& ensemble) {
  reject_unknown(j, {"l_c", "l_r", "w", "sqrt_j", "alpha", "beta_seed"},
                 "operator.ensemble");
  read_field(j, "l_c", ensemble.block_cols);
  read_field(j, "l_r", ensemble.block_rows);
  read_field(j, "w", ensemble.window);
  read_field(j, "sqrt_j", ensemble.sqrt_j);
  read_field(j, "alpha", ensemble.alpha);
  read_field(j, "beta_seed", ensemble.beta_seed);
}

void parse_operator(const json& j, OperatorConfig& op) {
  reject_unknown(j, {"type", "kind", "ensemble", "gain", "dense_limit"},
                 "operator");
  read_field(j, "type", op.type);
  if (op.type != "structured" && op.type != "dense-iid") {
    throw ConfigError("operator.type must be \"structured\" or \"dense-iid\"");
  }
  if (j.contains("kind")) {
    const auto name = j.at("kind").get<std::string>();
    if (name == "hadamard") {
      op.kind = TransformKind::hadamard;
    } else if (name == "fourier") {
      op.kind = TransformKind::fourier;
    } else {
      throw ConfigError("operator.kind must be \"hadamard\" or \"fourier\"");
    }
  }
  if (j.contains("ensemble")) parse_ensemble(j.at("ensemble"), op.ensemble);
  read_field(j, "gain", op.gain);
  read_field(j, "dense_limit", op.dense_limit);
}

void parse_amp(const json& j, AmpSection& amp) {
  reject_unknown(j, {"epsilon", "t_max", "delta", "damping", "variance_floor",
                     "criterion"},
                 "amp");
  read_field(j, "epsilon", amp.epsilon);
  read_field(j, "t_max", amp.t_max);
  read_field(j, "delta", amp.delta);
  read_field(j, "damping", amp.damping);
  read_field(j, "variance_floor", amp.variance_floor);
  read_field(j, "criterion", amp.criterion);
  if (amp.criterion != "max" && amp.criterion != "mean") {
    throw ConfigError("amp.criterion must be \"max\" or \"mean\"");
  }
  if (!(amp.epsilon > 0.0)) throw ConfigError("amp.epsilon must be > 0");
  if (amp.t_max < 1) throw ConfigError("amp.t_max must be >= 1");
}

void parse_se(const json& j, SeOptions& se) {
  reject_unknown(j, {"quad_nodes", "mc_samples", "mc_seed"}, "se");
  read_field(j, "quad_nodes", se.quad_nodes);
  read_field(j, "mc_samples", se.mc_samples);
  read_field(j, "mc_seed", se.mc_seed);
}

void parse_phase(const json& j, PhaseSection& phase) {
  reject_unknown(j, {"rho_grid", "alpha_grid", "success_mse"}, "phase");
  read_field(j, "rho_grid", phase.rho_grid);
  read_field(j, "alpha_grid", phase.alpha_grid);
  read_field(j, "success_mse", phase.success_mse);
}

void parse_bench(const json& j, BenchSection& bench) {
  reject_unknown(j,
                 {"operator_sizes", "dense_sizes", "instances",
                  "dense_instances", "rho", "alpha", "target_mse",
                  "dense_limit"},
                 "bench");
  read_field(j, "operator_sizes", bench.operator_sizes);
  read_field(j, "dense_sizes", bench.dense_sizes);
  read_field(j, "instances", bench.instances);
  read_field(j, "dense_instances", bench.dense_instances);
  read_field(j, "rho", bench.rho);
  read_field(j, "alpha", bench.alpha);
  read_field(j, "target_mse", bench.target_mse);
  read_field(j, "dense_limit", bench.dense_limit);
}

void parse_code(const json& j, CodeSection& code) {
  reject_unknown(j,
                 {"sections", "b", "rate", "snr", "rates", "instances",
                  "power_scale", "coupled", "payload_in", "payload_out"},
                 "code");
  read_field(j, "sections", code.sections);
  read_field(j, "b", code.b);
  read_field(j, "rate", code.rate);
  read_field(j, "snr", code.snr);
  read_field(j, "rates", code.rates);
  read_field(j, "instances", code.instances);
  if (j.contains("power_scale") && !j.at("power_scale").is_null()) {
    code.power_scale = j.at("power_scale").get<double>();
  }
  read_field(j, "coupled", code.coupled);
  read_field(j, "payload_in", code.payload_in);
  read_field(j, "payload_out", code.payload_out);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"schema", "experiment", "scale", "seeds", "threads", "out",
                  "record_timing", "signal", "operator", "amp", "se", "phase",
                  "bench", "code"},
                 "config");
  if (j.value("schema", "") != kSchema) {
    throw ConfigError(std::string("config schema must be \"") + kSchema +
                      "\"");
  }
  if (!j.contains("experiment")) {
    throw ConfigError("config requires an \"experiment\" field");
  }

  ExperimentConfig config;
  config.experiment =
      experiment_kind_from_string(j.at("experiment").get<std::string>());
  read_field(j, "scale", config.scale);
  if (config.scale != "desk" && config.scale != "paper") {
    throw ConfigError("scale must be \"desk\" or \"paper\"");
  }
  apply_scale_defaults(config);

  read_field(j, "seeds", config.seeds);
  if (config.seeds.empty()) throw ConfigError("seeds must be nonempty");
  read_field(j, "threads", config.threads);
  read_field(j, "out", config.out_dir);
  read_field(j, "record_timing", config.record_timing);
  if (j.contains("signal")) parse_signal(j.at("signal"), config.signal);
  if (j.contains("operator")) parse_operator(j.at("operator"), config.op);
  if (j.contains("amp")) parse_amp(j.at("amp"), config.amp);
  if (j.contains("se")) parse_se(j.at("se"), config.se);
  if (j.contains("phase")) parse_phase(j.at("phase"), config.phase);
  if (j.contains("bench")) parse_bench(j.at("bench"), config.bench);
  if (j.contains("code")) parse_code(j.at("code"), config.code);

  if (config.signal.complex_signal &&
      config.op.kind == TransformKind::hadamard &&
      config.op.type == "structured") {
    throw ConfigError("complex signals pair with Fourier operators only");
  }
  if (!config.signal.complex_signal &&
      config.op.kind == TransformKind::fourier) {
    throw ConfigError("real signals pair with Hadamard operators only");
  }
  if (config.op.type == "dense-iid" && config.signal.complex_signal) {
    throw ConfigError("the dense i.i.d. path supports real signals only");
  }
  return config;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

std::string ExperimentConfig::to_json_text() const {
  json j;
  j["schema"] = kSchema;
  j["experiment"] = to_string(experiment);
  j["scale"] = scale;
  j["seeds"] = seeds;
  j["threads"] = threads;
  j["out"] = out_dir;
  j["record_timing"] = record_timing;
  j["signal"] = {{"n", signal.n},
                 {"rho", signal.rho},
                 {"sigma2", signal.sigma2},
                 {"xbar_re", signal.xbar_re},
                 {"xbar_im", signal.xbar_im},
                 {"complex", signal.complex_signal}};
  j["operator"] = {
      {"type", op.type},
      {"kind", op.kind == TransformKind::hadamard ? "hadamard" : "fourier"},
      {"ensemble",
       {{"l_c", op.ensemble.block_cols},
        {"l_r", op.ensemble.block_rows},
        {"w", op.ensemble.window},
        {"sqrt_j", op.ensemble.sqrt_j},
        {"alpha", op.ensemble.alpha},
        {"beta_seed", op.ensemble.beta_seed}}},
      {"gain", op.gain},
      {"dense_limit", op.dense_limit}};
  j["amp"] = {{"epsilon", amp.epsilon},
              {"t_max", amp.t_max},
              {"delta", amp.delta},
              {"damping", amp.damping},
              {"variance_floor", amp.variance_floor},
              {"criterion", amp.criterion}};
  j["se"] = {{"quad_nodes", se.quad_nodes},
             {"mc_samples", se.mc_samples},
             {"mc_seed", se.mc_seed}};
  j["phase"] = {{"rho_grid", phase.rho_grid},
                {"alpha_grid", phase.alpha_grid},
                {"success_mse", phase.success_mse}};
  j["bench"] = {{"operator_sizes", bench.operator_sizes},
                {"dense_sizes", bench.dense_sizes},
                {"instances", bench.instances},
                {"dense_instances", bench.dense_instances},
                {"rho", bench.rho},
                {"alpha", bench.alpha},
                {"target_mse", bench.target_mse},
                {"dense_limit", bench.dense_limit}};
  json code_json = {{"sections", code.sections},
                    {"b", code.b},
                    {"rate", code.rate},
                    {"snr", code.snr},
                    {"rates", code.rates},
                    {"instances", code.instances},
                    {"coupled", code.coupled},
                    {"payload_in", code.payload_in},
                    {"payload_out", code.payload_out}};
  code_json["power_scale"] =
      code.power_scale ? json(*code.power_scale) : json(nullptr);
  j["code"] = code_json;
  return j.dump();
}

}  // namespace ampkit
