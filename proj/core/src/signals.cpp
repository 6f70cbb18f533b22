#include "ampkit/signals.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "ampkit/errors.hpp"
#include "ampkit/rng.hpp"

namespace ampkit {

template <class Scalar>
std::vector<Scalar> generate_gb(const SignalSpec<Scalar>& spec) {
  if (!(spec.prior.rho >= 0.0 && spec.prior.rho <= 1.0)) {
    throw DomainError("generate_gb: rho must lie in [0, 1]");
  }
  if (!(spec.prior.sigma2 > 0.0)) {
    throw DomainError("generate_gb: sigma2 must be > 0");
  }
  Rng rng(spec.seed);
  const double sigma = std::sqrt(spec.prior.sigma2);
  std::vector<Scalar> x(spec.n, Scalar{});
  for (auto& value : x) {
    if (rng.uniform() >= spec.prior.rho) continue;
    if constexpr (std::is_same_v<Scalar, cplx>) {
      const double re = spec.prior.xbar.real() + sigma * rng.gaussian();
      const double im = spec.prior.xbar.imag() + sigma * rng.gaussian();
      value = cplx(re, im);
    } else {
      value = spec.prior.xbar + sigma * rng.gaussian();
    }
  }
  return x;
}

template std::vector<double> generate_gb(const SignalSpec<double>&);
template std::vector<cplx> generate_gb(const SignalSpec<cplx>&);

namespace {

template <class Scalar>
double mse_impl(std::span<const Scalar> a, std::span<const Scalar> x) {
  if (a.size() != x.size() || a.empty()) {
    throw SizeError("mse: vectors must have equal nonzero length");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if constexpr (std::is_same_v<Scalar, cplx>) {
      acc += std::norm(a[i] - x[i]);
    } else {
      const double d = a[i] - x[i];
      acc += d * d;
    }
  }
  return acc / static_cast<double>(a.size());
}

template <class Scalar>
std::vector<double> blockwise_impl(std::span<const Scalar> a,
                                   std::span<const Scalar> x,
                                   std::size_t block_count) {
  if (block_count == 0 || a.size() % block_count != 0) {
    throw SizeError("blockwise_mse: length must be divisible by block count");
  }
  const std::size_t width = a.size() / block_count;
  std::vector<double> out(block_count);
  for (std::size_t b = 0; b < block_count; ++b) {
    out[b] = mse_impl<Scalar>(a.subspan(b * width, width),
                              x.subspan(b * width, width));
  }
  return out;
}

void write_signal_file(const std::string& path, const double* data,
                       std::size_t count_doubles, std::size_t n,
                       bool is_complex) {
  nlohmann::json header{{"format", "ampkit-signal/1"},
                        {"n", n},
                        {"complex", is_complex}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("save_signal: cannot open " + path);
  out << header.dump() << '\n';
  out.write(reinterpret_cast<const char*>(data),
            static_cast<std::streamsize>(count_doubles * sizeof(double)));
  if (!out) throw Error("save_signal: write failed for " + path);
}

nlohmann::json read_signal_header(std::ifstream& in, const std::string& path) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error("load_signal: missing header in " + path);
  }
  nlohmann::json header = nlohmann::json::parse(line);
  if (header.value("format", "") != "ampkit-signal/1") {
    throw Error("load_signal: unsupported format in " + path);
  }
  return header;
}

}  // namespace

double mse(std::span<const double> a, std::span<const double> x) {
  return mse_impl<double>(a, x);
}
double mse(std::span<const cplx> a, std::span<const cplx> x) {
  return mse_impl<cplx>(a, x);
}

std::vector<double> blockwise_mse(std::span<const double> a,
                                  std::span<const double> x,
                                  std::size_t block_count) {
  return blockwise_impl<double>(a, x, block_count);
}
std::vector<double> blockwise_mse(std::span<const cplx> a,
                                  std::span<const cplx> x,
                                  std::size_t block_count) {
  return blockwise_impl<cplx>(a, x, block_count);
}

void save_signal(const std::string& path, std::span<const double> x) {
  write_signal_file(path, x.data(), x.size(), x.size(), false);
}

void save_signal(const std::string& path, std::span<const cplx> x) {
  static_assert(sizeof(cplx) == 2 * sizeof(double));
  write_signal_file(path, reinterpret_cast<const double*>(x.data()),
                    2 * x.size(), x.size(), true);
}

std::vector<double> load_signal_real(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("load_signal: cannot open " + path);
  nlohmann::json header = read_signal_header(in, path);
  if (header.value("complex", false)) {
    throw Error("load_signal: " + path + " holds a complex signal");
  }
  const auto n = header.at("n").get<std::size_t>();
  std::vector<double> x(n);
  in.read(reinterpret_cast<char*>(x.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (!in) throw Error("load_signal: truncated payload in " + path);
  return x;
}

std::vector<cplx> load_signal_complex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("load_signal: cannot open " + path);
  nlohmann::json header = read_signal_header(in, path);
  if (!header.value("complex", false)) {
    throw Error("load_signal: " + path + " holds a real signal");
  }
  const auto n = header.at("n").get<std::size_t>();
  std::vector<cplx> x(n);
  in.read(reinterpret_cast<char*>(x.data()),
          static_cast<std::streamsize>(2 * n * sizeof(double)));
  if (!in) throw Error("load_signal: truncated payload in " + path);
  return x;
}

}  // namespace ampkit
