#include "ampkit/dense_operator.hpp"

#include <cmath>
#include <thread>

#include "ampkit/errors.hpp"
#include "ampkit/parallel.hpp"
#include "ampkit/rng.hpp"

namespace ampkit {

unsigned default_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

void parallel_chunks(
    std::size_t begin, std::size_t end, unsigned threads,
    const std::function<void(std::size_t, std::size_t, unsigned)>& fn) {
  const std::size_t count = end - begin;
  if (threads <= 1 || count <= 1) {
    fn(begin, end, 0);
    return;
  }
  if (threads > count) threads = static_cast<unsigned>(count);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = begin + t * chunk;
    const std::size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([&fn, &errors, lo, hi, t] {
      try {
        fn(lo, hi, t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

namespace {

void require_length(std::size_t got, std::size_t want, const char* who) {
  if (got != want) {
    throw SizeError(std::string(who) + ": expected length " +
                    std::to_string(want) + ", got " + std::to_string(got));
  }
}

}  // namespace

DenseIidOperator::DenseIidOperator(std::size_t m, std::size_t n,
                                   std::uint64_t seed,
                                   std::size_t materialize_limit,
                                   unsigned threads)
    : m_(m), n_(n), seed_(seed), threads_(threads == 0 ? 1 : threads) {
  if (m == 0 || n == 0) {
    throw ConstructionError("dense operator: m and n must be positive");
  }
  if (m * n <= materialize_limit) {
    matrix_.resize(m * n);
    parallel_chunks(0, m_, threads_,
                    [this](std::size_t lo, std::size_t hi, unsigned) {
                      std::vector<double> row(n_);
                      for (std::size_t r = lo; r < hi; ++r) {
                        fill_row(r, row);
                        float* dst = matrix_.data() + r * n_;
                        for (std::size_t c = 0; c < n_; ++c) {
                          dst[c] = static_cast<float>(row[c]);
                        }
                      }
                    });
  }
}

void DenseIidOperator::fill_row(std::size_t row,
                                std::span<double> buffer) const {
  Rng rng(derive_stream_seed(seed_, row));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  for (std::size_t c = 0; c < n_; ++c) buffer[c] = rng.gaussian() * scale;
}

double DenseIidOperator::entry(std::size_t r, std::size_t c) const {
  if (!matrix_.empty()) return static_cast<double>(matrix_[r * n_ + c]);
  std::vector<double> row(n_);
  fill_row(r, row);
  return row[c];
}

// Runs fn(row, row_values) over all rows on the configured thread count.
// Rows are disjoint, so any fn that only touches per-row state is safe.
template <class RowFn>
void DenseIidOperator::for_each_row(RowFn&& fn) const {
  if (!matrix_.empty()) {
    parallel_chunks(0, m_, threads_,
                    [&](std::size_t lo, std::size_t hi, unsigned tid) {
                      std::vector<double> row(n_);
                      for (std::size_t r = lo; r < hi; ++r) {
                        const float* src = matrix_.data() + r * n_;
                        for (std::size_t c = 0; c < n_; ++c) {
                          row[c] = static_cast<double>(src[c]);
                        }
                        fn(r, std::span<const double>(row), tid);
                      }
                    });
  } else {
    parallel_chunks(0, m_, threads_,
                    [&](std::size_t lo, std::size_t hi, unsigned tid) {
                      std::vector<double> row(n_);
                      for (std::size_t r = lo; r < hi; ++r) {
                        fill_row(r, row);
                        fn(r, std::span<const double>(row), tid);
                      }
                    });
  }
}

void DenseIidOperator::forward(std::span<const double> x,
                               std::span<double> out) const {
  require_length(x.size(), n_, "dense forward(x)");
  require_length(out.size(), m_, "dense forward(out)");
  for_each_row([&](std::size_t r, std::span<const double> row, unsigned) {
    double acc = 0.0;
    for (std::size_t c = 0; c < n_; ++c) acc += row[c] * x[c];
    out[r] = acc;
  });
}

void DenseIidOperator::sq_forward(std::span<const double> v,
                                  std::span<double> out) const {
  require_length(v.size(), n_, "dense sq_forward(v)");
  require_length(out.size(), m_, "dense sq_forward(out)");
  for_each_row([&](std::size_t r, std::span<const double> row, unsigned) {
    double acc = 0.0;
    for (std::size_t c = 0; c < n_; ++c) acc += row[c] * row[c] * v[c];
    out[r] = acc;
  });
}

void DenseIidOperator::adjoint(std::span<const double> f,
                               std::span<double> out) const {
  require_length(f.size(), m_, "dense adjoint(f)");
  require_length(out.size(), n_, "dense adjoint(out)");
  // Per-thread accumulators, reduced in thread order for determinism.
  const unsigned threads = threads_;
  std::vector<std::vector<double>> partial(threads,
                                           std::vector<double>(n_, 0.0));
  for_each_row([&](std::size_t r, std::span<const double> row, unsigned tid) {
    auto& acc = partial[tid];
    const double w = f[r];
    for (std::size_t c = 0; c < n_; ++c) acc[c] += row[c] * w;
  });
  std::fill(out.begin(), out.end(), 0.0);
  for (unsigned t = 0; t < threads; ++t) {
    for (std::size_t c = 0; c < n_; ++c) out[c] += partial[t][c];
  }
}

void DenseIidOperator::sq_adjoint(std::span<const double> u,
                                  std::span<double> out) const {
  require_length(u.size(), m_, "dense sq_adjoint(u)");
  require_length(out.size(), n_, "dense sq_adjoint(out)");
  const unsigned threads = threads_;
  std::vector<std::vector<double>> partial(threads,
                                           std::vector<double>(n_, 0.0));
  for_each_row([&](std::size_t r, std::span<const double> row, unsigned tid) {
    auto& acc = partial[tid];
    const double w = u[r];
    for (std::size_t c = 0; c < n_; ++c) acc[c] += row[c] * row[c] * w;
  });
  std::fill(out.begin(), out.end(), 0.0);
  for (unsigned t = 0; t < threads; ++t) {
    for (std::size_t c = 0; c < n_; ++c) out[c] += partial[t][c];
  }
}

std::vector<double> DenseIidOperator::forward(std::span<const double> x) const {
  std::vector<double> out(m_);
  forward(x, out);
  return out;
}
std::vector<double> DenseIidOperator::adjoint(std::span<const double> f) const {
  std::vector<double> out(n_);
  adjoint(f, out);
  return out;
}
std::vector<double> DenseIidOperator::sq_forward(
    std::span<const double> v) const {
  std::vector<double> out(m_);
  sq_forward(v, out);
  return out;
}
std::vector<double> DenseIidOperator::sq_adjoint(
    std::span<const double> u) const {
  std::vector<double> out(n_);
  sq_adjoint(u, out);
  return out;
}

}  // namespace ampkit
