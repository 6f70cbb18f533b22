// Brute-force posterior statistics. Nothing here shares code with the
// closed-form denoisers; the Gauss-Bernoulli paths integrate the posterior
// numerically and the section path enumerates all one-hot candidates.
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "ampkit/denoisers.hpp"
#include "ampkit/errors.hpp"

namespace ampkit {

namespace {

double gauss_pdf(double x, double mean, double var) {
  const double d = x - mean;
  return std::exp(-0.5 * d * d / var) /
         std::sqrt(2.0 * std::numbers::pi * var);
}

double simpson(double lo, double hi, double f_lo, double f_mid, double f_hi) {
  return (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
}

double adaptive_step(const std::function<double(double)>& f, double lo,
                     double hi, double f_lo, double f_mid, double f_hi,
                     double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lm = 0.5 * (lo + mid);
  const double rm = 0.5 * (mid + hi);
  const double f_lm = f(lm);
  const double f_rm = f(rm);
  const double left = simpson(lo, mid, f_lo, f_lm, f_mid);
  const double right = simpson(mid, hi, f_mid, f_rm, f_hi);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, lo, mid, f_lo, f_lm, f_mid, left, 0.5 * tol,
                       depth - 1) +
         adaptive_step(f, mid, hi, f_mid, f_rm, f_hi, right, 0.5 * tol,
                       depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double lo,
                        double hi, double tol) {
  const double mid = 0.5 * (lo + hi);
  const double f_lo = f(lo);
  const double f_mid = f(mid);
  const double f_hi = f(hi);
  const double whole = simpson(lo, hi, f_lo, f_mid, f_hi);
  return adaptive_step(f, lo, hi, f_lo, f_mid, f_hi, whole, tol, 48);
}

// Knots bracketing both Gaussian factors; without them a narrow likelihood
// spike inside a wide prior window can be missed entirely by the first
// Simpson estimates.
struct Segments {
  std::vector<double> knots;
};

Segments integration_segments(double xbar, double sigma2, double R,
                              double Sigma2) {
  const double s = std::sqrt(sigma2);
  const double t = std::sqrt(Sigma2);
  const double lo = std::min(xbar - 14.0 * s, R - 14.0 * t);
  const double hi = std::max(xbar + 14.0 * s, R + 14.0 * t);
  std::vector<double> knots{lo,
                            xbar - 4.0 * s,
                            xbar,
                            xbar + 4.0 * s,
                            R - 4.0 * t,
                            R,
                            R + 4.0 * t,
                            hi};
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  return {knots};
}

double integrate_segments(const std::function<double(double)>& f,
                          const Segments& segments, double tol) {
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < segments.knots.size(); ++k) {
    acc += adaptive_simpson(f, segments.knots[k], segments.knots[k + 1], tol);
  }
  return acc;
}

}  // namespace

DenoiserOut<double> posterior_oracle(const GaussBernoulliReal& prior,
                                     double Sigma2, double R) {
  if (!(Sigma2 > 0.0)) throw DomainError("posterior_oracle: Sigma2 <= 0");
  const auto segments =
      integration_segments(prior.xbar, prior.sigma2, R, Sigma2);
  // All terms are divided by the Gaussian-branch evidence, so the integrands
  // are O(1) regardless of how far R sits in the tails and the absolute
  // quadrature tolerance acts like a relative one. The ratios are unchanged.
  const double scale = gauss_pdf(R, prior.xbar, prior.sigma2 + Sigma2);
  const auto weight = [&](double x) {
    return gauss_pdf(x, prior.xbar, prior.sigma2) * gauss_pdf(R, x, Sigma2) /
           scale;
  };
  const double tol = 1e-13;
  const double m0 = integrate_segments(weight, segments, tol);
  const double m1 = integrate_segments(
      [&](double x) { return x * weight(x); }, segments, tol);
  const double m2 = integrate_segments(
      [&](double x) { return x * x * weight(x); }, segments, tol);
  const double point_mass =
      (1.0 - prior.rho) * gauss_pdf(R, 0.0, Sigma2) / scale;
  const double z = point_mass + prior.rho * m0;
  DenoiserOut<double> out;
  out.a = prior.rho * m1 / z;
  out.v = std::max(0.0, prior.rho * m2 / z - out.a * out.a);
  return out;
}

DenoiserOut<cplx> posterior_oracle(const GaussBernoulliComplex& prior,
                                   double Sigma2, cplx R) {
  if (!(Sigma2 > 0.0)) throw DomainError("posterior_oracle: Sigma2 <= 0");
  const auto seg1 =
      integration_segments(prior.xbar.real(), prior.sigma2, R.real(), Sigma2);
  const auto seg2 =
      integration_segments(prior.xbar.imag(), prior.sigma2, R.imag(), Sigma2);
  // Joint density over (x1, x2); both parts share the support indicator, so
  // the Gaussian branch is a genuine 2-D integral here. Dividing by the
  // branch evidence keeps the integrands O(1) (see the real oracle).
  const double scale =
      gauss_pdf(R.real(), prior.xbar.real(), prior.sigma2 + Sigma2) *
      gauss_pdf(R.imag(), prior.xbar.imag(), prior.sigma2 + Sigma2);
  const auto weight = [&](double x1, double x2) {
    return gauss_pdf(x1, prior.xbar.real(), prior.sigma2) *
           gauss_pdf(x2, prior.xbar.imag(), prior.sigma2) *
           gauss_pdf(R.real(), x1, Sigma2) * gauss_pdf(R.imag(), x2, Sigma2) /
           scale;
  };
  const double outer_tol = 1e-10;
  const double inner_tol = 1e-11;
  const auto integral2d = [&](const std::function<double(double, double)>& f) {
    return integrate_segments(
        [&](double x1) {
          return integrate_segments([&](double x2) { return f(x1, x2); },
                                    seg2, inner_tol);
        },
        seg1, outer_tol);
  };
  const double m0 = integral2d([&](double a, double b) { return weight(a, b); });
  const double m1r =
      integral2d([&](double a, double b) { return a * weight(a, b); });
  const double m1i =
      integral2d([&](double a, double b) { return b * weight(a, b); });
  const double m2 = integral2d(
      [&](double a, double b) { return (a * a + b * b) * weight(a, b); });

  const double point_mass = (1.0 - prior.rho) *
                            gauss_pdf(R.real(), 0.0, Sigma2) *
                            gauss_pdf(R.imag(), 0.0, Sigma2) / scale;
  const double z = point_mass + prior.rho * m0;
  DenoiserOut<cplx> out;
  out.a = prior.rho * cplx(m1r, m1i) / z;
  out.v = std::max(0.0, (prior.rho * m2 / z - std::norm(out.a)) / 2.0);
  return out;
}

void posterior_oracle_section(std::span<const double> Sigma2,
                              std::span<const double> R, std::span<double> a,
                              std::span<double> v) {
  const std::size_t b = Sigma2.size();
  if (R.size() != b || a.size() != b || v.size() != b || b == 0) {
    throw SizeError("posterior_oracle_section: length mismatch");
  }
  // log-weight of candidate k: -sum_i (delta_ik - R_i)^2 / (2 Sigma2_i),
  // evaluated as the full quadratic form.
  std::vector<double> logw(b);
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < b; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < b; ++i) {
      if (!(Sigma2[i] > 0.0)) {
        throw DomainError("posterior_oracle_section: Sigma2 <= 0");
      }
      const double d = (i == k ? 1.0 : 0.0) - R[i];
      acc -= d * d / (2.0 * Sigma2[i]);
    }
    logw[k] = acc;
    shift = std::max(shift, acc);
  }
  double z = 0.0;
  for (std::size_t k = 0; k < b; ++k) {
    logw[k] = std::exp(logw[k] - shift);
    z += logw[k];
  }
  for (std::size_t i = 0; i < b; ++i) {
    const double p = logw[i] / z;  // P(position i is the support)
    a[i] = p;
    v[i] = std::max(0.0, p - p * p);
  }
}

}  // namespace ampkit
