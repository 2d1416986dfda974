#include "logsp/kernels.hpp"

#include <cmath>
#include <cstdlib>

namespace logsp::kernels::omp {

namespace {
inline long ssize(std::span<const double> x) { return static_cast<long>(x.size()); }
}  // namespace

double sum(std::span<const double> x) {
  const long n = ssize(x);
  double s = 0.0;
#pragma omp parallel for reduction(+ : s) schedule(static)
  for (long i = 0; i < n; ++i) s += x[i];
  return s;
}

double dot(std::span<const double> x, std::span<const double> y) {
  const long n = ssize(x);
  double s = 0.0;
#pragma omp parallel for reduction(+ : s) schedule(static)
  for (long i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_abs_pow(std::span<const double> x, double p) {
  const long n = ssize(x);
  double s = 0.0;
#pragma omp parallel for reduction(+ : s) schedule(static)
  for (long i = 0; i < n; ++i) s += std::pow(std::abs(x[i]), p);
  return s;
}

double weighted_sum(std::span<const double> x, std::span<const double> w) { return dot(x, w); }

void scale(std::span<const double> x, double s, std::span<double> out) {
  const long n = ssize(x);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = s * x[i];
}

void axpby(double a, std::span<const double> x, double b, std::span<const double> y, std::span<double> out) {
  const long n = ssize(x);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void square(std::span<const double> x, std::span<double> out) {
  const long n = ssize(x);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = x[i] * x[i];
}

void gradient_combine(std::span<const double> u, std::span<const double> lap, std::span<const double> w,
                      double lap_weight, double gamma, double a_eff, double p, std::span<double> out) {
  const long n = ssize(u);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const double au = std::abs(u[i]);
    const double nl = au > 0.0 ? std::pow(au, p - 2.0) * u[i] : 0.0;
    out[i] = lap_weight * lap[i] + gamma * w[i] * u[i] - a_eff * nl;
  }
}

void direct_convolve(std::size_t n, double h, std::span<const double> rho,
                     const std::function<double(long, long)>& kernel, std::span<double> out) {
  const long nn = static_cast<long>(n);
#pragma omp parallel for collapse(2) schedule(static)
  for (long j = 0; j < nn; ++j) {
    for (long i = 0; i < nn; ++i) {
      double s = 0.0;
      for (long jj = 0; jj < nn; ++jj)
        for (long ii = 0; ii < nn; ++ii) s += kernel(i - ii, j - jj) * rho[jj * nn + ii];
      out[j * nn + i] = h * h * s;
    }
  }
}

}  // namespace logsp::kernels::omp
