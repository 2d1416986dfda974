#include "logsp/kernels.hpp"

#include <cmath>
#include <cstdlib>

namespace logsp::kernels::serial {

double sum(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double sum_abs_pow(std::span<const double> x, double p) {
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), p);
  return s;
}

double weighted_sum(std::span<const double> x, std::span<const double> w) { return dot(x, w); }

void scale(std::span<const double> x, double s, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = s * x[i];
}

void axpby(double a, std::span<const double> x, double b, std::span<const double> y, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
}

void square(std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * x[i];
}

void gradient_combine(std::span<const double> u, std::span<const double> lap, std::span<const double> w,
                      double lap_weight, double gamma, double a_eff, double p, std::span<double> out) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double au = std::abs(u[i]);
    const double nl = au > 0.0 ? std::pow(au, p - 2.0) * u[i] : 0.0;
    out[i] = lap_weight * lap[i] + gamma * w[i] * u[i] - a_eff * nl;
  }
}

void direct_convolve(std::size_t n, double h, std::span<const double> rho,
                     const std::function<double(long, long)>& kernel, std::span<double> out) {
  const long nn = static_cast<long>(n);
  for (long j = 0; j < nn; ++j) {
    for (long i = 0; i < nn; ++i) {
      double s = 0.0;
      for (long jj = 0; jj < nn; ++jj)
        for (long ii = 0; ii < nn; ++ii) s += kernel(i - ii, j - jj) * rho[jj * nn + ii];
      out[j * nn + i] = h * h * s;
    }
  }
}

}  // namespace logsp::kernels::serial
