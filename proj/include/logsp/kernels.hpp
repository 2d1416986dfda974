#pragma once

// Data-parallel inner loops. Every kernel exists twice with identical
// signatures: `serial` is the plain reference kept for testing, `omp` is the
// OpenMP version used by the library. Reductions in `omp` may differ from the
// serial result by rounding only.

#include <cstddef>
#include <functional>
#include <span>

namespace logsp::kernels {

namespace serial {

double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double sum_abs_pow(std::span<const double> x, double p);
double weighted_sum(std::span<const double> x, std::span<const double> w);
void scale(std::span<const double> x, double s, std::span<double> out);
void axpby(double a, std::span<const double> x, double b, std::span<const double> y, std::span<double> out);
void square(std::span<const double> x, std::span<double> out);

/// out = lap_weight*lap + gamma*w*u - a*|u|^{p-2}*u, the pointwise part of the L2 gradient.
void gradient_combine(std::span<const double> u, std::span<const double> lap, std::span<const double> w,
                      double lap_weight, double gamma, double a_eff, double p, std::span<double> out);

/// Direct O(n^4) evaluation of out_i = h^2 sum_j K(x_i - x_j) rho_j on an n x n grid.
/// `kernel(di, dj)` receives integer node offsets.
void direct_convolve(std::size_t n, double h, std::span<const double> rho,
                     const std::function<double(long, long)>& kernel, std::span<double> out);

}  // namespace serial

namespace omp {

double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double sum_abs_pow(std::span<const double> x, double p);
double weighted_sum(std::span<const double> x, std::span<const double> w);
void scale(std::span<const double> x, double s, std::span<double> out);
void axpby(double a, std::span<const double> x, double b, std::span<const double> y, std::span<double> out);
void square(std::span<const double> x, std::span<double> out);
void gradient_combine(std::span<const double> u, std::span<const double> lap, std::span<const double> w,
                      double lap_weight, double gamma, double a_eff, double p, std::span<double> out);
void direct_convolve(std::size_t n, double h, std::span<const double> rho,
                     const std::function<double(long, long)>& kernel, std::span<double> out);

}  // namespace omp

}  // namespace logsp::kernels
