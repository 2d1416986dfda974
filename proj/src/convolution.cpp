#include "logsp/convolution.hpp"

#include <fftw3.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <mutex>
#include <numbers>

#include "logsp/error.hpp"
#include "logsp/kernels.hpp"

namespace logsp {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using RealBuf = std::unique_ptr<double[], FftwFree>;
using ComplexBuf = std::unique_ptr<fftw_complex[], FftwFree>;

RealBuf alloc_real(std::size_t n) { return RealBuf(fftw_alloc_real(n)); }
ComplexBuf alloc_complex(std::size_t n) { return ComplexBuf(fftw_alloc_complex(n)); }

double kernel_value(Kernel k, double r) {
  switch (k) {
    case Kernel::Log:
      return std::log(r);
    case Kernel::LogOnePlusR:
      return std::log1p(r);
    case Kernel::LogOnePlusInvR:
      return std::log1p(1.0 / r);
  }
  return 0.0;
}

}  // namespace

double lattice_log_constant() {
  const double g = std::tgamma(0.25);
  return std::log(2.0 * std::sqrt(std::numbers::pi) / (g * g));
}

double origin_cell_average(Kernel k, double h) {
  using boost::math::quadrature::gauss_kronrod;
  if (k == Kernel::LogOnePlusInvR)
    return origin_cell_average(Kernel::LogOnePlusR, h) - origin_cell_average(Kernel::Log, h);
  auto radial = [&](double theta) {
    const double rmax = 0.5 * h / std::cos(theta);
    auto f = [&](double r) { return r > 0.0 ? kernel_value(k, r) * r : 0.0; };
    return gauss_kronrod<double, 61>::integrate(f, 0.0, rmax, 15, 1e-12);
  };
  const double I = gauss_kronrod<double, 61>::integrate(radial, 0.0, std::numbers::pi / 4.0, 15, 1e-12);
  return 8.0 * I / (h * h);
}

struct Workspace::Plans {
  fftw_plan pad_r2c = nullptr;
  fftw_plan pad_c2r = nullptr;
  fftw_plan box_r2c = nullptr;
  fftw_plan box_c2r = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    for (fftw_plan p : {pad_r2c, pad_c2r, box_r2c, box_c2r})
      if (p) fftw_destroy_plan(p);
  }
};

Workspace::Workspace(const Grid& grid, KernelOptions options)
    : grid_(grid), options_(options), plans_(std::make_unique<Plans>()) {
  const std::size_t n = grid_.n;
  const std::size_t N = 2 * n;
  const int in = static_cast<int>(n), iN = static_cast<int>(N);
  {
    std::lock_guard lock(planner_mutex());
    auto r = alloc_real(N * N);
    auto c = alloc_complex(N * (n + 1));
    plans_->pad_r2c = fftw_plan_dft_r2c_2d(iN, iN, r.get(), c.get(), FFTW_ESTIMATE);
    plans_->pad_c2r = fftw_plan_dft_c2r_2d(iN, iN, c.get(), r.get(), FFTW_ESTIMATE);
    plans_->box_r2c = fftw_plan_dft_r2c_2d(in, in, r.get(), c.get(), FFTW_ESTIMATE);
    plans_->box_c2r = fftw_plan_dft_c2r_2d(in, in, c.get(), r.get(), FFTW_ESTIMATE);
  }

  const double h = grid_.h;
  if (options_.origin == OriginRule::LatticeCorrected) {
    origin_[0] = std::log(h) + lattice_log_constant();
    origin_[1] = 0.0;
  } else {
    origin_[0] = origin_cell_average(Kernel::Log, h);
    origin_[1] = origin_cell_average(Kernel::LogOnePlusR, h);
  }
  origin_[2] = origin_[1] - origin_[0];
  origin_[0] += options_.log_origin_shift;

  const std::size_t half = N / 2 + 1;
  for (int k = 0; k < 3; ++k) {
    auto r = alloc_real(N * N);
    auto c = alloc_complex(N * half);
    for (std::size_t J = 0; J < N; ++J) {
      const long dj = J < n ? static_cast<long>(J) : static_cast<long>(J) - static_cast<long>(N);
      for (std::size_t I = 0; I < N; ++I) {
        const long di = I < n ? static_cast<long>(I) : static_cast<long>(I) - static_cast<long>(N);
        r[J * N + I] = kernel_at(static_cast<Kernel>(k), di, dj);
      }
    }
    fftw_execute_dft_r2c(plans_->pad_r2c, r.get(), c.get());
    auto& spec = spectra_[k];
    spec.resize(N * half);
    for (std::size_t q = 0; q < N * half; ++q) spec[q] = {c[q][0], c[q][1]};
  }

  const std::size_t bh = n / 2 + 1;
  k2_.resize(n * bh);
  const double dk = 2.0 * std::numbers::pi / grid_.L;
  for (std::size_t j = 0; j < n; ++j) {
    const double my = j < n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
    for (std::size_t i = 0; i < bh; ++i) {
      const double kx = dk * static_cast<double>(i), ky = dk * my;
      k2_[j * bh + i] = kx * kx + ky * ky;
    }
  }
}

Workspace::~Workspace() = default;

double Workspace::kernel_at(Kernel k, long di, long dj) const {
  if (di == 0 && dj == 0) return origin_[static_cast<int>(k)];
  const double r = grid_.h * std::hypot(static_cast<double>(di), static_cast<double>(dj));
  return kernel_value(k, r);
}

std::vector<double> Workspace::convolve(std::span<const double> rho, Kernel k) const {
  const std::size_t n = grid_.n, N = 2 * n, half = N / 2 + 1;
  require(rho.size() == n * n, "convolve: density size does not match the grid");
  auto r = alloc_real(N * N);
  auto c = alloc_complex(N * half);
  std::fill(r.get(), r.get() + N * N, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    std::copy(rho.begin() + j * n, rho.begin() + (j + 1) * n, r.get() + j * N);
  fftw_execute_dft_r2c(plans_->pad_r2c, r.get(), c.get());
  const auto& spec = spectra_[static_cast<int>(k)];
  const long total = static_cast<long>(N * half);
#pragma omp parallel for schedule(static)
  for (long q = 0; q < total; ++q) {
    const std::complex<double> z(c[q][0], c[q][1]);
    const auto p = z * spec[q];
    c[q][0] = p.real();
    c[q][1] = p.imag();
  }
  fftw_execute_dft_c2r(plans_->pad_c2r, c.get(), r.get());
  const double s = grid_.h * grid_.h / static_cast<double>(N * N);
  std::vector<double> out(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out[j * n + i] = s * r[j * N + i];
  return out;
}

std::vector<double> Workspace::neg_laplacian(std::span<const double> u) const {
  const std::size_t n = grid_.n, bh = n / 2 + 1;
  require(u.size() == n * n, "neg_laplacian: size mismatch");
  auto r = alloc_real(n * n);
  auto c = alloc_complex(n * bh);
  std::copy(u.begin(), u.end(), r.get());
  fftw_execute_dft_r2c(plans_->box_r2c, r.get(), c.get());
  const double inv = 1.0 / static_cast<double>(n * n);
  for (std::size_t q = 0; q < n * bh; ++q) {
    c[q][0] *= k2_[q] * inv;
    c[q][1] *= k2_[q] * inv;
  }
  fftw_execute_dft_c2r(plans_->box_c2r, c.get(), r.get());
  return std::vector<double>(r.get(), r.get() + n * n);
}

double Workspace::dirichlet(std::span<const double> u) const {
  const std::size_t n = grid_.n, bh = n / 2 + 1;
  require(u.size() == n * n, "dirichlet: size mismatch");
  auto r = alloc_real(n * n);
  auto c = alloc_complex(n * bh);
  std::copy(u.begin(), u.end(), r.get());
  fftw_execute_dft_r2c(plans_->box_r2c, r.get(), c.get());
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < bh; ++i) {
      const std::size_t q = j * bh + i;
      const double w = (i == 0 || i == n / 2) ? 1.0 : 2.0;
      s += w * k2_[q] * (c[q][0] * c[q][0] + c[q][1] * c[q][1]);
    }
  return grid_.h * grid_.h * s / static_cast<double>(n * n);
}

std::vector<double> Workspace::resolvent(std::span<const double> u, double shift) const {
  require(shift > 0.0, "resolvent shift must be positive");
  const std::size_t n = grid_.n, bh = n / 2 + 1;
  require(u.size() == n * n, "resolvent: size mismatch");
  auto r = alloc_real(n * n);
  auto c = alloc_complex(n * bh);
  std::copy(u.begin(), u.end(), r.get());
  fftw_execute_dft_r2c(plans_->box_r2c, r.get(), c.get());
  const double inv = 1.0 / static_cast<double>(n * n);
  for (std::size_t q = 0; q < n * bh; ++q) {
    const double f = inv / (shift + k2_[q]);
    c[q][0] *= f;
    c[q][1] *= f;
  }
  fftw_execute_dft_c2r(plans_->box_c2r, c.get(), r.get());
  return std::vector<double>(r.get(), r.get() + n * n);
}

}  // namespace logsp
