#pragma once

#include <array>
#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "logsp/grid_field.hpp"

namespace logsp {

/// Radial kernels of the interaction energy. log r = log(1+r) - log(1+1/r).
enum class Kernel { Log, LogOnePlusR, LogOnePlusInvR };

/// How the singular origin sample of the log kernel is chosen.
///  - LatticeCorrected: log h + log(2 sqrt(pi) / Gamma(1/4)^2), the weight that
///    makes the punctured trapezoidal sum exact to O(h^4) for smooth densities.
///  - CellAverage: the mean of log|z| over the origin cell [-h/2, h/2]^2.
/// The log(1+r) kernel is regular (origin value 0, or its cell mean under
/// CellAverage); the log(1+1/r) origin value is always the difference of the two.
enum class OriginRule { LatticeCorrected, CellAverage };

struct KernelOptions {
  OriginRule origin = OriginRule::LatticeCorrected;
  /// Added to the log-kernel origin value only. Zero in production; used to
  /// check that the V = V1 - V2 invariant detects a corrupted kernel.
  double log_origin_shift = 0.0;
};

/// Mean of f(|z|) over the square [-h/2, h/2]^2 by nested adaptive
/// Gauss-Kronrod quadrature in polar coordinates (tolerance 1e-10).
double origin_cell_average(Kernel k, double h);

/// log(2 sqrt(pi) / Gamma(1/4)^2) = -1.3105329...
double lattice_log_constant();

/// FFT plans and kernel spectra for one grid. Free-space convolutions use 2x
/// zero padding; derivatives treat the field as periodic on the unpadded box.
/// Construction is serialized internally (FFTW planner); all const methods are
/// safe to call concurrently.
class Workspace {
 public:
  explicit Workspace(const Grid& grid, KernelOptions options = {});
  ~Workspace();
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const Grid& grid() const { return grid_; }
  const KernelOptions& options() const { return options_; }
  double origin_value(Kernel k) const { return origin_[static_cast<int>(k)]; }

  /// out_i = h^2 * sum_j K(x_i - x_j) rho_j, free space.
  std::vector<double> convolve(std::span<const double> rho, Kernel k) const;

  /// Spectral -Laplacian of a periodic field.
  std::vector<double> neg_laplacian(std::span<const double> u) const;

  /// Spectral Dirichlet energy h^2 * sum |grad u|^2.
  double dirichlet(std::span<const double> u) const;

  /// (shift - Laplacian)^{-1} r, shift > 0.
  std::vector<double> resolvent(std::span<const double> r, double shift) const;

  /// Sampled (not transformed) kernel value at integer node offset.
  double kernel_at(Kernel k, long di, long dj) const;

 private:
  struct Plans;

  Grid grid_;
  KernelOptions options_;
  std::array<double, 3> origin_{};
  std::unique_ptr<Plans> plans_;
  std::array<std::vector<std::complex<double>>, 3> spectra_;
  std::vector<double> k2_;  // |k|^2 on the unpadded half spectrum
};

}  // namespace logsp
