#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

namespace logsp {

/// Uniform square grid on [-L/2, L/2)^2 with n nodes per side.
struct Grid {
  double L = 0.0;
  std::size_t n = 0;
  double h = 0.0;

  double coord(std::size_t i) const { return -0.5 * L + static_cast<double>(i) * h; }
  std::size_t size() const { return n * n; }
  double cell_area() const { return h * h; }

  friend bool operator==(const Grid& a, const Grid& b) { return a.L == b.L && a.n == b.n; }
};

/// Throws InvalidArgument unless L > 0 and n is a power of two with n >= 16.
Grid make_grid(double L, std::size_t n);

/// Real field sampled on a Grid. Storage is row-major with the row index
/// running over the second coordinate: value(i, j) = u(x_i, y_j) lives at j*n + i.
class Field {
 public:
  Field() = default;
  Field(const Grid& grid, std::vector<double> values);

  static Field zeros(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[j * grid_.n + i]; }
  std::size_t size() const { return values_.size(); }

  friend Field operator+(const Field& a, const Field& b);
  friend Field operator-(const Field& a, const Field& b);
  friend Field operator*(double s, const Field& u);

 private:
  Grid grid_{};
  std::vector<double> values_;
};

/// a*x + y on identical grids.
Field axpy(double a, const Field& x, const Field& y);

/// Midpoint-rule L2 inner product h^2 * sum(u*v).
double inner(const Field& u, const Field& v);

/// ||u||_2^2 by the midpoint rule.
double mass(const Field& u);

/// Rescales u to mass c. Throws on a zero field or c <= 0.
Field normalize(const Field& u, double c);

/// Fraction of the mass lying in the outer frame max(|x|,|y|) > 0.4 L.
double boundary_mass_fraction(const Field& u);

/// Circular shift by whole grid cells.
Field shift(const Field& u, long di, long dj);

// Profiles -----------------------------------------------------------------

struct GaussianProfile {
  double sigma = 1.0;
  std::array<double, 2> center{0.0, 0.0};
};

struct RingProfile {
  double r0 = 1.0;
  double sigma = 0.5;
};

/// Two compactly supported lobes: a base bump of radius base_radius at `center`
/// and the tail lobe v_n(x) = (1/n) v((x - center - n R)/n), where v is a bump of
/// radius tail_radius. The base lobe carries base_fraction of the mass.
/// With equal radii and base_fraction = 1/2 the tail is a dilated copy of the base.
struct TwoBumpProfile {
  std::array<double, 2> separation{6.0, 0.0};
  double scale = 1.0;
  double base_radius = 1.0;
  double tail_radius = 1.0;
  double base_fraction = 0.5;
  std::array<double, 2> center{0.0, 0.0};
};

/// Random Fourier modes below a cutoff wavenumber, localized by a Gaussian envelope.
struct RandomSmoothProfile {
  std::uint64_t seed = 0;
  double cutoff = 2.0;
  double envelope = 2.0;
};

using ProfileKind = std::variant<GaussianProfile, RingProfile, TwoBumpProfile, RandomSmoothProfile>;

struct ProfileSpec {
  ProfileKind kind = GaussianProfile{};
  double c = 1.0;
};

/// Samples the profile and renormalizes to mass spec.c. Throws DomainTooSmall
/// when more than 1e-6 of the mass falls in the boundary frame.
Field discretize(const ProfileSpec& spec, const Grid& grid);

/// Compact C-infinity bump exp(1 - 1/(1 - (r/R)^2)) for r < R, zero elsewhere.
double bump(double r, double radius);

// LPF1 binary format ----------------------------------------------------------

void write_lpf(const std::filesystem::path& path, const Field& u);
Field read_lpf(const std::filesystem::path& path);

}  // namespace logsp
