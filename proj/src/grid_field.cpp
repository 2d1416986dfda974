#include "logsp/grid_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "logsp/error.hpp"
#include "logsp/kernels.hpp"

namespace logsp {

namespace {

constexpr double kBoundaryLeakLimit = 1e-6;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_same_grid(const Field& a, const Field& b) {
  require(a.grid() == b.grid(), "fields live on different grids");
}

template <class F>
std::vector<double> sample(const Grid& g, F&& f) {
  std::vector<double> v(g.size());
  for (std::size_t j = 0; j < g.n; ++j)
    for (std::size_t i = 0; i < g.n; ++i) v[j * g.n + i] = f(g.coord(i), g.coord(j));
  return v;
}

std::vector<double> normalized_lobe(std::vector<double> v, const Grid& g, double target) {
  const double m = kernels::omp::dot(v, v) * g.cell_area();
  require(m > 0.0, "profile lobe has zero mass on this grid");
  const double s = std::sqrt(target / m);
  for (double& x : v) x *= s;
  return v;
}

struct Sampler {
  const Grid& g;

  std::vector<double> operator()(const GaussianProfile& p) const {
    require(p.sigma > 0.0, "gaussian sigma must be positive");
    const double inv = 1.0 / (2.0 * p.sigma * p.sigma);
    return sample(g, [&](double x, double y) {
      const double dx = x - p.center[0], dy = y - p.center[1];
      return std::exp(-(dx * dx + dy * dy) * inv);
    });
  }

  std::vector<double> operator()(const RingProfile& p) const {
    require(p.sigma > 0.0 && p.r0 >= 0.0, "ring needs sigma > 0 and r0 >= 0");
    const double inv = 1.0 / (2.0 * p.sigma * p.sigma);
    return sample(g, [&](double x, double y) {
      const double d = std::hypot(x, y) - p.r0;
      return std::exp(-d * d * inv);
    });
  }

  std::vector<double> operator()(const TwoBumpProfile& p) const {
    require(p.base_radius > 0.0 && p.tail_radius > 0.0, "bump radii must be positive");
    require(p.scale >= 1.0, "two-bump scale must be >= 1");
    require(p.base_fraction > 0.0 && p.base_fraction < 1.0, "base_fraction must lie in (0, 1)");
    const double sep = std::hypot(p.separation[0], p.separation[1]);
    require(sep > 0.0, "two-bump separation must be positive");
    if (p.scale * sep <= p.base_radius + p.scale * p.tail_radius)
      fail(ErrorKind::InvalidArgument, "two-bump lobes overlap: increase the separation");
    const double n = p.scale;
    const double tx = p.center[0] + n * p.separation[0];
    const double ty = p.center[1] + n * p.separation[1];
    auto base = sample(g, [&](double x, double y) {
      return bump(std::hypot(x - p.center[0], y - p.center[1]), p.base_radius);
    });
    auto tail = sample(g, [&](double x, double y) {
      return bump(std::hypot(x - tx, y - ty) / n, p.tail_radius) / n;
    });
    // Each lobe carries its share; masses add exactly since the supports are disjoint.
    base = normalized_lobe(std::move(base), g, p.base_fraction);
    tail = normalized_lobe(std::move(tail), g, 1.0 - p.base_fraction);
    for (std::size_t k = 0; k < base.size(); ++k) base[k] += tail[k];
    return base;
  }

  std::vector<double> operator()(const RandomSmoothProfile& p) const {
    require(p.cutoff > 0.0 && p.envelope > 0.0, "random profile needs positive cutoff and envelope");
    std::mt19937_64 rng(p.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    struct Mode {
      double kx, ky, a, b;
    };
    std::vector<Mode> modes;
    const double dk = 0.5;
    const int m = static_cast<int>(std::ceil(p.cutoff / dk));
    for (int my = -m; my <= m; ++my)
      for (int mx = -m; mx <= m; ++mx) {
        const double kx = mx * dk, ky = my * dk;
        const double k2 = kx * kx + ky * ky;
        if (k2 >= p.cutoff * p.cutoff) continue;
        const double amp = 1.0 / (1.0 + k2);
        const double a = amp * normal(rng);
        const double b = amp * normal(rng);
        modes.push_back({kx, ky, a, b});
      }
    const double inv = 1.0 / (2.0 * p.envelope * p.envelope);
    return sample(g, [&](double x, double y) {
      double s = 0.0;
      for (const auto& md : modes) {
        const double ph = md.kx * x + md.ky * y;
        s += md.a * std::cos(ph) + md.b * std::sin(ph);
      }
      return s * std::exp(-(x * x + y * y) * inv);
    });
  }
};

}  // namespace

Grid make_grid(double L, std::size_t n) {
  require(std::isfinite(L) && L > 0.0, "grid extent L must be positive");
  require(is_power_of_two(n) && n >= 16, "grid size n must be a power of two >= 16");
  return Grid{L, n, L / static_cast<double>(n)};
}

Field::Field(const Grid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  require(values_.size() == grid_.size(), "field size does not match its grid");
  for (double v : values_) require(std::isfinite(v), "field values must be finite");
}

Field Field::zeros(const Grid& grid) { return Field(grid, std::vector<double>(grid.size(), 0.0)); }

Field operator+(const Field& a, const Field& b) { return axpy(1.0, a, b); }

Field operator-(const Field& a, const Field& b) { return axpy(-1.0, b, a); }

Field operator*(double s, const Field& u) {
  std::vector<double> out(u.size());
  kernels::omp::scale(u.values(), s, out);
  return Field(u.grid(), std::move(out));
}

Field axpy(double a, const Field& x, const Field& y) {
  require_same_grid(x, y);
  std::vector<double> out(x.size());
  kernels::omp::axpby(a, x.values(), 1.0, y.values(), out);
  return Field(x.grid(), std::move(out));
}

double inner(const Field& u, const Field& v) {
  require_same_grid(u, v);
  return u.grid().cell_area() * kernels::omp::dot(u.values(), v.values());
}

double mass(const Field& u) { return u.grid().cell_area() * kernels::omp::dot(u.values(), u.values()); }

Field normalize(const Field& u, double c) {
  require(c > 0.0, "target mass must be positive");
  const double m = mass(u);
  require(m > 0.0, "cannot normalize a zero field");
  const double s = std::sqrt(c / m);
  // Already at mass c up to rounding: return u itself so normalize is idempotent.
  if (std::abs(s - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon()) return u;
  return s * u;
}

double boundary_mass_fraction(const Field& u) {
  const Grid& g = u.grid();
  const double total = mass(u);
  require(total > 0.0, "boundary_mass_fraction of a zero field");
  const double edge = 0.4 * g.L;
  double outer = 0.0;
  for (std::size_t j = 0; j < g.n; ++j) {
    const double y = std::abs(g.coord(j));
    for (std::size_t i = 0; i < g.n; ++i) {
      if (std::max(std::abs(g.coord(i)), y) > edge) {
        const double v = u(i, j);
        outer += v * v;
      }
    }
  }
  return std::clamp(outer * g.cell_area() / total, 0.0, 1.0);
}

Field shift(const Field& u, long di, long dj) {
  const Grid& g = u.grid();
  const long n = static_cast<long>(g.n);
  std::vector<double> out(g.size());
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < n; ++i) {
      const long si = ((i - di) % n + n) % n;
      const long sj = ((j - dj) % n + n) % n;
      out[j * n + i] = u.values()[sj * n + si];
    }
  return Field(g, std::move(out));
}

double bump(double r, double radius) {
  const double s = r / radius;
  if (s >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

Field discretize(const ProfileSpec& spec, const Grid& grid) {
  require(spec.c > 0.0, "profile mass must be positive");
  Field raw(grid, std::visit(Sampler{grid}, spec.kind));
  const double leak = boundary_mass_fraction(raw);
  if (leak >= kBoundaryLeakLimit) {
    std::ostringstream msg;
    msg << "profile leaks mass fraction " << leak << " into the boundary frame; enlarge L";
    fail(ErrorKind::DomainTooSmall, msg.str());
  }
  return normalize(raw, spec.c);
}

}  // namespace logsp
