#include <doctest.h>

#include <cmath>
#include <numbers>

#include "logsp/constants.hpp"
#include "logsp/error.hpp"
#include "logsp/radial.hpp"

using namespace logsp;

namespace {

// Classic RK4 shooting for phi'' + phi'/r - phi + phi^{p-1} = 0, independent of
// the library's integrator. Returns the mass 2 pi int phi^2 r dr of the ground state.
double townes_mass_rk4(double p) {
  const double dr = 2e-3;
  auto shoot = [&](double alpha, double* mass) {
    // series start: phi = alpha + alpha (1 - alpha^{p-2}) r^2 / 4
    double r = 1e-4;
    const double k = 0.25 * alpha * (1.0 - std::pow(alpha, p - 2.0));
    double y = alpha + k * r * r, v = 2.0 * k * r;
    double m = 0.0;
    auto f = [&](double rr, double yy, double vv) {
      return std::pair{vv, -vv / rr + yy - std::pow(std::abs(yy), p - 2.0) * yy};
    };
    while (r < 40.0) {
      const auto [a1, b1] = f(r, y, v);
      const auto [a2, b2] = f(r + dr / 2, y + dr / 2 * a1, v + dr / 2 * b1);
      const auto [a3, b3] = f(r + dr / 2, y + dr / 2 * a2, v + dr / 2 * b2);
      const auto [a4, b4] = f(r + dr, y + dr * a3, v + dr * b3);
      m += 2.0 * std::numbers::pi * y * y * r * dr;
      y += dr / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
      v += dr / 6 * (b1 + 2 * b2 + 2 * b3 + b4);
      r += dr;
      if (y < 0.0) return 1;   // overshoot
      if (v > 0.0) return -1;  // turned back up
      if (mass) *mass = m;
    }
    return 0;
  };
  double lo = 1.0, hi = 4.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (shoot(mid, nullptr) > 0 ? hi : lo) = mid;
  }
  double m = 0.0;
  shoot(lo, &m);
  return m;
}

}  // namespace

TEST_SUITE("constants") {

TEST_CASE("threshold formulas by substitution") {
  CHECK(k0({1.0, 1.0, 6.0, 1.0}) == doctest::Approx(0.5));
  CHECK(k0({-1.0, 1.0, 3.0, 1.0}) == doctest::Approx(0.25));
  CHECK_THROWS_AS(k0({1.0, 1.0, 4.0, 1.0}), Error);
  CHECK(c0(6.0, 1.0, 1.0, 0.2) == doctest::Approx(2.0 * std::cbrt(0.9375)).epsilon(1e-14));
  CHECK(c0(6.0, 1.0, 1.0, 0.2) == doctest::Approx(1.95744).epsilon(1e-5));
  CHECK(k1(3.0, 0.3) == doctest::Approx(3.0 / (std::numbers::sqrt2 * 0.3)).epsilon(1e-14));
  CHECK(k1(3.0, 0.3) == doctest::Approx(7.07107).epsilon(1e-6));
  CHECK(k2(3.0, 0.3) == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(masscritical_threshold(2.0, 0.25) == doctest::Approx(4.0));
  CHECK_THROWS_AS(k1(4.5, 0.3), Error);
  CHECK_THROWS_AS(c0(3.0, 1.0, 1.0, 0.2), Error);
}

TEST_CASE("mass thresholds invert the coupling thresholds") {
  for (double p : {2.5, 3.5}) {
    const double K = 4.2, a = 3.0, g = -1.7;
    const double c = mass_threshold(K, p, a, g);
    CHECK(K * std::pow(std::abs(g), 0.5 * (4.0 - p)) * std::pow(c, 3.0 - p) == doctest::Approx(a).epsilon(1e-13));
  }
  CHECK_THROWS_AS(mass_threshold(1.0, 3.0, 1.0, -1.0), Error);
}

TEST_CASE("ground state and K_GN against an independent shooting oracle") {
  const double M = townes_mass_rk4(4.0);
  CHECK(M == doctest::Approx(11.70).epsilon(2e-3));
  const double kgn4 = kgn_estimate(4.0);
  CHECK(kgn4 == doctest::Approx(2.0 / M).epsilon(1e-2));
  CHECK(kgn4 == doctest::Approx(0.17091).epsilon(1e-2));
  for (double p : {3.0, 6.0}) {
    const double Mp = townes_mass_rk4(p);
    const auto gs = radial::ground_state(p);
    CHECK(gs.mass == doctest::Approx(Mp).epsilon(2e-3));
    // Pohozaev: M = 2C/p and A = (p-2)C/p.
    CHECK(gs.mass == doctest::Approx(2.0 * gs.pnorm / p).epsilon(1e-5));
    CHECK(gs.kinetic == doctest::Approx((p - 2.0) * gs.pnorm / p).epsilon(1e-5));
  }
}

TEST_CASE("sharp constant dominates trial quotients") {
  for (double p : {2.5, 3.0, 3.5, 4.0, 5.0, 6.0}) {
    const double k = kgn_estimate(p);
    CHECK(kgn_gaussian_trial(p) < k);
  }
  CHECK(kgn_gaussian_trial(4.0) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)));
  const double ray = kgn_rayleigh_estimate(3.0);
  CHECK(ray >= kgn_gaussian_trial(3.0) * (1.0 - 1e-12));
  CHECK(ray <= kgn_estimate(3.0) * (1.0 + 1e-4));
}

TEST_CASE("sharp_constants is cached and reports its tolerance") {
  const auto a = sharp_constants(3.0);
  const auto b = sharp_constants(3.0);
  CHECK(a.kgn == b.kgn);
  CHECK(a.kv2 == b.kv2);
  CHECK(a.kv2 == kv2_estimate());
  CHECK(a.kv2 > 0.0);
  CHECK(a.kgn_tolerance < 1e-4);
  CHECK(std::string(to_string(a.method)) == "ode_shooting");
}

TEST_CASE("classifier examples") {
  const auto s3 = sharp_constants(3.0), s6 = sharp_constants(6.0);
  CHECK(regime_classify({1.0, -1.0, 3.0, 5.0}, s3).tag == RegimeTag::GlobalMin);
  CHECK(regime_classify({1.0, 2.0, 3.0, 5.0}, s3).tag == RegimeTag::GlobalMin);
  CHECK(regime_classify({-1.0, -1.0, 3.0, 1.0}, s3).tag == RegimeTag::NoCriticalPoint);
  const double t1 = k1_threshold({-1.0, 1.0, 3.0, 1.0}, s3.kgn);
  const double t2 = k2_threshold({-1.0, 1.0, 3.0, 1.0}, s3.kgn);
  CHECK(regime_classify({-1.0, 0.5 * t1, 3.0, 1.0}, s3).tag == RegimeTag::LambdaEmpty);
  CHECK(regime_classify({-1.0, t1, 3.0, 1.0}, s3).tag == RegimeTag::MaxOnLambda);
  CHECK(regime_classify({-1.0, 0.5 * (t1 + t2), 3.0, 1.0}, s3).tag == RegimeTag::TwoCriticalPointsOnLambda);
  CHECK(regime_classify({-1.0, t2, 3.0, 1.0}, s3).tag == RegimeTag::OpenUnknown);
  const double cz = c0(6.0, 1.0, 1.0, s6.kgn);
  CHECK(regime_classify({1.0, 1.0, 6.0, 0.5 * cz}, s6).tag == RegimeTag::LocalMinPlusMountainPass);
  CHECK(regime_classify({1.0, 1.0, 6.0, 1.5 * cz}, s6).tag == RegimeTag::OpenUnknown);
  CHECK(regime_classify({-1.0, 1.0, 5.0, 1.0}, sharp_constants(5.0)).tag == RegimeTag::OpenUnknown);
  CHECK(regime_classify({0.0, 1.0, 3.0, 1.0}, s3).tag == RegimeTag::OpenUnknown);
}

TEST_CASE("certificates quote their rule and hold") {
  const auto s3 = sharp_constants(3.0);
  const auto lab = regime_classify({-1.0, -2.0, 3.0, 1.0}, s3);
  CHECK(lab.certificate.rule.find("Theorem 1.4") != std::string::npos);
  for (const auto& q : lab.certificate.chain) CHECK(q.holds);
  const Params unit{-1.0, 1.0, 3.0, 1.0};
  const double mid = 0.5 * (k1_threshold(unit, s3.kgn) + k2_threshold(unit, s3.kgn));
  const auto two = regime_classify({-1.0, mid, 3.0, 1.0}, s3);
  CHECK(two.certificate.rule.find("Theorem 1.5") != std::string::npos);
  bool strict_low = false, strict_high = false;
  for (const auto& q : two.certificate.chain) {
    CHECK(q.holds);
    strict_low |= q.name == "a vs K1 threshold" && q.relation == ">";
    strict_high |= q.name == "a vs K2 threshold" && q.relation == "<";
  }
  CHECK(strict_low);
  CHECK(strict_high);
}

TEST_CASE("is_existence") {
  CHECK(is_existence(RegimeTag::GlobalMin));
  CHECK(is_existence(RegimeTag::TwoCriticalPointsOnLambda));
  CHECK_FALSE(is_existence(RegimeTag::LambdaEmpty));
  CHECK_FALSE(is_existence(RegimeTag::NoCriticalPoint));
  CHECK_FALSE(is_existence(RegimeTag::OpenUnknown));
}

TEST_CASE("Remark 4.8 windows in c") {
  const double a = 8.0, g = -1.0;
  for (double p : {2.5, 3.5}) {
    const auto s = sharp_constants(p);
    const double c1 = mass_threshold(k1(p, s.kgn), p, a, g);
    const double c2 = mass_threshold(k2(p, s.kgn), p, a, g);
    auto tag = [&](double c) { return regime_classify({g, a, p, c}, s).tag; };
    if (p < 3.0) {
      CHECK(c1 > c2);
      CHECK(tag(0.999 * c2) == RegimeTag::OpenUnknown);
      CHECK(tag(0.5 * (c1 + c2)) == RegimeTag::TwoCriticalPointsOnLambda);
      CHECK(tag(1.001 * c1) == RegimeTag::LambdaEmpty);
    } else {
      CHECK(c1 < c2);
      CHECK(tag(0.999 * c1) == RegimeTag::LambdaEmpty);
      CHECK(tag(0.5 * (c1 + c2)) == RegimeTag::TwoCriticalPointsOnLambda);
      CHECK(tag(1.001 * c2) == RegimeTag::OpenUnknown);
    }
  }
  // p = 3: the label does not depend on c.
  const auto s3 = sharp_constants(3.0);
  for (double a3 : {2.0, 8.0, 20.0}) {
    const auto ref = regime_classify({g, a3, 3.0, 1.0}, s3).tag;
    for (double c : {0.1, 0.7, 3.0, 40.0}) CHECK(regime_classify({g, a3, 3.0, c}, s3).tag == ref);
  }
}

TEST_CASE("increasing a never returns to LambdaEmpty") {
  for (double p : {2.5, 3.0, 3.5}) {
    const auto s = sharp_constants(p);
    bool seen_existence = false;
    for (int k = 0; k <= 400; ++k) {
      const auto tag = regime_classify({-1.3, 0.05 * k + 0.01, p, 1.1}, s).tag;
      if (is_existence(tag)) seen_existence = true;
      if (seen_existence) CHECK(tag != RegimeTag::LambdaEmpty);
    }
    CHECK(seen_existence);
  }
}

TEST_CASE("mass-critical boundary is exact") {
  const auto s4 = sharp_constants(4.0);
  const double a = 1.5;
  const double thr = masscritical_threshold(a, s4.kgn);
  CHECK(regime_classify({1.0, a, 4.0, std::nextafter(thr, 0.0)}, s4).tag == RegimeTag::GlobalMinMassCritical);
  CHECK(regime_classify({1.0, a, 4.0, thr}, s4).tag == RegimeTag::OpenUnknown);
}

TEST_CASE("Lambda is empty below the K2 threshold for gamma < 0") {
  // The infimum of Q over S(c) is attained by the GN optimizer; it changes sign
  // at a = K2 threshold, never at the K1 threshold.
  for (double p : {2.5, 3.0, 3.5}) {
    const auto s = sharp_constants(p);
    const Params base{-1.0, 1.0, p, 1.0};
    const double t2 = k2_threshold(base, s.kgn);
    CHECK(inf_Q_on_sphere({-1.0, t2, p, 1.0}, s.kgn) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(inf_Q_on_sphere({-1.0, 0.99 * t2, p, 1.0}, s.kgn) > 0.0);
    CHECK(inf_Q_on_sphere({-1.0, 1.01 * t2, p, 1.0}, s.kgn) < 0.0);
  }
}

}  // TEST_SUITE
