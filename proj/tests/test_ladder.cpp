#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "sbm/errors.hpp"
#include "sbm/ladder.hpp"

using namespace sbm;

namespace {
constexpr double kPi = std::numbers::pi;

LadderOptions factored(double kappa) {
  LadderOptions o;
  o.factor_exponent = kappa;
  return o;
}
}  // namespace

TEST_CASE("stable identity chi = l^{alpha/2}") {
  CHECK(ladder_exponent_chi(Cbf::stable(1.0), 4.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ladder_exponent_chi(Cbf::stable(0.5), 16.0) == doctest::Approx(2.0).epsilon(1e-14));
  for (double alpha : {0.5, 1.0, 1.5}) {
    const auto phi = Cbf::stable(alpha);
    const auto opts = factored(alpha == 1.0 ? 0.5 : 1.0);
    for (double l : {0.1, 1.0, 10.0, 100.0}) {
      const double chi = ladder_exponent_chi(phi, l, opts);
      CHECK(std::abs(chi / std::pow(l, 0.5 * alpha) - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("complex chi continues the power law across the imaginary axis") {
  for (double alpha : {0.5, 1.0, 1.5}) {
    const auto phi = Cbf::stable(alpha);
    const auto opts = factored(2.0 - alpha);
    for (double omega : {0.0, 0.3, 0.49 * kPi, 0.5 * kPi, 0.51 * kPi, 0.8 * kPi, 0.97 * kPi}) {
      for (double rho : {0.05, 1.0, 300.0}) {
        const Complex l = std::polar(rho, omega);
        const Complex exact = std::exp(0.5 * alpha * std::log(l));
        const Complex got = ladder_exponent_chi(phi, l, opts);
        CHECK(std::abs(got - exact) <= 1e-9 * std::abs(exact));
        const Complex lower = ladder_exponent_chi(phi, std::conj(l), opts);
        CHECK(std::abs(lower - std::conj(exact)) <= 1e-9 * std::abs(exact));
      }
    }
  }
}

TEST_CASE("complex chi matches the real evaluation and is continuous") {
  for (const auto& phi : standard_catalog()) {
    for (double l : {0.01, 1.0, 50.0}) {
      const Complex z = ladder_exponent_chi(phi, Complex(l, 0.0));
      CHECK(z.real() == doctest::Approx(ladder_exponent_chi(phi, l)).epsilon(1e-10));
      CHECK(std::abs(z.imag()) < 1e-10 * z.real());
      const Complex a = ladder_exponent_chi(phi, std::polar(l, 0.5 * kPi - 1e-7));
      const Complex b = ladder_exponent_chi(phi, std::polar(l, 0.5 * kPi + 1e-7));
      CHECK(std::abs(a - b) < 1e-6 * std::abs(a));
    }
  }
}

TEST_CASE("sandwich with exp(+-pi/2)") {
  CHECK(sandwich_lower() == doctest::Approx(0.20788).epsilon(1e-4));
  CHECK(sandwich_upper() == doctest::Approx(4.81048).epsilon(1e-5));
  const auto grid = log_grid(1e-2, 1e4, 40);
  const auto st = chi_sandwich_check(Cbf::stable(1.0), grid);
  CHECK(st.min == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(st.max == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& phi : standard_catalog()) {
    const auto s = chi_sandwich_check(phi, grid);
    CHECK_MESSAGE(s.min >= sandwich_lower() - 1e-9, phi.name());
    CHECK_MESSAGE(s.max <= sandwich_upper() + 1e-9, phi.name());
  }
  const auto rel = Cbf::relativistic(1.0, 1.0);
  for (double l : {0.1, 1.0, 10.0}) {
    const double q = ladder_exponent_chi(rel, l) / std::sqrt(rel(l * l));
    CHECK(q >= sandwich_lower());
    CHECK(q <= sandwich_upper());
  }
}

TEST_CASE("chi is a complete Bernstein function") {
  const auto grid = log_grid(0.1, 100.0, 12);
  CHECK(chi_is_cbf_check(Cbf::stable(1.0), grid).verdict != CheckVerdict::fail);
  CHECK(chi_is_cbf_check(Cbf::relativistic(1.0, 1.0), grid).verdict != CheckVerdict::fail);
  CHECK(chi_is_cbf_check(Cbf::log_down(1.0, 0.5), grid).verdict != CheckVerdict::fail);
  const auto bad = chi_is_cbf_check([](double l) { return l * (2.0 + std::sin(l)); },
                                    log_grid(1.0, 10.0, 20));
  CHECK(bad.verdict == CheckVerdict::fail);
}

TEST_CASE("renewal function") {
  const auto phi = Cbf::stable(1.0);
  CHECK(renewal_function_V(phi, 1.0) == doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(1e-14));
  CHECK(renewal_function_V(phi, 0.0) == 0.0);
  CHECK(renewal_function_V(phi, 1e-12) < 1e-5);
  for (double t : log_grid(1e-3, 10.0, 9)) {
    CHECK(renewal_function_V(phi, 2.0 * t) <= std::sqrt(2.0) * renewal_function_V(phi, t) * (1 + 1e-14));
  }
  // Contour inversion through the quadrature path reproduces the closed form.
  for (double alpha : {0.5, 1.5}) {
    const auto opts = factored(1.0);
    for (double t : {0.01, 1.0, 5.0}) {
      CHECK(renewal_function_V(Cbf::stable(alpha), t, opts) ==
            doctest::Approx(renewal_function_V(Cbf::stable(alpha), t)).epsilon(1e-7));
      CHECK(ladder_potential_density(Cbf::stable(alpha), t, opts) ==
            doctest::Approx(ladder_potential_density(Cbf::stable(alpha), t)).epsilon(1e-7));
    }
  }
}

TEST_CASE("V is the integral of the ladder density") {
  const auto phi = Cbf::relativistic(1.0, 1.0);
  const double t = 0.7;
  const auto integral = integrate_endpoint_singular(
      [&](double s) {
        const double z = t * s * s;
        return z > 0.0 ? ladder_potential_density(phi, z) * 2.0 * t * s : 0.0;
      },
      0.0, 1.0, 1e-9);
  CHECK(renewal_function_V(phi, t) == doctest::Approx(integral.value).epsilon(1e-6));
  double prev = 0.0;
  for (double s : log_grid(1e-3, 10.0, 10)) {
    const double v = renewal_function_V(phi, s);
    CHECK(v > prev);
    prev = v;
  }
  const auto spread = renewal_asymptotic_ratio(phi, log_grid(1e-4, 1.0, 10));
  CHECK(spread.min > 0.0);
  CHECK(std::isfinite(spread.max));
}

TEST_CASE("half-line Green function") {
  const auto phi = Cbf::stable(1.0);
  CHECK(halfline_green(phi, 1.0, 2.0) ==
        doctest::Approx(2.0 / kPi * std::log(1.0 + std::sqrt(2.0))).epsilon(1e-9));
  CHECK(std::isinf(halfline_green(phi, 1.0, 1.0)));
  CHECK(std::isfinite(halfline_green(Cbf::stable(1.5), 1.0, 1.0)));
  const std::vector<double> pts{0.3, 0.7, 1.0, 1.9, 4.0};
  for (double x : pts) {
    for (double y : pts) {
      if (x == y) continue;
      CHECK(std::abs(halfline_green(phi, x, y) - halfline_green(phi, y, x)) < 1e-6);
    }
  }
}

TEST_CASE("half-line Green function is the limit of the Cauchy interval Green function") {
  // G_{(-R,R)}(x, y) = asinh(sqrt(w)) / pi, w = (R^2 - x^2)(R^2 - y^2) / (R^2 (x - y)^2)
  const double R = 1e6;
  auto interval_green = [R](double x, double y) {
    const double w = (R * R - x * x) * (R * R - y * y) / (R * R * (x - y) * (x - y));
    return std::asinh(std::sqrt(w)) / kPi;
  };
  for (auto [x, y] : {std::pair{1.0, 2.0}, std::pair{0.5, 3.0}, std::pair{2.5, 0.4}}) {
    CHECK(halfline_green(Cbf::stable(1.0), x, y) ==
          doctest::Approx(interval_green(x - R, y - R)).epsilon(1e-4));
  }
}

TEST_CASE("interval Green mass bounds") {
  const auto phi = Cbf::stable(1.0);
  const auto b = interval_green_mass_bound(phi, 1.0, 0.5);
  CHECK(b.plain == doctest::Approx(1.80063).epsilon(1e-5));
  CHECK(interval_green_mass_bound(phi, 1.0, 1e-10).plain < 1e-4);
  for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto c = interval_green_mass_bound(phi, 1.0, x);
    CHECK(c.min_form <= c.plain);
    CHECK(c.symmetric > 0.0);
  }
  // E_x[tau] for the stable interval (-1, 1) at x = 1/2 is sqrt(3)/2.
  CHECK(std::sqrt(3.0) / 2.0 <= interval_green_mass_bound(phi, 1.0, 0.5).symmetric);
  CHECK_THROWS_AS(interval_green_mass_bound(phi, 1.0, 1.5), DomainError);
}
