#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "sbm/errors.hpp"
#include "sbm/kernels.hpp"

using namespace sbm;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("heat kernel") {
  CHECK(heat_kernel(1, 1.0 / (4.0 * kPi), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(heat_kernel(3, 1.0, 0.0) == doctest::Approx(0.0224484).epsilon(1e-6));
  const auto mass = integrate([](double x) { return heat_kernel(1, 1.0, x); }, -40.0, 40.0);
  CHECK(std::abs(mass.value - 1.0) < 1e-8);
}

TEST_CASE("transience") {
  CHECK(transience_check(Cbf::stable(1.0), 3));
  CHECK_FALSE(transience_check(Cbf::stable(1.0), 1, 0.4));
  CHECK(transience_check(Cbf::stable(0.5), 1, 0.3));
  CHECK_FALSE(transience_check(Cbf::stable(1.0), 1));
  CHECK(transience_check(Cbf::stable(1.5), 2));
  CHECK_FALSE(transience_check(Cbf::relativistic(1.0, 1.0), 2));
  CHECK(transience_check(Cbf::geometric_example(1.0), 1));
  CHECK_THROWS_AS(transience_check(Cbf::stable(1.0), 1, std::nullopt, false), UndecidableError);
}

TEST_CASE("stable Green function matches the Riesz kernel") {
  const auto phi = Cbf::stable(1.0);
  CHECK(green_function(phi, 3, 1.0) == doctest::Approx(1.0 / (2.0 * kPi * kPi)).epsilon(1e-6));
  CHECK(green_function(phi, 3, 0.5) == doctest::Approx(4.0 / (2.0 * kPi * kPi)).epsilon(1e-6));
  CHECK(green_function(phi, 3, 0.5) > green_function(phi, 3, 1.0));
  for (double alpha : {0.5, 1.5}) {
    for (double r : log_grid(1e-2, 1.0, 5)) {
      CHECK(green_function(Cbf::stable(alpha), 3, r) ==
            doctest::Approx(stable_green_closed_form(3, alpha, r)).epsilon(1e-3));
    }
  }
  CHECK(green_function(Cbf::stable(0.5), 1, 0.3) ==
        doctest::Approx(stable_green_closed_form(1, 0.5, 0.3)).epsilon(1e-5));
  CHECK_THROWS_AS(green_function(phi, 1, 1.0), DomainError);
}

TEST_CASE("stable jump kernel") {
  const auto phi = Cbf::stable(1.0);
  CHECK(jump_kernel(phi, 1, 1.0) == doctest::Approx(1.0 / kPi).epsilon(1e-7));
  CHECK(jump_kernel(phi, 1, 2.0) == doctest::Approx(0.25 / kPi).epsilon(1e-7));
  CHECK(jump_kernel(phi, 1, 1.0) > jump_kernel(phi, 1, 2.0));
  for (int d : {1, 2, 3}) {
    for (double alpha : {0.5, 1.5}) {
      CHECK(jump_kernel(Cbf::stable(alpha), d, 0.2) ==
            doctest::Approx(stable_jump_closed_form(d, alpha, 0.2)).epsilon(1e-6));
    }
  }
  const auto ds = j_doubling_and_shift(phi, 1, 1.0);
  CHECK(ds.c4 == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(std::isfinite(ds.c5));
  const auto rel = j_doubling_and_shift(Cbf::relativistic(1.0, 1.0), 1, 1.0, 10);
  CHECK(std::isfinite(rel.c4));
  CHECK(std::isfinite(rel.c5));
}

TEST_CASE("power law subordination limit") {
  const double r = 1e-3;
  const auto a = subordination_integral([](double t) { return std::pow(t, -0.5); }, 3, r);
  CHECK(a.value * std::pow(r, 2.0) ==
        doctest::Approx(power_law_limit_constant(3, 0.5)).epsilon(1e-3));
  CHECK(power_law_limit_constant(3, 0.5) == doctest::Approx(0.0897936).epsilon(1e-5));
  const auto b = subordination_integral([](double t) { return std::pow(t, -1.5); }, 1, r, 0.0);
  CHECK(b.value * std::pow(r, 2.0) ==
        doctest::Approx(power_law_limit_constant(1, 1.5)).epsilon(1e-3));
  CHECK(power_law_limit_constant(1, 1.5) == doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(1e-12));
  auto compact = [](double t) { return t < 1.0 ? std::pow(1.0 - t, 4) : 0.0; };
  CHECK(subordination_integral(compact, 3, 20.0).value <
        subordination_integral(compact, 3, 2.0).value);
  CHECK_THROWS_AS(subordination_integral(compact, 2, 1.0), DomainError);
}

TEST_CASE("tables are decreasing and thread independent") {
  const auto radii = log_grid(1e-2, 1.0, 12);
  for (const auto& phi : {Cbf::relativistic(1.0, 1.0), Cbf::log_down(1.0, 0.5),
                          Cbf::geometric_example(1.0)}) {
    const auto a = build_kernel_table(phi, 3, radii, 1);
    const auto b = build_kernel_table(phi, 3, radii, 3);
    CHECK(a.g_values == b.g_values);
    CHECK(a.j_values == b.j_values);
    for (std::size_t i = 1; i < radii.size(); ++i) {
      CHECK(a.g_values[i] < a.g_values[i - 1]);
      CHECK(a.j_values[i] < a.j_values[i - 1]);
    }
  }
  const auto rec = build_kernel_table(Cbf::stable(1.0), 1, radii);
  CHECK(rec.g_values.empty());
}

TEST_CASE("tolerance halving is self consistent") {
  const auto phi = Cbf::relativistic(1.0, 1.0);
  KernelOptions tight;
  tight.rel_tol = 5e-8;
  const double g1 = green_function(phi, 3, 0.3);
  const double g2 = green_function(phi, 3, 0.3, tight);
  CHECK(std::abs(g1 - g2) < 10.0 * 1e-7 * g1);
}

TEST_CASE("asymptotic ratios") {
  const auto grid = log_grid(1e-3, 1.0, 12);
  const auto g = g_asymptotic_ratio(Cbf::stable(1.0), 3, grid);
  CHECK(g.min == doctest::Approx(1.0 / (2.0 * kPi * kPi)).epsilon(1e-6));
  CHECK(g.spread() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(g_asymptotic_ratio(Cbf::relativistic(1.0, 1.0), 3, grid).spread() < 10.0);
  const auto j = j_asymptotic_ratio(Cbf::stable(1.0), 1, grid);
  CHECK(j.max == doctest::Approx(1.0 / kPi).epsilon(1e-6));
  CHECK(std::isfinite(j_asymptotic_ratio(Cbf::log_down(1.0, 0.5), 2, grid).spread()));
}
