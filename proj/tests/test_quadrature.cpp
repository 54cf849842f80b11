#include <doctest.h>

#include <cmath>
#include <random>

#include "dihedral4/quadrature.hpp"

using namespace dihedral4;

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kSq2 = std::sqrt(2.0);
}  // namespace

TEST_CASE("closed form reduces to sqrt(b) x when a = 0") {
  for (double x : {0.1, 1.0, 3.0})
    CHECK(quad::sqrt_affine_integral(0.0, 4.0, x) ==
          doctest::Approx(2.0 * x).epsilon(1e-14));
}

TEST_CASE("closed-form derivative equals the integrand") {
  // d/dx at x = 1, a = b = 1 is sqrt(2)
  const double hstep = 1e-6;
  const double d = (quad::sqrt_affine_antiderivative(1.0, 1.0, 1.0 + hstep) -
                    quad::sqrt_affine_antiderivative(1.0, 1.0, 1.0 - hstep)) /
                   (2.0 * hstep);
  CHECK(d == doctest::Approx(kSq2).epsilon(1e-9));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> par(0.01, 10.0);
  for (int i = 0; i < 40; ++i) {
    const double a = par(rng), b = par(rng), x = par(rng);
    const double num =
        (quad::sqrt_affine_antiderivative(a, b, x + 1e-6) -
         quad::sqrt_affine_antiderivative(a, b, x - 1e-6)) /
        2e-6;
    CHECK(num == doctest::Approx(std::sqrt(a / x + b)).epsilon(1e-8));
  }
}

TEST_CASE("closed form rejects nonpositive b") {
  CHECK_THROWS_AS(quad::sqrt_affine_antiderivative(1.0, 0.0, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(quad::sqrt_affine_antiderivative(1.0, -2.0, 1.0),
                  std::domain_error);
}

TEST_CASE("closed form agrees with adaptive quadrature on the v1 integral") {
  const double a = kPi * kSq2 / 4.0, b = 1.0 + kSq2;
  const double closed = quad::sqrt_affine_integral(a, b, kPi / 4.0);
  const double numeric = quad::sqrt_power_integral(a, b, 0.5, kPi / 4.0);
  CHECK(closed == doctest::Approx(numeric).epsilon(1e-10));
}

TEST_CASE("adaptive Gauss-Kronrod on known integrals") {
  CHECK(quad::adaptive_gauss_kronrod([](double x) { return std::sin(x); }, 0.0,
                                     kPi) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(quad::adaptive_gauss_kronrod([](double x) { return std::exp(-x * x); },
                                     -8.0, 8.0) ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
}

TEST_CASE("singular-endpoint integral against substitution-free values") {
  // int_0^X Phi^{-2 beta/2...}: c Phi^{-2b} with d = 0 integrates to
  // sqrt(c) X^{1-b} / (1-b)
  for (double b : {0.25, 0.5, 0.75}) {
    const double X = 0.7, c = 2.3;
    CHECK(quad::sqrt_power_integral(c, 0.0, b, X) ==
          doctest::Approx(std::sqrt(c) * std::pow(X, 1.0 - b) / (1.0 - b))
              .epsilon(1e-12));
  }
  // negative d stays valid while the radicand is nonnegative
  const double v = quad::sqrt_power_integral(1.0, 1.0 - 2.0 * kSq2, 0.5,
                                             kPi / 8.0);
  CHECK(std::isfinite(v));
  CHECK(v > 0.0);
}
