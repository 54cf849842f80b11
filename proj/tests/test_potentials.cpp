#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "dihedral4/potentials.hpp"

using namespace dihedral4;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSq2 = std::sqrt(2.0);
const double kPhi1 = std::atan(1.0 / kSq2);

// Richardson-extrapolated central differences for the derivative checks.
double fd1(const std::function<double(double)>& f, double x, double h0 = 1e-4) {
  auto d = [&](double h) { return (f(x + h) - f(x - h)) / (2.0 * h); };
  return (4.0 * d(h0 / 2.0) - d(h0)) / 3.0;
}
double fd2(const std::function<double(double)>& f, double x, double h0 = 1e-3) {
  return (-f(x + 2 * h0) + 16 * f(x + h0) - 30 * f(x) + 16 * f(x - h0) -
          f(x - 2 * h0)) /
         (12.0 * h0 * h0);
}

}  // namespace

TEST_CASE("cartesian potential reproduces the planar section values") {
  const auto h = Homogeneity::of(1.0);
  const Vec3 q{std::cos(kPi / 4), std::sin(kPi / 4), 0.0};
  CHECK(potential_cartesian(h, q) == doctest::Approx(0.5 + kSq2).epsilon(1e-14));
  CHECK(2.0 * potential_cartesian(h, q) ==
        doctest::Approx(1.0 + 2.0 * kSq2).epsilon(1e-14));
}

TEST_CASE("cartesian potential at the tetrahedral configuration") {
  const auto h = Homogeneity::of(1.0);
  const double c = std::cos(kPhi1);
  const Vec3 q{c * std::cos(kPi / 4), c * std::sin(kPi / 4), std::sin(kPhi1)};
  CHECK(potential_cartesian(h, q) ==
        doctest::Approx(0.75 * std::sqrt(6.0)).epsilon(1e-14));
}

TEST_CASE("homogeneity of degree -alpha") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(0.2, 1.2);
  for (double alpha : {0.5, 1.0, 1.5}) {
    const auto h = Homogeneity::of(alpha);
    for (int i = 0; i < 20; ++i) {
      const SphereAngles a{ang(rng), ang(rng) - 0.7};
      const Vec3 s = sphere_point(a);
      const double u1 = potential_cartesian(h, s);
      for (double c : {0.5, 2.0, 10.0}) {
        const Vec3 sc{c * s[0], c * s[1], c * s[2]};
        CHECK(potential_cartesian(h, sc) ==
              doctest::Approx(std::pow(c, -alpha) * u1).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("sphere and cartesian representations agree") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> th(0.05, kPi / 2 - 0.05);
  std::uniform_real_distribution<double> ph(0.05, kPi / 2 - 0.1);
  std::uniform_real_distribution<double> al(0.2, 1.8);
  std::uniform_int_distribution<int> sgn(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const auto h = Homogeneity::of(al(rng));
    const SphereAngles a{th(rng), ph(rng) * (sgn(rng) ? 1.0 : -1.0)};
    const double us = potential_sphere(h, a);
    const double uc = potential_cartesian(h, sphere_point(a));
    CHECK(us == doctest::Approx(uc).epsilon(1e-12));
  }
}

TEST_CASE("sphere potential at the section points") {
  const auto h = Homogeneity::of(1.0);
  CHECK(potential_sphere(h, {kPi / 4, 0.0}) ==
        doctest::Approx(0.5 + kSq2).epsilon(1e-14));
  CHECK(potential_sphere(h, {kPi / 4, kPhi1}) ==
        doctest::Approx(0.75 * std::sqrt(6.0)).epsilon(1e-13));
  CHECK(potential_sphere(h, {kPi / 4, kPhi1}) ==
        doctest::Approx(1.83712).epsilon(1e-5));
}

TEST_CASE("reflection symmetries of the sphere potential") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(0.1, kPi / 2 - 0.1);
  std::uniform_real_distribution<double> ph(0.08, kPi / 2 - 0.1);
  for (double alpha : {0.5, 1.0, 1.5}) {
    const auto h = Homogeneity::of(alpha);
    for (int i = 0; i < 50; ++i) {
      const double t = th(rng), p = ph(rng);
      const double u = potential_sphere(h, {t, p});
      CHECK(potential_sphere(h, {t, -p}) == doctest::Approx(u).epsilon(1e-12));
      CHECK(potential_sphere(h, {-t, p}) == doctest::Approx(u).epsilon(1e-12));
      CHECK(potential_sphere(h, {kPi / 2 - t, p}) ==
            doctest::Approx(u).epsilon(1e-12));
    }
  }
}

TEST_CASE("section potentials match the sphere restriction") {
  const auto h = Homogeneity::of(1.0);
  CHECK(potential_planar(h, kPi / 4) ==
        doctest::Approx(0.5 + kSq2).epsilon(1e-14));
  CHECK(potential_tetra(h, 0.0) ==
        doctest::Approx(potential_planar(h, kPi / 4)).epsilon(1e-14));
  CHECK(potential_tetra(h, kPhi1) ==
        doctest::Approx(0.75 * std::sqrt(6.0)).epsilon(1e-14));
  for (double x : {0.3, 0.7, 1.1}) {
    CHECK(potential_planar(h, x) ==
          doctest::Approx(potential_sphere(h, {x, 0.0})).epsilon(1e-13));
    CHECK(potential_tetra(h, x - 0.8) ==
          doctest::Approx(potential_sphere(h, {kPi / 4, x - 0.8}))
              .epsilon(1e-13));
  }
}

TEST_CASE("collision-ray guards") {
  const auto h = Homogeneity::of(1.0);
  CHECK_THROWS_AS(potential_cartesian(h, {0.0, 0.0, 1.0}), collision_ray_error);
  CHECK_THROWS_AS(potential_planar(h, 0.0), collision_ray_error);
  CHECK_THROWS_AS(potential_tetra(h, kPi / 2), collision_ray_error);
}

TEST_CASE("regularized potentials: arm values and products") {
  for (double alpha : {0.4, 1.0, 1.6}) {
    const auto h = Homogeneity::of(alpha);
    CHECK(regularized_potential_planar(h, 0.0) == doctest::Approx(1.0));
    CHECK(regularized_potential_planar(h, kPi / 2) == doctest::Approx(1.0));
    CHECK(regularized_potential_tetra(h, kPi / 2) == doctest::Approx(1.0));
    CHECK(regularized_potential_tetra(h, -kPi / 2) == doctest::Approx(1.0));
    for (double x = 0.05; x < kPi / 2; x += 0.11) {
      const double w = regularized_potential_planar(h, x);
      const double prod =
          section_regularizer(Section::planar, h, x) * potential_planar(h, x);
      CHECK(w == doctest::Approx(prod).epsilon(1e-12));
      const double wt = regularized_potential_tetra(h, x - 0.6);
      const double prodt = section_regularizer(Section::tetra, h, x - 0.6) *
                           potential_tetra(h, x - 0.6);
      CHECK(wt == doctest::Approx(prodt).epsilon(1e-12));
    }
  }
  const auto h1 = Homogeneity::of(1.0);
  CHECK(regularized_potential_planar(h1, kPi / 4) ==
        doctest::Approx(0.5 + kSq2).epsilon(1e-14));
  CHECK(regularized_potential_tetra(h1, 0.0) ==
        doctest::Approx(1.0 + 2.0 * kSq2).epsilon(1e-14));
}

TEST_CASE("analytic derivatives match finite differences") {
  for (double alpha : {0.5, 1.0, 1.3, 1.8}) {
    const auto h = Homogeneity::of(alpha);
    for (double x = 0.25; x < 1.35; x += 0.15) {
      auto upl = [&](double t) { return potential_planar(h, t); };
      CHECK(section_potential_derivative(Section::planar, h, x, 1) ==
            doctest::Approx(fd1(upl, x)).epsilon(1e-6));
      CHECK(section_potential_derivative(Section::planar, h, x, 2) ==
            doctest::Approx(fd2(upl, x)).epsilon(1e-6));
      const double p = x - 0.8;
      auto ute = [&](double t) { return potential_tetra(h, t); };
      CHECK(section_potential_derivative(Section::tetra, h, p, 1) ==
            doctest::Approx(fd1(ute, p)).epsilon(1e-6));
      CHECK(section_potential_derivative(Section::tetra, h, p, 2) ==
            doctest::Approx(fd2(ute, p)).epsilon(1e-6));
      auto wpl = [&](double t) { return regularized_potential_planar(h, t); };
      CHECK(regularized_potential_planar_derivative(h, x) ==
            doctest::Approx(fd1(wpl, x)).epsilon(1e-6));
      auto wte = [&](double t) { return regularized_potential_tetra(h, t); };
      CHECK(regularized_potential_tetra_derivative(h, p) ==
            doctest::Approx(fd1(wte, p)).epsilon(1e-6));
      auto rpl = [&](double t) {
        return section_regularizer(Section::planar, h, t);
      };
      CHECK(section_regularizer_derivative(Section::planar, h, x) ==
            doctest::Approx(fd1(rpl, x)).epsilon(1e-6));
      auto rte = [&](double t) {
        return section_regularizer(Section::tetra, h, t);
      };
      CHECK(section_regularizer_derivative(Section::tetra, h, p) ==
            doctest::Approx(fd1(rte, p)).epsilon(1e-6));
    }
  }
}

TEST_CASE("critical points of the section potentials") {
  const auto h = Homogeneity::of(1.0);
  CHECK(section_potential_derivative(Section::planar, h, kPi / 4, 1) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(section_potential_derivative(Section::planar, h, kPi / 4, 2) ==
        doctest::Approx(3.0 * kSq2).epsilon(1e-13));
  auto upl = [&](double t) { return potential_planar(h, t); };
  CHECK(fd2(upl, kPi / 4) == doctest::Approx(3.0 * kSq2).epsilon(1e-7));
  CHECK(section_potential_derivative(Section::tetra, h, kPhi1, 1) ==
        doctest::Approx(0.0).epsilon(1e-14));
  auto ute = [&](double t) { return potential_tetra(h, t); };
  CHECK(fd1(ute, kPhi1) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(regularized_potential_planar_derivative(h, kPi / 4) ==
        doctest::Approx(0.0).epsilon(1e-13));
  for (double alpha : {0.5, 1.5}) {
    const auto ha = Homogeneity::of(alpha);
    CHECK(regularized_potential_tetra_derivative(ha, 0.0) ==
          doctest::Approx(0.0));
  }
}

TEST_CASE("arm-scaled 2U is finite at the arm and matches the potential") {
  for (double alpha : {0.5, 1.0, 1.5}) {
    const auto h = Homogeneity::of(alpha);
    for (double eps : {1e-2, 1e-4, 1e-6}) {
      const double lhs = section_arm_scaled_2u(Section::planar, h, kPi / 2, eps);
      const double rhs =
          2.0 * potential_planar(h, kPi / 2 - eps) * std::pow(eps, alpha);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
      const double lt = section_arm_scaled_2u(Section::tetra, h, kPi / 2, eps);
      const double rt =
          2.0 * potential_tetra(h, kPi / 2 - eps) * std::pow(eps, alpha);
      CHECK(lt == doctest::Approx(rt).epsilon(1e-10));
    }
    CHECK(std::isfinite(section_arm_scaled_2u(Section::planar, h, 0.0, 0.0)));
    CHECK(section_arm_scaled_2u(Section::planar, h, 0.0, 0.0) ==
          doctest::Approx(std::pow(2.0, 1.0 - alpha)));
  }
}

TEST_CASE("covariant sphere gradient vanishes only at central configurations") {
  const auto h = Homogeneity::of(1.0);
  const Vec3 cc = sphere_point({kPi / 4, 0.0});
  CHECK(norm(sphere_gradient(h, cc)) < 1e-13);
  const Vec3 off = sphere_point({0.6, 0.1});
  CHECK(norm(sphere_gradient(h, off)) > 1e-3);
}
