#include "dihedral4/potentials.hpp"

#include <cmath>

namespace dihedral4 {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCollisionTol = 1e-10;

double pow_neg(double base, double alpha) { return std::pow(base, -alpha); }

}  // namespace

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 sphere_point(const SphereAngles& a) {
  return {std::cos(a.phi) * std::cos(a.theta),
          std::cos(a.phi) * std::sin(a.theta), std::sin(a.phi)};
}

SphereAngles section_point(Section s, double x) {
  if (s == Section::planar) return {x, 0.0};
  return {kPi / 4.0, x};
}

// The three pair separations |q - gq| are 2*sqrt(q1^2+q2^2), 2*sqrt(q2^2+q3^2)
// and 2*sqrt(q1^2+q3^2) for g = zeta2, kappa, zeta2*kappa.
double potential_cartesian(const Homogeneity& h, const Vec3& q) {
  const double d12 = std::hypot(q[0], q[1]);
  const double d23 = std::hypot(q[1], q[2]);
  const double d13 = std::hypot(q[0], q[2]);
  if (d12 < kCollisionTol || d23 < kCollisionTol || d13 < kCollisionTol)
    throw collision_ray_error("potential_cartesian: configuration on a collision ray");
  return pow_neg(2.0 * d12, h.alpha) + pow_neg(2.0 * d23, h.alpha) +
         pow_neg(2.0 * d13, h.alpha);
}

Vec3 potential_cartesian_gradient(const Homogeneity& h, const Vec3& q) {
  const double d12sq = q[0] * q[0] + q[1] * q[1];
  const double d23sq = q[1] * q[1] + q[2] * q[2];
  const double d13sq = q[0] * q[0] + q[2] * q[2];
  if (d12sq < kCollisionTol * kCollisionTol ||
      d23sq < kCollisionTol * kCollisionTol ||
      d13sq < kCollisionTol * kCollisionTol)
    throw collision_ray_error("potential_cartesian_gradient: configuration on a collision ray");
  // d/dq of (2 sqrt(pair))^{-alpha} = -alpha (2 sqrt)^{-alpha} q_pair / pair.
  const double a = h.alpha;
  const double c12 = -a * pow_neg(2.0 * std::sqrt(d12sq), a) / d12sq;
  const double c23 = -a * pow_neg(2.0 * std::sqrt(d23sq), a) / d23sq;
  const double c13 = -a * pow_neg(2.0 * std::sqrt(d13sq), a) / d13sq;
  return {q[0] * (c12 + c13), q[1] * (c12 + c23), q[2] * (c23 + c13)};
}

Vec3 sphere_gradient(const Homogeneity& h, const Vec3& s) {
  const Vec3 g = potential_cartesian_gradient(h, s);
  const double u = potential_cartesian(h, s);
  return {g[0] + h.alpha * u * s[0], g[1] + h.alpha * u * s[1],
          g[2] + h.alpha * u * s[2]};
}

double potential_sphere(const Homogeneity& h, const SphereAngles& a) {
  const double cphi = std::cos(a.phi);
  const double tphi = std::tan(a.phi);
  const double c2 = std::cos(a.theta) * std::cos(a.theta) + tphi * tphi;
  const double s2 = std::sin(a.theta) * std::sin(a.theta) + tphi * tphi;
  if (cphi <= 0.0 || c2 < kCollisionTol || s2 < kCollisionTol)
    throw collision_ray_error("potential_sphere: singular direction");
  return pow_neg(2.0 * cphi, h.alpha) *
         (1.0 + std::pow(c2, -h.alpha / 2.0) + std::pow(s2, -h.alpha / 2.0));
}

double potential_planar(const Homogeneity& h, double theta) {
  const double s = std::fabs(std::sin(theta));
  const double c = std::fabs(std::cos(theta));
  if (s < kCollisionTol || c < kCollisionTol)
    throw collision_ray_error("potential_planar: theta at a collision arm");
  return pow_neg(2.0, h.alpha) *
         (1.0 + pow_neg(s, h.alpha) + pow_neg(c, h.alpha));
}

double potential_tetra(const Homogeneity& h, double phi) {
  const double c = std::cos(phi);
  if (c < kCollisionTol)
    throw collision_ray_error("potential_tetra: phi at a collision arm");
  const double s2 = std::sin(phi) * std::sin(phi);
  return pow_neg(2.0 * c, h.alpha) +
         std::pow(2.0, 1.0 - h.beta) * std::pow(1.0 + s2, -h.beta);
}

double section_potential(Section s, const Homogeneity& h, double x) {
  return s == Section::planar ? potential_planar(h, x) : potential_tetra(h, x);
}

double section_potential_derivative(Section sec, const Homogeneity& h,
                                    double x, int order) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("section_potential_derivative: order must be 1 or 2");
  const double a = h.alpha;
  if (sec == Section::planar) {
    const double s = std::sin(x), c = std::cos(x);
    if (std::fabs(s) < kCollisionTol || std::fabs(c) < kCollisionTol)
      throw collision_ray_error("section_potential_derivative: arm");
    const double k = a * std::pow(2.0, -a);
    if (order == 1)
      return k * (s * std::pow(c, -a - 1.0) - c * std::pow(s, -a - 1.0));
    return k * (std::pow(s, -a) + std::pow(c, -a) +
                (a + 1.0) * (c * c * std::pow(s, -a - 2.0) +
                             s * s * std::pow(c, -a - 2.0)));
  }
  // tetra: U = A + B with A = (2 cos phi)^{-alpha},
  // B = 2^{1-beta} (1+sin^2 phi)^{-beta}
  const double c = std::cos(x), s = std::sin(x);
  if (c < kCollisionTol)
    throw collision_ray_error("section_potential_derivative: arm");
  const double A = pow_neg(2.0 * c, a);
  const double D = 1.0 + s * s;
  const double B = std::pow(2.0, 1.0 - h.beta) * std::pow(D, -h.beta);
  const double t = s / c;
  const double s2x = 2.0 * s * c;  // sin(2 phi)
  if (order == 1) return a * A * t - h.beta * B * s2x / D;
  const double c2x = c * c - s * s;  // cos(2 phi)
  const double App = A * a * (a * t * t + 1.0 / (c * c));
  const double Bpp = h.beta * h.beta * B * s2x * s2x / (D * D) -
                     h.beta * B * (2.0 * c2x * D - s2x * s2x) / (D * D);
  return App + Bpp;
}

double regularized_potential_planar(const Homogeneity& h, double theta) {
  const double s = std::fabs(std::sin(theta));
  const double c = std::fabs(std::cos(theta));
  const double a = h.alpha;
  return std::pow(s, a) * std::pow(c, a) + std::pow(s, a) + std::pow(c, a);
}

double regularized_potential_planar_derivative(const Homogeneity& h,
                                               double theta) {
  // W = (sin c cos)^a + sin^a + cos^a;
  // W' = a [ (sin cos)^{a-1} cos(2t) + sin^{a-1} cos - cos^{a-1} sin ].
  const double s = std::sin(theta), c = std::cos(theta);
  const double a = h.alpha;
  const double sc = s * c;
  return a * (std::pow(std::fabs(sc), a - 1.0) * (c * c - s * s) *
                  (sc >= 0.0 ? 1.0 : -1.0) +
              std::pow(std::fabs(s), a - 1.0) * (s >= 0.0 ? 1.0 : -1.0) * c -
              std::pow(std::fabs(c), a - 1.0) * (c >= 0.0 ? 1.0 : -1.0) * s);
}

double regularized_potential_tetra(const Homogeneity& h, double phi) {
  const double c = std::cos(phi);
  const double D = 1.0 + std::sin(phi) * std::sin(phi);
  return 1.0 + std::pow(2.0, 1.0 + h.beta) * std::pow(std::fabs(c), h.alpha) *
                   std::pow(D, -h.beta);
}

double regularized_potential_tetra_derivative(const Homogeneity& h,
                                              double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  const double D = 1.0 + s * s;
  return -std::pow(2.0, 2.0 + h.beta) * h.alpha * s *
         std::pow(std::fabs(c), h.alpha - 1.0) * (c >= 0.0 ? 1.0 : -1.0) /
         std::pow(D, h.beta + 1.0);
}

double section_regularizer(Section sec, const Homogeneity& h, double x) {
  if (sec == Section::planar)
    return std::pow(std::fabs(std::sin(2.0 * x)), h.alpha);
  return std::pow(2.0 * std::fabs(std::cos(x)), h.alpha);
}

double section_regularizer_derivative(Section sec, const Homogeneity& h,
                                      double x) {
  if (sec == Section::planar) {
    const double s = std::sin(2.0 * x);
    return 2.0 * h.alpha * std::cos(2.0 * x) *
           std::pow(std::fabs(s), h.alpha - 1.0) * (s >= 0.0 ? 1.0 : -1.0);
  }
  const double c = std::cos(x);
  return -2.0 * h.alpha * std::sin(x) *
         std::pow(2.0 * std::fabs(c), h.alpha - 1.0) * (c >= 0.0 ? 1.0 : -1.0);
}

double section_regularized_potential(Section sec, const Homogeneity& h,
                                     double x) {
  return sec == Section::planar ? regularized_potential_planar(h, x)
                                : regularized_potential_tetra(h, x);
}

double section_regularized_potential_derivative(Section sec,
                                                const Homogeneity& h,
                                                double x) {
  return sec == Section::planar
             ? regularized_potential_planar_derivative(h, x)
             : regularized_potential_tetra_derivative(h, x);
}

double section_lower_arm(Section s) {
  return s == Section::planar ? 0.0 : -kPi / 2.0;
}

double section_upper_arm(Section s) { return kPi / 2.0; }

double section_cc_angle(Section s) {
  return s == Section::planar ? kPi / 4.0 : std::atan(1.0 / std::sqrt(2.0));
}

double section_arm_scaled_2u(Section sec, const Homogeneity& h, double arm,
                             double eps) {
  const double a = h.alpha;
  if (sec == Section::planar) {
    // both arms look alike: 2 U(eps-away) * eps^a
    //   = 2^{1-a} [eps^a + (eps/sin eps)^a + eps^a / cos^a eps]
    const double r = eps == 0.0 ? 1.0 : eps / std::sin(eps);
    return std::pow(2.0, 1.0 - a) *
           (std::pow(eps, a) + std::pow(r, a) +
            std::pow(eps, a) * std::pow(std::cos(eps), -a));
  }
  (void)arm;  // tetra arms are mirror images
  const double r = eps == 0.0 ? 1.0 : eps / std::sin(eps);
  const double c = std::cos(eps);
  return 2.0 * (std::pow(2.0, -a) * std::pow(r, a) +
                std::pow(eps, a) * std::pow(2.0, 1.0 - h.beta) *
                    std::pow(1.0 + c * c, -h.beta));
}

}  // namespace dihedral4
