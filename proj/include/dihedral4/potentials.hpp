#pragma once

#include <array>
#include <stdexcept>

#include "dihedral4/homogeneity.hpp"

namespace dihedral4 {

using Vec3 = std::array<double, 3>;

// Point on the shape sphere, y = sin(phi), z = cos(phi) e^{i theta}.
struct SphereAngles {
  double theta;
  double phi;
};

enum class Section { planar, tetra };

struct collision_ray_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- vector helpers -------------------------------------------------------

double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
Vec3 sphere_point(const SphereAngles& a);
SphereAngles section_point(Section s, double x);

// --- potential in its four representations --------------------------------

// U(q) = sum over the three nontrivial D2 elements of |q - gq|^{-alpha}.
// Throws collision_ray_error if q lies within 1e-10 of a collision ray.
double potential_cartesian(const Homogeneity& h, const Vec3& q);
Vec3 potential_cartesian_gradient(const Homogeneity& h, const Vec3& q);

// Covariant (sphere-tangential) gradient at unit |q|: dU/dq + alpha U q.
Vec3 sphere_gradient(const Homogeneity& h, const Vec3& s);

double potential_sphere(const Homogeneity& h, const SphereAngles& a);

// One-dimensional section restrictions.
double potential_planar(const Homogeneity& h, double theta);
double potential_tetra(const Homogeneity& h, double phi);
double section_potential(Section s, const Homogeneity& h, double x);

// Analytic d/dx and d2/dx2 of the section potentials (order in {1,2}).
double section_potential_derivative(Section s, const Homogeneity& h, double x,
                                    int order);

// --- regularized potentials W and the regularizing factors R --------------

// Planar: R = sin^alpha(2 theta), W = R U, finite on [0, pi/2].
// Tetra:  R = (2 cos phi)^alpha,  W = R U, finite on [-pi/2, pi/2].
double regularized_potential_planar(const Homogeneity& h, double theta);
double regularized_potential_planar_derivative(const Homogeneity& h,
                                               double theta);
double regularized_potential_tetra(const Homogeneity& h, double phi);
double regularized_potential_tetra_derivative(const Homogeneity& h,
                                              double phi);

double section_regularizer(Section s, const Homogeneity& h, double x);
double section_regularizer_derivative(Section s, const Homogeneity& h,
                                      double x);
double section_regularized_potential(Section s, const Homogeneity& h,
                                     double x);
double section_regularized_potential_derivative(Section s,
                                                const Homogeneity& h,
                                                double x);

// Section geometry: arms (binary-collision rays) and domain bounds.
double section_lower_arm(Section s);
double section_upper_arm(Section s);
double section_cc_angle(Section s);  // pi/4 resp. arctan(1/sqrt 2)

// 2 U(x) * eps^alpha evaluated stably at distance eps from the given arm;
// finite down to eps = 0. Used by the near-arm substituted charts.
double section_arm_scaled_2u(Section s, const Homogeneity& h, double arm,
                             double eps);

}  // namespace dihedral4
