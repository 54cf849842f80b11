#pragma once

#include <complex>
#include <string>
#include <vector>

#include "dihedral4/potentials.hpp"

namespace dihedral4 {

enum class CcKind { rectangular, tetrahedral };

struct ManifoldDims {
  int stable;
  int unstable;
  int stable_in_parabolic;
  int unstable_in_parabolic;
};

struct CentralConfiguration {
  CcKind kind;
  std::string label;
  SphereAngles angles;
  double u_value;    // potential at the point
  double vbar_pos;   // +sqrt(2U)
};

struct LinearizationReport {
  double lambda;  // second derivative of the section potential at the CC
  std::complex<double> mu1, mu2;
  ManifoldDims dims;
};

// All 20 central configurations: 4 equatorial + 8 prism (rectangular)
// and 8 tetrahedral, angles located by bracketed bisection + Newton polish
// on the section potential derivative (tolerance 1e-12 in angle).
std::vector<CentralConfiguration> enumerate_ccs(const Homogeneity& h);

// +-sqrt(2U) at the CC; closed forms from the paper's radicals.
struct VbarPair {
  double plus, minus;
};
VbarPair vbar(const Homogeneity& h, const CentralConfiguration& cc);
double vbar_planar_closed(double alpha);
double vbar_tetra_closed(double alpha);

// l(alpha) = v+(planar) - v+(tetra); nonnegative, increasing, l(0) = 0.
double vl_gap(double alpha);

// Both roots of mu^2 + (1-beta) vbar mu - lambda = 0.
std::pair<std::complex<double>, std::complex<double>> characteristic_exponents(
    const Homogeneity& h, double lambda, double vbar);

// Stable/unstable manifold dimensions with the parabolic-manifold
// intersection dimensions (sign = sign of vbar).
ManifoldDims manifold_dimensions(CcKind kind, int sign_vbar);

// Linearization of the 1-DOF section flow at the CC for the given vbar sign.
LinearizationReport linearize(const Homogeneity& h,
                              const CentralConfiguration& cc, int sign_vbar);

// Section the CC's own symmetric circle lives on.
Section cc_section(const CentralConfiguration& cc);

}  // namespace dihedral4
