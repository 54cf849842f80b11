#pragma once

#include <stdexcept>

namespace dihedral4 {

// Exponent pair of the homogeneous potential U ~ r^{-alpha}, with the
// McGehee momentum-rescaling exponent beta = alpha/2.
struct Homogeneity {
  double alpha;
  double beta;

  static Homogeneity of(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
      throw std::domain_error("Homogeneity: alpha must lie in (0,2)");
    return Homogeneity{alpha, alpha / 2.0};
  }
};

}  // namespace dihedral4
