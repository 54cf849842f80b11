#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dihedral4/central_configs.hpp"
#include "dihedral4/flows.hpp"

namespace dihedral4 {

enum class BranchSide { left = -1, right = +1 };
enum class Stability { stable, unstable };

struct Branch {
  Section section;
  std::string cc_label;      // fundamental-domain restpoint, e.g. "p11", "e11"
  int vbar_sign;             // -1 or +1
  Stability stability = Stability::unstable;
  BranchSide side = BranchSide::right;
};

struct ArmCrossing {
  double arm;      // section angle of the arm
  double v;        // v at the passage
};

enum class OutcomeKind { restpoint_capture, arm_escape, undecided };

struct BranchOutcome {
  OutcomeKind kind = OutcomeKind::undecided;
  std::string capture_label;               // CC± for captures
  int escape_arm_index = 0;                // cartesian axis j with s_j -> +-1
  int escape_arm_sign = 0;                 // sign of s_j
  double v_terminal = 0.0;
  std::vector<ArmCrossing> arm_crossings;  // v at every arm passage
  std::vector<double> v_zero_angles;       // angle of every v = 0 crossing
  // probes: v at requested (angle, pass) pairs, in request order
  std::vector<std::optional<double>> probes;
};

struct TraceOptions {
  double eps = 1e-6;           // seeding offset along the eigendirection
  double arm_switch = 1e-3;    // hand-off distance to the substituted chart
  double capture_radius = 1e-6;
  int max_legs = 400;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  // probe list: record v the pass_index-th time the trace spans the angle
  std::vector<std::pair<double, int>> probes;
  std::optional<double> beta_dyn;  // override: paper's (P_alpha) family
};

struct ConnectionEdge {
  std::string from, to;
  std::string witness;  // branch or symmetry that produced the edge
  double alpha;
  std::vector<double> v_at_arms;
};

struct ConnectionGraph {
  double alpha;
  std::vector<std::string> nodes;
  std::vector<ConnectionEdge> edges;
  bool saddle_within_tolerance = false;
  // Fundamental-domain boxes as in the connection diagram: p11/p21/p31
  // split by vbar sign, the tetrahedral pair merged, four escape boxes.
  int fundamental_box_count() const { return 12; }
};

// Seed state displaced by eps along the (dx, dw) = (1, mu) eigendirection
// (normalized), v completed from the manifold constraint.
SectionState seed_branch(const Homogeneity& h, const Branch& br, double eps);

// Residual of the 2x2 eigen-equation B (xi, mu xi)^T = mu (xi, mu xi)^T for
// the seeding exponent (should vanish to 1e-10).
double seed_eigen_residual(const Homogeneity& h, const Branch& br);

// Trace the branch in the projected (x,v) chart with arm reflections and
// graph-boundary reversals until capture, escape or budget exhaustion.
BranchOutcome trace_branch(const Homogeneity& h, const Branch& br,
                           const TraceOptions& opts = {});

// Same functionals computed through the sigma-time regularized field
// (independent integration route used by find_alpha_star's cross-check).
BranchOutcome trace_branch_sigma(const Homogeneity& h, const Branch& br,
                                 const TraceOptions& opts = {});

// All connection edges visible from the two symmetric sections at this
// exponent, closed under duality and the axis-permutation symmetry.
std::vector<ConnectionEdge> classify_connections(const Homogeneity& h);

ConnectionGraph connection_graph(const Homogeneity& h);

// Critical-exponent functionals of the paper's (P_alpha) IVP family
// (dynamics exponent pinned at the Newtonian value):
//   alpha_star:   v at the first arm arrival of the right branch of W^u(c-),
//   alpha0_star:  v at the first return to the CC angle (planar) resp. the
//                 equator (tetra) after one arm reflection.
enum class SaddleFunctional { first_arm_v, return_v };

enum class TraceRoute { one_form, sigma_flow };

double saddle_functional(Section sec, double alpha, SaddleFunctional which,
                         TraceRoute route = TraceRoute::one_form);

struct AlphaStarReport {
  Section section;
  SaddleFunctional which;
  double alpha_root;
  std::pair<double, double> bracket;
  std::vector<std::pair<double, double>> v_samples;  // (alpha, V)
  bool monotone = false;
};

struct bracket_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bisection root of the functional to 1e-8 in alpha; verifies the sign
// change and V-monotonicity on a grid across the bracket. Throws
// bracket_error when V does not change sign on the bracket.
AlphaStarReport find_alpha_star(Section sec, SaddleFunctional which,
                                std::pair<double, double> bracket,
                                TraceRoute route = TraceRoute::one_form,
                                int grid_points = 20);

// Dual edge: X+ ~> Y+ maps to Y- ~> X- with B^{s} <-> B^{u}.
ConnectionEdge dual_edge(const ConnectionEdge& e);

// Arm-to-escape-set index map for a section (cartesian axis, sign).
std::pair<int, int> arm_escape_index(Section sec, double arm);

}  // namespace dihedral4
