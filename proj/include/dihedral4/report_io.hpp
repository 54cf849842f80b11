#pragma once

#include <string>

#include "dihedral4/central_configs.hpp"
#include "dihedral4/connections.hpp"
#include "dihedral4/estimates.hpp"
#include "dihedral4/flows.hpp"

namespace dihedral4 {

// All floating output is printed with 12 significant digits.
std::string format_double(double x);

// Trajectory CSV: `sigma,x,v,u,energy_residual` for regularized runs or
// `sigma,rho,v,sx,sy,sz,wx,wy,wz,energy_residual` for full runs; events
// appended as `# event,<sigma>,<kind>` comment lines.
std::string trajectory_csv(const Trajectory& t);

std::string cc_report_json(const Homogeneity& h);
std::string connection_graph_json(const ConnectionGraph& g);
std::string alpha_star_report_json(const AlphaStarReport& a0,
                                   const AlphaStarReport& a1);
std::string outcome_json(const Branch& br, const BranchOutcome& out,
                         double alpha);

std::string bound_table_markdown(const std::vector<BoundReport>& reports);
std::string bound_table_csv(const std::vector<BoundReport>& reports);

// Phase-portrait SVG of the (x, v) projection of a trajectory CSV, arms
// marked, restpoints dotted.
std::string trajectory_svg(const Trajectory& t, Section sec,
                           const Homogeneity& h);

}  // namespace dihedral4
