#include "dihedral4/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace dihedral4 {

using nlohmann::json;

namespace {

// round-trip through 12 significant digits so every emitted number obeys
// the fixed formatting rule, JSON included
double round12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json jnum(double x) { return json(round12(x)); }

const char* event_name(EventKind k) {
  switch (k) {
    case EventKind::arm_proximity: return "arm";
    case EventKind::v_zero: return "v_zero";
    case EventKind::section_crossing: return "section";
    default: return "custom";
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string trajectory_csv(const Trajectory& t) {
  std::ostringstream os;
  const bool full = !t.state.empty() && t.state.front().size() == 8;
  os << (full ? "sigma,rho,v,sx,sy,sz,wx,wy,wz,energy_residual"
              : "sigma,x,v,u,energy_residual")
     << "\n";
  for (std::size_t i = 0; i < t.sigma.size(); ++i) {
    os << format_double(t.sigma[i]);
    for (double c : t.state[i]) os << ',' << format_double(c);
    os << ',' << format_double(t.energy_residual[i]) << "\n";
  }
  for (const auto& e : t.events)
    os << "# event," << format_double(e.sigma) << ',' << event_name(e.kind)
       << "\n";
  return os.str();
}

std::string cc_report_json(const Homogeneity& h) {
  json arr = json::array();
  for (const auto& cc : enumerate_ccs(h)) {
    for (int sign : {+1, -1}) {
      const auto lin = linearize(h, cc, sign);
      json e;
      e["label"] = cc.label + (sign > 0 ? "+" : "-");
      e["kind"] = cc.kind == CcKind::rectangular ? "rectangular" : "tetrahedral";
      e["theta"] = jnum(cc.angles.theta);
      e["phi"] = jnum(cc.angles.phi);
      e["U"] = jnum(cc.u_value);
      e["vbar"] = jnum(sign > 0 ? cc.vbar_pos : -cc.vbar_pos);
      e["lambda"] = jnum(lin.lambda);
      e["mu"] = json::array({json::array({jnum(lin.mu1.real()), jnum(lin.mu1.imag())}),
                             json::array({jnum(lin.mu2.real()), jnum(lin.mu2.imag())})});
      e["dims"] = {{"stable", lin.dims.stable},
                   {"unstable", lin.dims.unstable},
                   {"stable_in_parabolic", lin.dims.stable_in_parabolic},
                   {"unstable_in_parabolic", lin.dims.unstable_in_parabolic}};
      arr.push_back(e);
    }
  }
  json root;
  root["alpha"] = jnum(h.alpha);
  root["central_configurations"] = arr;
  return root.dump(2) + "\n";
}

std::string connection_graph_json(const ConnectionGraph& g) {
  json root;
  root["alpha"] = jnum(g.alpha);
  root["nodes"] = g.nodes;
  root["fundamental_boxes"] = g.fundamental_box_count();
  root["saddle_within_tolerance"] = g.saddle_within_tolerance;
  json edges = json::array();
  for (const auto& e : g.edges) {
    json je;
    je["from"] = e.from;
    je["to"] = e.to;
    je["branch"] = e.witness;
    json arms = json::array();
    for (double v : e.v_at_arms) arms.push_back(jnum(v));
    je["v_at_arms"] = arms;
    edges.push_back(je);
  }
  root["edges"] = edges;
  return root.dump(2) + "\n";
}

std::string alpha_star_report_json(const AlphaStarReport& a0,
                                   const AlphaStarReport& a1) {
  json root;
  root["section"] = a0.section == Section::planar ? "planar" : "tetra";
  root["alpha0_star"] = jnum(a0.alpha_root);
  root["alpha_star"] = jnum(a1.alpha_root);
  auto rep = [](const AlphaStarReport& r) {
    json j;
    j["bracket"] = json::array({jnum(r.bracket.first), jnum(r.bracket.second)});
    json vs = json::array();
    for (const auto& [a, v] : r.v_samples)
      vs.push_back(json::array({jnum(a), jnum(v)}));
    j["V_samples"] = vs;
    j["monotone"] = r.monotone;
    return j;
  };
  root["alpha0_star_detail"] = rep(a0);
  root["alpha_star_detail"] = rep(a1);
  return root.dump(2) + "\n";
}

std::string outcome_json(const Branch& br, const BranchOutcome& out,
                         double alpha) {
  json root;
  root["alpha"] = jnum(alpha);
  root["section"] = br.section == Section::planar ? "planar" : "tetra";
  root["from"] = br.cc_label + (br.vbar_sign > 0 ? "+" : "-");
  root["side"] = br.side == BranchSide::right ? "right" : "left";
  switch (out.kind) {
    case OutcomeKind::restpoint_capture:
      root["outcome"] = "restpoint_capture";
      root["capture"] = out.capture_label;
      break;
    case OutcomeKind::arm_escape:
      root["outcome"] = "arm_escape";
      root["escape_set"] = "B" + std::to_string(out.escape_arm_index) +
                           (out.escape_arm_sign > 0 ? "s+" : "s-");
      break;
    default:
      root["outcome"] = "undecided";
  }
  root["v_terminal"] = jnum(out.v_terminal);
  json arms = json::array();
  for (const auto& c : out.arm_crossings)
    arms.push_back(json::array({jnum(c.arm), jnum(c.v)}));
  root["arm_crossings"] = arms;
  json zeros = json::array();
  for (double a : out.v_zero_angles) zeros.push_back(jnum(a));
  root["v_zero_angles"] = zeros;
  return root.dump(2) + "\n";
}

std::string bound_table_markdown(const std::vector<BoundReport>& reports) {
  std::ostringstream os;
  os << "| name | step | direction | computed | paper | diff | status |\n";
  os << "|---|---|---|---|---|---|---|\n";
  for (const auto& r : reports) {
    os << "| " << r.name << " | " << r.step << " | "
       << (r.direction == BoundDirection::upper ? "upper" : "lower") << " | "
       << format_double(r.computed) << " | " << format_double(r.paper_value)
       << " | " << format_double(std::fabs(r.computed - r.paper_value))
       << " | " << (r.status == BoundStatus::match ? "MATCH" : "DISPUTED")
       << " |\n";
  }
  return os.str();
}

std::string bound_table_csv(const std::vector<BoundReport>& reports) {
  std::ostringstream os;
  os << "name,step,direction,computed,paper,diff,status,note\n";
  for (const auto& r : reports) {
    os << r.name << ",\"" << r.step << "\","
       << (r.direction == BoundDirection::upper ? "upper" : "lower") << ','
       << format_double(r.computed) << ',' << format_double(r.paper_value)
       << ',' << format_double(std::fabs(r.computed - r.paper_value)) << ','
       << (r.status == BoundStatus::match ? "MATCH" : "DISPUTED") << ",\""
       << r.note << "\"\n";
  }
  return os.str();
}

std::string trajectory_svg(const Trajectory& t, Section sec,
                           const Homogeneity& h) {
  const double W = 800, H = 600, margin = 60;
  const double xlo = section_lower_arm(sec), xhi = section_upper_arm(sec);
  double vlo = -1.0, vhi = 1.0;
  for (const auto& row : t.state) {
    vlo = std::fmin(vlo, row[1] - 0.2);
    vhi = std::fmax(vhi, row[1] + 0.2);
  }
  auto X = [&](double x) {
    return margin + (x - xlo) / (xhi - xlo) * (W - 2 * margin);
  };
  auto Y = [&](double v) {
    return H - margin - (v - vlo) / (vhi - vlo) * (H - 2 * margin);
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // arms
  for (double arm : {xlo, xhi})
    os << "<line x1=\"" << X(arm) << "\" y1=\"" << Y(vlo) << "\" x2=\""
       << X(arm) << "\" y2=\"" << Y(vhi)
       << "\" stroke=\"#888\" stroke-dasharray=\"6,4\"/>\n";
  // v = 0 axis
  os << "<line x1=\"" << X(xlo) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(xhi)
     << "\" y2=\"" << Y(0) << "\" stroke=\"#ccc\"/>\n";
  // restpoints
  auto dot = [&](double x, double v) {
    os << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(v)
       << "\" r=\"4\" fill=\"#c33\"/>\n";
  };
  if (sec == Section::planar) {
    const double vb = std::sqrt(2.0 * potential_planar(h, 0.25 * 3.14159265358979323846));
    dot(0.25 * 3.14159265358979323846, vb);
    dot(0.25 * 3.14159265358979323846, -vb);
  } else {
    const double xc = section_cc_angle(sec);
    const double vb = std::sqrt(2.0 * potential_tetra(h, xc));
    const double vp = std::sqrt(2.0 * potential_tetra(h, 0.0));
    for (double s : {1.0, -1.0}) {
      dot(xc, s * vb);
      dot(-xc, s * vb);
      dot(0.0, s * vp);
    }
  }
  // trajectory polyline
  os << "<polyline fill=\"none\" stroke=\"#1560bd\" stroke-width=\"1.2\" points=\"";
  for (const auto& row : t.state) os << X(row[0]) << ',' << Y(row[1]) << ' ';
  os << "\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 15
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
     << (sec == Section::planar ? "theta" : "phi") << "</text>\n";
  os << "<text x=\"18\" y=\"" << H / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
        "transform=\"rotate(-90 18 "
     << H / 2 << ")\">v</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace dihedral4
