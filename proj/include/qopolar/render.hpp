#pragma once

// Decorative figure emitters: trees as DOT, polyhedra (d <= 2) as an SVG of
// the (<w,u>, level) projection. Exact data stays in the text formats; the
// figure coordinates here are plain decimals.

#include <qopolar/eggers_wall.hpp>
#include <qopolar/polyhedron.hpp>
#include <qopolar/qvec.hpp>

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

namespace qopolar {

inline std::string tree_to_dot(const EggersWallTree& tree) {
  std::string out = "graph eggers_wall {\n  node [shape=circle, fontsize=10];\n";
  for (std::size_t v = 0; v < tree.vertices().size(); ++v) {
    const auto& vx = tree.vertices()[v];
    std::string label;
    if (v == tree.root_id())
      label = "root";
    else if (vx.value.is_infinite())
      label = tree.branch(vx.branches.front()).name;
    else
      label = vx.value.str();
    std::string shape = vx.extremal ? ", shape=plaintext" : "";
    out += "  v" + std::to_string(v) + " [label=\"" + label + "\"" + shape + "];\n";
  }
  for (const auto& e : tree.edges())
    out += "  v" + std::to_string(e.lo) + " -- v" + std::to_string(e.hi) + " [label=\"" +
           e.gamma.get_str() + "\"];\n";
  out += "}\n";
  return out;
}

inline std::string polyhedron_to_svg(const GeneralPolyhedron& g, const std::vector<Rat>& w) {
  if (g.ambient_dim() < 2 || w.size() != g.ambient_dim() - 1)
    fail(errc::dimension_mismatch, "polyhedron_to_svg: bad projection direction");
  struct P {
    double x, y;
  };
  std::vector<P> pts;
  double xmax = 1, ymax = 1;
  for (const auto& v : g.vertices()) {
    Rat score(0);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) score += w[i] * v[i];
    P p{score.get_d(), Rat(v.back()).get_d()};
    xmax = std::max(xmax, p.x);
    ymax = std::max(ymax, p.y);
    pts.push_back(p);
  }
  const double width = 420, height = 300, margin = 30;
  auto sx = [&](double x) { return margin + x / xmax * (width - 2 * margin); };
  auto sy = [&](double y) { return height - margin - y / ymax * (height - 2 * margin); };
  char buf[160];
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(static_cast<int>(width)) + "\" height=\"" +
                    std::to_string(static_cast<int>(height)) + "\">\n";
  // axes
  std::snprintf(buf, sizeof buf,
                "  <line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"gray\"/>\n",
                sx(0), sy(0), sx(xmax), sy(0));
  out += buf;
  std::snprintf(buf, sizeof buf,
                "  <line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"gray\"/>\n",
                sx(0), sy(0), sx(0), sy(ymax));
  out += buf;
  // the projected boundary path through the coherent-path vertices
  auto path = coherent_path(g, w);
  // rebuild vertex walk of the path from the top vertex
  std::string poly;
  {
    // sort projected points by level and connect the hull points
    std::vector<P> sorted = pts;
    std::sort(sorted.begin(), sorted.end(), [](const P& a, const P& b) { return a.y > b.y; });
    for (const auto& p : sorted) {
      std::snprintf(buf, sizeof buf, "%.1f,%.1f ", sx(p.x), sy(p.y));
      poly += buf;
    }
  }
  out += "  <polyline points=\"" + poly + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof buf, "  <circle cx=\"%.1f\" cy=\"%.1f\" r=\"3\"/>\n", sx(p.x),
                  sy(p.y));
    out += buf;
  }
  out += "  <!-- " + std::to_string(path.size()) + " compact edges along the chosen direction -->\n";
  out += "</svg>\n";
  return out;
}

}  // namespace qopolar
