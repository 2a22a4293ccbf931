#include "gkm/render.hpp"

#include <map>
#include <sstream>

namespace gkm {

std::string render_svg(const GraphDocument& doc) {
  std::map<std::string, Weight> pos;
  for (const auto& v : doc.vertices) {
    if (!v.position)
      throw PreconditionUnmetError("vertex \"" + v.id + "\" has no position; cannot render");
    pos[v.id] = *v.position;
  }
  long min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  for (const auto& [id, p] : pos) {
    long x = long(p(0)), y = long(p(1));
    if (first || x < min_x) min_x = x;
    if (first || x > max_x) max_x = x;
    if (first || y < min_y) min_y = y;
    if (first || y > max_y) max_y = y;
    first = false;
  }
  min_x -= 1; min_y -= 1; max_x += 1; max_y += 1;
  const long scale = 48, margin = 24;
  auto sx = [&](long x) { return margin + scale * (x - min_x); };
  auto sy = [&](long y) { return margin + scale * (max_y - y); };  // flip y
  long width = 2 * margin + scale * (max_x - min_x);
  long height = 2 * margin + scale * (max_y - min_y);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "  <g stroke=\"#bbbbbb\" stroke-width=\"1\" stroke-dasharray=\"1,3\">\n";
  for (long x = min_x; x <= max_x; ++x)
    svg << "    <line x1=\"" << sx(x) << "\" y1=\"" << sy(min_y) << "\" x2=\"" << sx(x)
        << "\" y2=\"" << sy(max_y) << "\"/>\n";
  for (long y = min_y; y <= max_y; ++y)
    svg << "    <line x1=\"" << sx(min_x) << "\" y1=\"" << sy(y) << "\" x2=\"" << sx(max_x)
        << "\" y2=\"" << sy(y) << "\"/>\n";
  svg << "  </g>\n";
  svg << "  <g stroke=\"#222222\" stroke-width=\"2.5\">\n";
  for (const auto& e : doc.edge_pairs) {
    const Weight& a = pos.at(e.src);
    const Weight& b = pos.at(e.dst);
    svg << "    <line x1=\"" << sx(long(a(0))) << "\" y1=\"" << sy(long(a(1))) << "\" x2=\""
        << sx(long(b(0))) << "\" y2=\"" << sy(long(b(1))) << "\"/>\n";
  }
  svg << "  </g>\n";
  svg << "  <g font-family=\"monospace\" font-size=\"11\" fill=\"#444444\">\n";
  for (const auto& e : doc.edge_pairs) {
    const Weight& a = pos.at(e.src);
    const Weight& b = pos.at(e.dst);
    double mx = (double(sx(long(a(0)))) + double(sx(long(b(0))))) / 2 + 4;
    double my = (double(sy(long(a(1)))) + double(sy(long(b(1))))) / 2 - 4;
    svg << "    <text x=\"" << mx << "\" y=\"" << my << "\">" << to_string(e.weight)
        << "</text>\n";
  }
  svg << "  </g>\n";
  svg << "  <g fill=\"#000000\">\n";
  for (const auto& v : doc.vertices) {
    const Weight& p = pos.at(v.id);
    svg << "    <circle cx=\"" << sx(long(p(0))) << "\" cy=\"" << sy(long(p(1)))
        << "\" r=\"4\"/>\n";
  }
  svg << "  </g>\n</svg>\n";
  return svg.str();
}

}  // namespace gkm
