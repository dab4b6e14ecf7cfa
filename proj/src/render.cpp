#include "stab/render.hpp"

#include <sstream>

namespace stab {

std::string render_svg(const Instance& inst, const Solution* sol) {
  const Rect& b = inst.bounds;
  Coord w = std::max<Coord>(1, b.width());
  Coord h = std::max<Coord>(1, b.height());
  Coord pad = std::max<Coord>(1, std::max(w, h) / 20);
  auto flip = [&](Coord y) { return b.y2 - y + b.y1; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
      << b.x1 - pad << " " << b.y1 - pad << " " << w + 2 * pad << " "
      << h + 2 * pad << "\">\n";
  double stroke = std::max(0.5, double(std::max(w, h)) / 400.0);
  svg << "  <g id=\"rects\" fill=\"none\" stroke=\"#3366aa\" stroke-width=\""
      << stroke << "\">\n";
  for (const auto& r : inst.rects)
    svg << "    <rect x=\"" << r.x1 << "\" y=\"" << flip(r.y2) << "\" width=\""
        << r.width() << "\" height=\"" << r.height() << "\"/>\n";
  svg << "  </g>\n";
  if (sol) {
    svg << "  <g id=\"segments\" stroke=\"#cc2222\" stroke-width=\""
        << 2.5 * stroke << "\" stroke-linecap=\"round\">\n";
    for (const auto& s : sol->segments) {
      if (s.orientation == Orientation::horizontal)
        svg << "    <line x1=\"" << s.lo << "\" y1=\"" << flip(s.anchor)
            << "\" x2=\"" << s.hi << "\" y2=\"" << flip(s.anchor) << "\"/>\n";
      else
        svg << "    <line x1=\"" << s.anchor << "\" y1=\"" << flip(s.lo)
            << "\" x2=\"" << s.anchor << "\" y2=\"" << flip(s.hi) << "\"/>\n";
    }
    svg << "  </g>\n";
  }
  double fs = std::max(1.0, double(std::max(w, h)) / 40.0);
  svg << "  <g id=\"legend\" font-family=\"monospace\" font-size=\"" << fs
      << "\">\n";
  svg << "    <text x=\"" << b.x1 << "\" y=\"" << b.y1 - pad / 2
      << "\" fill=\"#3366aa\">rects: " << inst.rects.size() << "</text>\n";
  if (sol)
    svg << "    <text x=\"" << b.x1 + w / 2 << "\" y=\"" << b.y1 - pad / 2
        << "\" fill=\"#cc2222\">" << sol->solver_tag
        << " cost: " << sol->cost << "</text>\n";
  svg << "  </g>\n</svg>\n";
  return svg.str();
}

}  // namespace stab
