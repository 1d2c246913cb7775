#include "render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace inash {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};

std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s == "-0" ? "0" : s;
}

} // namespace

std::string render_svg(const Workspace& w, const std::vector<RobotSpec>& robots,
                       const std::vector<std::optional<std::vector<Point2>>>& paths)
{
  const Rect& b = w.bounds;
  const double width = b.max.x - b.min.x;
  const double height = b.max.y - b.min.y;
  const double stroke = std::max(width, height) / 400.0;
  auto X = [&](double x) { return num(x - b.min.x); };
  auto Y = [&](double y) { return num(b.max.y - y); };

  auto shape = [&](std::ostringstream& os, const Shape& s, const std::string& attrs) {
    if (const auto* c = std::get_if<Circle>(&s)) {
      os << "  <circle cx=\"" << X(c->center.x) << "\" cy=\"" << Y(c->center.y) << "\" r=\"" << num(c->radius)
         << "\" " << attrs << "/>\n";
    } else {
      const auto& r = std::get<Rect>(s);
      os << "  <rect x=\"" << X(r.min.x) << "\" y=\"" << Y(r.max.y) << "\" width=\"" << num(r.max.x - r.min.x)
         << "\" height=\"" << num(r.max.y - r.min.y) << "\" " << attrs << "/>\n";
    }
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " << num(width) << ' ' << num(height)
     << "\" width=\"" << num(40.0 * width) << "\" height=\"" << num(40.0 * height) << "\">\n";
  os << "  <rect class=\"bounds\" x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
     << "\" fill=\"white\" stroke=\"black\" stroke-width=\"" << num(2 * stroke) << "\"/>\n";
  for (const auto& o : w.obstacles)
    shape(os, o, "class=\"obstacle\" fill=\"#dddddd\" stroke=\"black\" stroke-width=\"" + num(2 * stroke) + "\"");

  for (std::size_t i = 0; i < robots.size(); ++i) {
    const std::string color = kPalette[i % std::size(kPalette)];
    const auto& r = robots[i];
    shape(os, r.goal,
          "class=\"goal\" fill=\"none\" stroke=\"" + color + "\" stroke-dasharray=\"" + num(4 * stroke) +
              "\" stroke-width=\"" + num(stroke) + "\"");
    os << "  <circle class=\"start\" cx=\"" << X(r.init.x) << "\" cy=\"" << Y(r.init.y) << "\" r=\""
       << num(3.0 * r.radius) << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << num(2 * stroke)
       << "\"/>\n";
    if (i >= paths.size() || !paths[i] || paths[i]->empty()) continue;
    const auto& pts = *paths[i];
    os << "  <polyline class=\"path\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << num(2 * stroke)
       << "\" points=\"";
    for (std::size_t j = 0; j < pts.size(); ++j) os << (j ? " " : "") << X(pts[j].x) << ',' << Y(pts[j].y);
    os << "\"/>\n";
    const Point2 e = pts.back();
    const double h = r.radius;
    os << "  <g class=\"end\" stroke=\"" << color << "\" stroke-width=\"" << num(2 * stroke) << "\">"
       << "<line x1=\"" << X(e.x - h) << "\" y1=\"" << Y(e.y - h) << "\" x2=\"" << X(e.x + h) << "\" y2=\""
       << Y(e.y + h) << "\"/>"
       << "<line x1=\"" << X(e.x - h) << "\" y1=\"" << Y(e.y + h) << "\" x2=\"" << X(e.x + h) << "\" y2=\""
       << Y(e.y - h) << "\"/></g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

} // namespace inash
