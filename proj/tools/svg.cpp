#include "svg.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "loopforest/errors.hpp"

namespace loopforest::cli {

namespace {

constexpr double kSize = 600.0;
constexpr double kMargin = 30.0;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

struct Frame {
  double x0, y0, scale_x, scale_y;

  double x(double v) const { return kMargin + (v - x0) * scale_x; }
  double y(double v) const { return kSize - kMargin - (v - y0) * scale_y; }
};

Frame fit(double x0, double x1, double y0, double y1, bool uniform) {
  const double w = std::max(x1 - x0, 1e-12);
  const double h = std::max(y1 - y0, 1e-12);
  double sx = (kSize - 2 * kMargin) / w;
  double sy = (kSize - 2 * kMargin) / h;
  if (uniform) sx = sy = std::min(sx, sy);
  return {x0, y0, sx, sy};
}

void open_svg(std::ostringstream& s) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
    << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

std::string cycles_svg(const FilteredComplex& k, double r,
                       const std::vector<std::vector<FacetId>>& cycles) {
  if (k.ambient_dim() != 2) throw InputError("cycle plots need a planar complex");
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  for (VertexId v = 0; v < static_cast<VertexId>(k.num_points()); ++v) {
    const auto p = k.point(v);
    x0 = std::min(x0, p[0]);
    x1 = std::max(x1, p[0]);
    y0 = std::min(y0, p[1]);
    y1 = std::max(y1, p[1]);
  }
  const Frame fr = fit(x0, x1, y0, y1, true);
  std::ostringstream s;
  open_svg(s);
  s << "<g fill=\"#dddddd\" stroke=\"none\">\n";
  for (TopId t = 0; t < static_cast<TopId>(k.num_tops()); ++t) {
    if (k.top_filtration(t) > r) continue;
    s << "<polygon points=\"";
    for (auto v : k.top_vertices(t)) s << fr.x(k.point(v)[0]) << ',' << fr.y(k.point(v)[1]) << ' ';
    s << "\"/>\n";
  }
  s << "</g>\n<g stroke=\"#999999\" stroke-width=\"0.5\">\n";
  auto line = [&](FacetId f) {
    const auto v = k.facet_vertices(f);
    const auto a = k.point(v[0]), b = k.point(v[1]);
    s << "<line x1=\"" << fr.x(a[0]) << "\" y1=\"" << fr.y(a[1]) << "\" x2=\"" << fr.x(b[0])
      << "\" y2=\"" << fr.y(b[1]) << "\"/>\n";
  };
  for (FacetId f = 0; f < static_cast<FacetId>(k.num_facets()); ++f) {
    if (k.facet_filtration(f) <= r) line(f);
  }
  s << "</g>\n";
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    s << "<g stroke=\"" << kPalette[i % std::size(kPalette)]
      << "\" stroke-width=\"2.5\" stroke-linecap=\"round\">\n";
    for (auto f : cycles[i]) line(f);
    s << "</g>\n";
  }
  s << "<text x=\"" << kMargin << "\" y=\"" << kMargin / 2 + 5 << "\" font-size=\"14\">r = " << r
    << "</text>\n</svg>\n";
  return s.str();
}

std::string landscape_svg(const std::vector<std::pair<std::string, PiecewiseLinear>>& curves,
                          int samples) {
  if (samples < 2) throw InputError("need at least 2 samples");
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y1 = 0.0;
  for (const auto& [name, f] : curves) {
    for (const auto& [x, y] : f.breakpoints()) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  if (!(x0 < x1)) {
    x0 = 0.0;
    x1 = 1.0;
  }
  if (!(y1 > 0.0)) y1 = 1.0;
  const Frame fr = fit(x0, x1, 0.0, y1, false);
  std::ostringstream s;
  open_svg(s);
  s << "<line x1=\"" << fr.x(x0) << "\" y1=\"" << fr.y(0) << "\" x2=\"" << fr.x(x1) << "\" y2=\""
    << fr.y(0) << "\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& [name, f] = curves[i];
    s << "<polyline fill=\"none\" stroke=\"" << kPalette[i % std::size(kPalette)]
      << "\" stroke-width=\"1.5\" points=\"";
    for (int j = 0; j < samples; ++j) {
      const double x = x0 + (x1 - x0) * j / (samples - 1);
      s << fr.x(x) << ',' << fr.y(f(x)) << ' ';
    }
    s << "\"><title>" << name << "</title></polyline>\n";
    s << "<text x=\"" << kSize - 160 << "\" y=\"" << kMargin + 16 * i << "\" font-size=\"12\" fill=\""
      << kPalette[i % std::size(kPalette)] << "\">" << name << "</text>\n";
  }
  s << "<text x=\"" << fr.x(x0) << "\" y=\"" << kSize - 8 << "\" font-size=\"12\">" << x0
    << "</text>\n<text x=\"" << fr.x(x1) - 40 << "\" y=\"" << kSize - 8 << "\" font-size=\"12\">"
    << x1 << "</text>\n</svg>\n";
  return s.str();
}

}  // namespace loopforest::cli
