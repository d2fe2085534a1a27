#include <algorithm>
#include <cstdio>
#include <sstream>

#include "hardylab/cli.hpp"

namespace hardylab::cli {
namespace {

// Linear ramp from dark blue (low) through white to dark red (high).
std::string ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  int r, g, b;
  if (t < 0.5) {
    const double s = t / 0.5;
    r = static_cast<int>(30 + s * 225);
    g = static_cast<int>(60 + s * 195);
    b = static_cast<int>(160 + s * 95);
  } else {
    const double s = (t - 0.5) / 0.5;
    r = static_cast<int>(255 - s * 75);
    g = static_cast<int>(255 - s * 225);
    b = static_cast<int>(255 - s * 225);
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string escape_comment(std::string s) {
  for (std::size_t pos; (pos = s.find("--")) != std::string::npos;) s.replace(pos, 2, "- -");
  return s;
}

}  // namespace

std::string render_svg(const ScanGrid& grid, const RunManifest& manifest) {
  constexpr int kCell = 6;
  constexpr int kMargin = 60;
  const int nx = static_cast<int>(grid.c1_sq_steps());
  const int ny = static_cast<int>(grid.beta0_steps());
  const int plot_w = nx * kCell, plot_h = ny * kCell;
  const int width = plot_w + 2 * kMargin + 80, height = plot_h + 2 * kMargin;

  double lo = 2.0, hi = 2.0;
  for (const auto& c : grid.cells()) {
    lo = std::min(lo, c.delta);
    hi = std::max(hi, c.delta);
  }
  const double span = hi > lo ? hi - lo : 1.0;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!--\n"
     << escape_comment(manifest.render("# ")) << "-->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g shape-rendering=\"crispEdges\">\n";
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const auto& c = grid.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      os << "<rect x=\"" << kMargin + i * kCell << "\" y=\"" << kMargin + (ny - 1 - j) * kCell
         << "\" width=\"" << kCell << "\" height=\"" << kCell << "\" fill=\""
         << ramp((c.delta - lo) / span) << "\"/>\n";
    }
  }
  os << "</g>\n";

  // Color bar.
  const int bar_x = kMargin + plot_w + 20;
  for (int k = 0; k < plot_h; ++k) {
    os << "<rect x=\"" << bar_x << "\" y=\"" << kMargin + k << "\" width=\"16\" height=\"1\" fill=\""
       << ramp(1.0 - static_cast<double>(k) / (plot_h - 1)) << "\"/>\n";
  }
  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<text x=\"" << bar_x + 20 << "\" y=\"" << kMargin + 10 << "\">" << format_number(hi) << "</text>\n";
  os << "<text x=\"" << bar_x + 20 << "\" y=\"" << kMargin + plot_h << "\">" << format_number(lo) << "</text>\n";
  os << "<text x=\"" << kMargin + plot_w / 2 << "\" y=\"" << height - 20
     << "\" text-anchor=\"middle\">c1^2 (0 to 1)</text>\n";
  os << "<text x=\"20\" y=\"" << kMargin + plot_h / 2 << "\" transform=\"rotate(-90 20 "
     << kMargin + plot_h / 2 << ")\" text-anchor=\"middle\">beta0 (0 to 90 deg)</text>\n";
  os << "<text x=\"" << kMargin << "\" y=\"30\">CHSH parameter on the Hardy chain</text>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

void write_scan_csv(std::ostream& out, const ScanGrid& grid, const RunManifest& manifest) {
  out << manifest.render("# ");
  out << "c1_squared,beta0_deg,p_hardy,delta,degenerate\n";
  for (std::size_t i = 0; i < grid.c1_sq_steps(); ++i) {
    for (std::size_t j = 0; j < grid.beta0_steps(); ++j) {
      const auto& c = grid.at(i, j);
      out << format_number(grid.c1_squared_at(i)) << ',' << format_number(grid.beta0_deg_at(j)) << ','
          << format_number(c.p_hardy) << ',' << format_number(c.delta) << ','
          << (c.degenerate ? 1 : 0) << '\n';
    }
  }
}

}  // namespace hardylab::cli
