#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "tenspec/inclusion.hpp"

namespace tenspec {

namespace detail {

struct ViewBox {
  double x0 = -1.0, y0 = -1.0, w = 2.0, h = 2.0;
};

inline ViewBox disk_viewbox(const std::vector<Disk>& disks) {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  bool first = true;
  for (const Disk& d : disks) {
    const double cx = d.center.real(), cy = d.center.imag();
    if (first) {
      x0 = cx - d.radius;
      x1 = cx + d.radius;
      y0 = cy - d.radius;
      y1 = cy + d.radius;
      first = false;
    } else {
      x0 = std::min(x0, cx - d.radius);
      x1 = std::max(x1, cx + d.radius);
      y0 = std::min(y0, cy - d.radius);
      y1 = std::max(y1, cy + d.radius);
    }
  }
  // 1.1x the union bounding box, with a floor so a single point still shows
  double w = x1 - x0, h = y1 - y0;
  const double pad_w = std::max(w * 0.05, 0.5);
  const double pad_h = std::max(h * 0.05, 0.5);
  return {x0 - pad_w, y0 - pad_h, w + 2 * pad_w, h + 2 * pad_h};
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << v;
  return os.str();
}

}  // namespace detail

/// Deterministic stand-alone SVG: Geršgorin disks, optionally the sampled
/// Brualdi union (rasterized, since the circuit regions are lemniscates)
/// and eigenvalue markers.
inline std::string render_svg(const std::vector<Disk>& disks,
                              const std::vector<CircuitRegion>* regions = nullptr,
                              const std::vector<std::complex<double>>* eigenvalues = nullptr,
                              int width_px = 640) {
  const detail::ViewBox vb = detail::disk_viewbox(disks);
  const int height_px = std::max(80, static_cast<int>(width_px * vb.h / vb.w));
  const double sx = width_px / vb.w, sy = height_px / vb.h;
  auto px = [&](double re) { return (re - vb.x0) * sx; };
  auto py = [&](double im) { return height_px - (im - vb.y0) * sy; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px << "\" height=\""
      << height_px << "\" viewBox=\"0 0 " << width_px << " " << height_px << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  // real/imaginary axes when they cross the box
  if (vb.y0 < 0.0 && vb.y0 + vb.h > 0.0) {
    svg << "<line x1=\"0\" y1=\"" << detail::fmt(py(0)) << "\" x2=\"" << width_px << "\" y2=\""
        << detail::fmt(py(0)) << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  }
  if (vb.x0 < 0.0 && vb.x0 + vb.w > 0.0) {
    svg << "<line x1=\"" << detail::fmt(px(0)) << "\" y1=\"0\" x2=\"" << detail::fmt(px(0))
        << "\" y2=\"" << height_px << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  }

  if (regions) {
    // run-length raster of the circuit-region union
    const int cells = 160;
    const double dx = vb.w / cells, dy = vb.h / cells;
    for (int iy = 0; iy < cells; ++iy) {
      const double im = vb.y0 + (iy + 0.5) * dy;
      int run = -1;
      for (int ix = 0; ix <= cells; ++ix) {
        bool inside = false;
        if (ix < cells) {
          const double re = vb.x0 + (ix + 0.5) * dx;
          inside = region_contains(*regions, {re, im}, 0.0);
        }
        if (inside && run < 0) run = ix;
        if (!inside && run >= 0) {
          svg << "<rect x=\"" << detail::fmt(px(vb.x0 + run * dx)) << "\" y=\""
              << detail::fmt(py(im) - 0.5 * dy * sy) << "\" width=\""
              << detail::fmt((ix - run) * dx * sx) << "\" height=\"" << detail::fmt(dy * sy)
              << "\" fill=\"#d08c3a\" fill-opacity=\"0.35\"/>\n";
          run = -1;
        }
      }
    }
  }

  for (const Disk& d : disks) {
    svg << "<circle cx=\"" << detail::fmt(px(d.center.real())) << "\" cy=\""
        << detail::fmt(py(d.center.imag())) << "\" r=\"" << detail::fmt(d.radius * sx)
        << "\" fill=\"#3a6ea5\" fill-opacity=\"0.12\" stroke=\"#3a6ea5\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << detail::fmt(px(d.center.real()) + 4) << "\" y=\""
        << detail::fmt(py(d.center.imag()) - 4)
        << "\" font-family=\"monospace\" font-size=\"12\" fill=\"#3a6ea5\">" << d.row
        << "</text>\n";
  }

  if (eigenvalues) {
    for (const auto& z : *eigenvalues) {
      const double cx = px(z.real()), cy = py(z.imag());
      svg << "<path d=\"M " << detail::fmt(cx - 4) << " " << detail::fmt(cy) << " L "
          << detail::fmt(cx + 4) << " " << detail::fmt(cy) << " M " << detail::fmt(cx) << " "
          << detail::fmt(cy - 4) << " L " << detail::fmt(cx) << " " << detail::fmt(cy + 4)
          << "\" stroke=\"#b03030\" stroke-width=\"2\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace tenspec
