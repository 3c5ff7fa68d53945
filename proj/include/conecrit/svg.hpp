#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "conecrit/classifier.hpp"

namespace conecrit::svg {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct PlotStyle {
  std::string fill_color = "#c9d7ef";
  std::string line_color = "#1f3d7a";
};

// Fixed 800x800 canvas; data -> pixel mapping published in the metadata block
// so consumers can invert coordinates exactly.
class RegionPlot {
 public:
  RegionPlot(double p_min, double p_max, double s_min, double s_max)
      : p_min_(p_min), p_max_(p_max), s_min_(s_min), s_max_(s_max) {}

  double x(double p) const { return margin_ + (p - p_min_) / (p_max_ - p_min_) * span_; }
  double y(double s) const { return size_ - margin_ - (s - s_min_) / (s_max_ - s_min_) * span_; }

  std::string render(const RegionGrid& grid, const PlotStyle& style) const {
    const RegionBoundary& rb = grid.boundary;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 800\" "
           "width=\"800\" height=\"800\">\n";
    out << "<metadata id=\"conecrit-region\">\n";
    auto meta = [&](const std::string& key, double v) {
      out << key << "=" << fmt17(v) << "\n";
    };
    out << "domain=" << (grid.domain == Domain::exterior ? "exterior" : "interior") << "\n";
    meta("p_min", p_min_);
    meta("p_max", p_max_);
    meta("sigma_min", s_min_);
    meta("sigma_max", s_max_);
    meta("px_margin", margin_);
    meta("px_span", span_);
    if (rb.gamma.real()) {
      meta("gamma_minus", rb.gamma.lower);
      meta("gamma_plus", rb.gamma.upper);
      meta("kink_p", rb.kink_p);
      meta("kink_sigma", rb.kink_sigma);
      if (rb.sigma_at_p0) meta("sigma_at_p0", *rb.sigma_at_p0);
      if (rb.sigma_at_pm1) meta("sigma_at_pm1", *rb.sigma_at_pm1);
      if (rb.p_cross_lower) meta("p_cross_lower", *rb.p_cross_lower);
      if (rb.p_cross_upper) meta("p_cross_upper", *rb.p_cross_upper);
      out << "critical_regime=" << (rb.critical_regime ? 1 : 0) << "\n";
    } else {
      out << "no_real_roots=1\n";
    }
    out << "</metadata>\n";
    out << "<defs><clipPath id=\"frame\"><rect x=\"" << fmt17(margin_) << "\" y=\""
        << fmt17(margin_) << "\" width=\"" << fmt17(span_) << "\" height=\"" << fmt17(span_)
        << "\"/></clipPath></defs>\n";
    out << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n";

    // shaded nonexistence set
    out << "<g clip-path=\"url(#frame)\">\n";
    if (!rb.gamma.real()) {
      out << "<rect x=\"" << fmt17(margin_) << "\" y=\"" << fmt17(margin_) << "\" width=\""
          << fmt17(span_) << "\" height=\"" << fmt17(span_) << "\" fill=\"" << style.fill_color
          << "\"/>\n";
    } else {
      const bool below = grid.domain == Domain::exterior;  // shade under the min-line
      std::ostringstream pts;
      auto push = [&](double p, double s) { pts << fmt17(x(p)) << "," << fmt17(y(s)) << " "; };
      // traversal along the boundary, then around the shaded side of the frame
      push(p_min_, line_sigma(rb, p_min_));
      if (p_min_ < rb.kink_p && rb.kink_p < p_max_) push(rb.kink_p, rb.kink_sigma);
      push(p_max_, line_sigma(rb, p_max_));
      const double off = below ? (s_min_ - 1.0 - shade_pad(rb)) : (s_max_ + 1.0 + shade_pad(rb));
      push(p_max_, off);
      push(p_min_, off);
      out << "<polygon points=\"" << pts.str() << "\" fill=\"" << style.fill_color
          << "\" stroke=\"none\"/>\n";
    }
    // exact boundary polyline
    for (const auto& seg : rb.segments) {
      out << "<polyline points=\"" << fmt17(x(seg.p0)) << "," << fmt17(y(seg.sigma0)) << " "
          << fmt17(x(seg.p1)) << "," << fmt17(y(seg.sigma1)) << "\" fill=\"none\" stroke=\""
          << style.line_color << "\" stroke-width=\"2.5\""
          << (seg.style == SegmentStyle::dashed ? " stroke-dasharray=\"9,6\"" : "") << " data-branch=\""
          << branch_name(seg.branch) << "\" data-p0=\"" << fmt17(seg.p0) << "\" data-sigma0=\""
          << fmt17(seg.sigma0) << "\" data-p1=\"" << fmt17(seg.p1) << "\" data-sigma1=\""
          << fmt17(seg.sigma1) << "\"/>\n";
    }
    out << "</g>\n";

    draw_axes(out, style);

    // endpoint glyphs: open circles mark excluded boundary points
    for (const auto& g : rb.glyphs) {
      if (g.p < p_min_ || g.p > p_max_ || g.sigma < s_min_ || g.sigma > s_max_) continue;
      out << "<circle cx=\"" << fmt17(x(g.p)) << "\" cy=\"" << fmt17(y(g.sigma))
          << "\" r=\"6\" stroke=\"" << style.line_color << "\" stroke-width=\"2\" fill=\""
          << (g.filled ? style.line_color : std::string("white")) << "\" data-p=\"" << fmt17(g.p)
          << "\" data-sigma=\"" << fmt17(g.sigma) << "\" data-filled=\"" << (g.filled ? 1 : 0)
          << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
  }

 private:
  static double shade_pad(const RegionBoundary& rb) {
    return rb.gamma.real() ? std::fabs(rb.gamma.lower) + std::fabs(rb.gamma.upper) : 0.0;
  }

  // sigma of the active boundary branch at p (exterior: min of the two lines)
  double line_sigma(const RegionBoundary& rb, double p) const {
    double best = 0.0;
    bool got = false;
    for (const auto& seg : rb.segments) {
      if (p < seg.p0 - 1e-12 || p > seg.p1 + 1e-12) continue;
      best = seg.slope * (p - 1.0) + 2.0;
      got = true;
    }
    if (!got) {
      // boundary clipped out of the window: extend the nearest segment
      const auto& seg = p < rb.kink_p ? rb.segments.front() : rb.segments.back();
      best = seg.slope * (p - 1.0) + 2.0;
    }
    return best;
  }

  void draw_axes(std::ostringstream& out, const PlotStyle& style) const {
    (void)style;
    out << "<rect x=\"" << fmt17(margin_) << "\" y=\"" << fmt17(margin_) << "\" width=\""
        << fmt17(span_) << "\" height=\"" << fmt17(span_)
        << "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
    if (p_min_ < 0.0 && p_max_ > 0.0)
      out << "<line x1=\"" << fmt17(x(0.0)) << "\" y1=\"" << fmt17(margin_) << "\" x2=\""
          << fmt17(x(0.0)) << "\" y2=\"" << fmt17(size_ - margin_)
          << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
    if (s_min_ < 0.0 && s_max_ > 0.0)
      out << "<line x1=\"" << fmt17(margin_) << "\" y1=\"" << fmt17(y(0.0)) << "\" x2=\""
          << fmt17(size_ - margin_) << "\" y2=\"" << fmt17(y(0.0))
          << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt17(size_ - margin_ + 14) << "\" y=\"" << fmt17(size_ - margin_ + 4)
        << "\" font-size=\"16\">p</text>\n";
    out << "<text x=\"" << fmt17(margin_ - 10) << "\" y=\"" << fmt17(margin_ - 12)
        << "\" font-size=\"16\">sigma</text>\n";
    out << "<text x=\"" << fmt17(margin_) << "\" y=\"" << fmt17(size_ - margin_ + 24)
        << "\" font-size=\"12\">" << fmt17(p_min_) << "</text>\n";
    out << "<text x=\"" << fmt17(size_ - margin_ - 30) << "\" y=\"" << fmt17(size_ - margin_ + 24)
        << "\" font-size=\"12\">" << fmt17(p_max_) << "</text>\n";
  }

  double p_min_, p_max_, s_min_, s_max_;
  double size_ = 800.0, margin_ = 70.0;
  double span_ = 800.0 - 2.0 * 70.0;
};

}  // namespace conecrit::svg
