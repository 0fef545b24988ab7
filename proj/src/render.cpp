#include "calib/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "calib/error.hpp"

namespace calib {

namespace {

constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 58.0;
constexpr double kMarginBottom = 52.0;
constexpr double kTriangleWidth = 0.025;  // data units on the k/n axis

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

// Affine map from data coordinates to canvas pixels (y axis flipped).
struct Frame {
  double px0, px1, py0, py1;  // plot box in pixels
  double x0, x1, y0, y1;      // data range

  double mx(double x) const { return px0 + (x - x0) * (px1 - px0) / (x1 - x0); }
  double my(double y) const { return py1 - (y - y0) * (py1 - py0) / (y1 - y0); }
};

Frame make_frame(const PlotSpec& spec, double x0, double x1, double y0, double y1) {
  if (spec.width_px <= 0 || spec.height_px <= 0) {
    throw Error("plot dimensions must be positive");
  }
  Frame f;
  f.px0 = kMarginLeft;
  f.px1 = static_cast<double>(spec.width_px) - kMarginRight;
  f.py0 = kMarginTop;
  f.py1 = static_cast<double>(spec.height_px) - kMarginBottom;
  f.x0 = x0;
  f.x1 = x1;
  f.y0 = y0;
  f.y1 = y1;
  return f;
}

void open_svg(std::string& out, const PlotSpec& spec) {
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(spec.width_px) + "\" height=\"" +
         std::to_string(spec.height_px) + "\" viewBox=\"0 0 " +
         std::to_string(spec.width_px) + " " + std::to_string(spec.height_px) +
         "\" font-family=\"sans-serif\">\n";
  out += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" +
         std::to_string(spec.width_px) + "\" height=\"" +
         std::to_string(spec.height_px) + "\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    out += "<text class=\"title\" x=\"" + fmt(spec.width_px / 2.0) +
           "\" y=\"22\" font-size=\"14\" text-anchor=\"middle\">" +
           xml_escape(spec.title) + "</text>\n";
  }
}

void plot_box(std::string& out, const Frame& f) {
  out += "<rect class=\"plot-box\" x=\"" + fmt(f.px0) + "\" y=\"" + fmt(f.py0) +
         "\" width=\"" + fmt(f.px1 - f.px0) + "\" height=\"" + fmt(f.py1 - f.py0) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
}

void text_at(std::string& out, const char* cls, double x, double y,
             const std::string& s, const char* anchor, int size = 11,
             const std::string& transform = "") {
  out += "<text class=\"";
  out += cls;
  out += "\" x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" font-size=\"" +
         std::to_string(size) + "\" text-anchor=\"";
  out += anchor;
  out += "\"";
  if (!transform.empty()) out += " transform=\"" + transform + "\"";
  out += ">" + xml_escape(s) + "</text>\n";
}

void tick_line(std::string& out, const char* cls, double x1, double y1, double x2,
               double y2) {
  out += "<line class=\"";
  out += cls;
  out += "\" x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) +
         "\" y2=\"" + fmt(y2) + "\" stroke=\"black\"/>\n";
}

void polyline(std::string& out, const char* cls, const std::string& points,
              const char* stroke, const char* extra = "") {
  out += "<polyline class=\"";
  out += cls;
  out += "\" fill=\"none\" stroke=\"";
  out += stroke;
  out += "\"";
  out += extra;
  out += " points=\"" + points + "\"/>\n";
}

const double kXTicks[] = {0.0, 0.25, 0.5, 0.75, 1.0};

}  // namespace

std::pair<double, double> cumulative_vertical_range(const CumulativeCurve& curve) {
  const double h = curve.triangle_half_height;
  double lo = 0.0;
  double hi = 0.0;  // origin anchor D_0 = 0
  for (double d : curve.ordinates) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  lo -= h;
  hi += h;
  if (!(hi > lo)) {
    lo = -1e-3;
    hi = 1e-3;
  }
  return {lo, hi};
}

std::string render_cumulative(const CumulativeCurve& curve, const PlotSpec& spec) {
  const std::size_t n = curve.size();
  if (n == 0) throw Error("cannot render an empty curve");

  const auto [ylo, yhi] = cumulative_vertical_range(curve);
  const Frame f = make_frame(spec, 0.0, 1.0, ylo, yhi);

  std::string out;
  out.reserve(128 * n + 4096);
  open_svg(out, spec);
  plot_box(out, f);

  // zero level
  out += "<line class=\"zero-line\" x1=\"" + fmt(f.px0) + "\" y1=\"" + fmt(f.my(0.0)) +
         "\" x2=\"" + fmt(f.px1) + "\" y2=\"" + fmt(f.my(0.0)) +
         "\" stroke=\"#cccccc\"/>\n";

  // upper axis: linear in k/n
  for (double t : kXTicks) {
    const double x = f.mx(t);
    tick_line(out, "tick", x, f.py0, x, f.py0 - 5.0);
    text_at(out, "tick-label", x, f.py0 - 9.0, fmt(t, "%.4g"), "middle");
  }
  text_at(out, "axis-label", (f.px0 + f.px1) / 2.0, f.py0 - 26.0, "k/n", "middle");

  // lower axis: the sorted score at the k nearest each upper tick
  for (double t : kXTicks) {
    const double kd = std::clamp(std::round(t * static_cast<double>(n)), 1.0,
                                 static_cast<double>(n));
    const std::size_t k = static_cast<std::size_t>(kd);
    const double x = f.mx(static_cast<double>(k) / static_cast<double>(n));
    tick_line(out, "tick", x, f.py1, x, f.py1 + 5.0);
    text_at(out, "tick-label", x, f.py1 + 17.0, fmt(curve.score_at_index[k - 1], "%.3g"),
            "middle");
  }
  text_at(out, "axis-label", (f.px0 + f.px1) / 2.0, f.py1 + 34.0, "score", "middle");

  // vertical axis
  for (int i = 0; i <= 4; ++i) {
    const double v = ylo + (yhi - ylo) * static_cast<double>(i) / 4.0;
    const double y = f.my(v);
    tick_line(out, "tick", f.px0, y, f.px0 - 5.0, y);
    text_at(out, "tick-label", f.px0 - 8.0, y + 3.5, fmt(v, "%.3g"), "end");
  }
  text_at(out, "axis-label", 16.0, (f.py0 + f.py1) / 2.0, "cumulative difference",
          "middle",
          11, "rotate(-90 16 " + fmt((f.py0 + f.py1) / 2.0) + ")");

  // scale-bar triangle at the origin, apexes at +h and -h
  const double h = curve.triangle_half_height;
  out += "<polygon class=\"triangle\" points=\"" + fmt(f.mx(0.0)) + "," +
         fmt(f.my(h)) + " " + fmt(f.mx(0.0)) + "," + fmt(f.my(-h)) + " " +
         fmt(f.mx(kTriangleWidth)) + "," + fmt(f.my(0.0)) +
         "\" fill=\"#bbbbbb\" stroke=\"#555555\"/>\n";

  // the curve itself, anchored at the origin
  std::string pts = fmt(f.mx(0.0)) + "," + fmt(f.my(0.0));
  for (std::size_t k = 0; k < n; ++k) {
    pts += ' ';
    pts += fmt(f.mx(curve.abscissas[k]));
    pts += ',';
    pts += fmt(f.my(curve.ordinates[k]));
  }
  polyline(out, "series-main", pts, "black");

  out += "</svg>\n";
  return out;
}

std::string render_reliability(const ReliabilityDiagram& diagram,
                               const BootstrapEnsemble* ensemble,
                               const PlotSpec& spec) {
  if (diagram.bins.empty()) throw Error("cannot render an empty diagram");
  const Frame f = make_frame(spec, 0.0, 1.0, 0.0, 1.0);

  std::string out;
  out.reserve(8192);
  open_svg(out, spec);
  plot_box(out, f);

  for (double t : kXTicks) {
    const double x = f.mx(t);
    tick_line(out, "tick", x, f.py1, x, f.py1 + 5.0);
    text_at(out, "tick-label", x, f.py1 + 17.0, fmt(t, "%.4g"), "middle");
    const double y = f.my(t);
    tick_line(out, "tick", f.px0, y, f.px0 - 5.0, y);
    text_at(out, "tick-label", f.px0 - 8.0, y + 3.5, fmt(t, "%.4g"), "end");
  }
  text_at(out, "axis-label", (f.px0 + f.px1) / 2.0, f.py1 + 34.0, "mean score",
          "middle");
  text_at(out, "axis-label", 16.0, (f.py0 + f.py1) / 2.0, "success rate", "middle",
          11, "rotate(-90 16 " + fmt((f.py0 + f.py1) / 2.0) + ")");

  // perfect-calibration diagonal, corner to corner
  out += "<line class=\"diagonal\" x1=\"" + fmt(f.mx(0.0)) + "\" y1=\"" +
         fmt(f.my(0.0)) + "\" x2=\"" + fmt(f.mx(1.0)) + "\" y2=\"" + fmt(f.my(1.0)) +
         "\" stroke=\"#444444\" stroke-dasharray=\"4 3\"/>\n";

  // replicate lines go beneath the main series
  if (ensemble != nullptr) {
    for (const ReliabilityDiagram& rep : ensemble->replicates) {
      std::string pts;
      for (const ReliabilityBin& b : rep.bins) {
        if (!pts.empty()) pts += ' ';
        pts += fmt(f.mx(b.mean_score));
        pts += ',';
        pts += fmt(f.my(b.success_rate));
      }
      polyline(out, "replicate", pts, "#808080");
    }
  }

  if (diagram.bins.size() >= 2) {
    std::string pts;
    for (const ReliabilityBin& b : diagram.bins) {
      if (!pts.empty()) pts += ' ';
      pts += fmt(f.mx(b.mean_score));
      pts += ',';
      pts += fmt(f.my(b.success_rate));
    }
    polyline(out, "series-main", pts, "black", " stroke-width=\"1.5\"");
  }
  for (const ReliabilityBin& b : diagram.bins) {
    out += "<circle class=\"point\" cx=\"" + fmt(f.mx(b.mean_score)) + "\" cy=\"" +
           fmt(f.my(b.success_rate)) + "\" r=\"2.5\" fill=\"black\"/>\n";
  }

  out += "</svg>\n";
  return out;
}

}  // namespace calib
