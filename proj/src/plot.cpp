#include "fdim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace fractal {

namespace {

constexpr double kWidth = 520.0;
constexpr double kPanelHeight = 340.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 24.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 48.0;

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = INFINITY;
  double hi = -INFINITY;

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    double span = hi - lo;
    if (!(span > 0.0)) span = std::max(std::abs(lo), 1.0) * 0.1;
    lo -= 0.06 * span;
    hi += 0.06 * span;
  }
};

void draw_panel(std::string& svg, const PlotPanel& p, double y0) {
  Range xs;
  Range ys;
  for (const auto* set : {&p.used, &p.excluded}) {
    for (const auto& pt : *set) {
      xs.add(pt.s);
      ys.add(pt.y);
    }
  }
  if (!p.used.empty()) {
    Range us;
    for (const auto& pt : p.used) us.add(pt.s);
    ys.add(p.intercept + p.slope * us.lo);
    ys.add(p.intercept + p.slope * us.hi);
  }
  xs.pad();
  ys.pad();

  const double w = kWidth - kLeft - kRight;
  const double h = kPanelHeight - kTop - kBottom;
  auto px = [&](double s) { return kLeft + (s - xs.lo) / (xs.hi - xs.lo) * w; };
  auto py = [&](double y) { return y0 + kTop + (ys.hi - y) / (ys.hi - ys.lo) * h; };

  svg += "<g class=\"panel\">\n";
  svg += "<rect x=\"" + fmt("%.2f", kLeft) + "\" y=\"" + fmt("%.2f", y0 + kTop) + "\" width=\"" + fmt("%.2f", w) +
         "\" height=\"" + fmt("%.2f", h) + "\" fill=\"none\" stroke=\"#444\"/>\n";
  svg += "<text x=\"" + fmt("%.2f", kLeft) + "\" y=\"" + fmt("%.2f", y0 + kTop - 12) + "\" font-size=\"14\">" +
         xml_escape(p.method) + "  fd = " + fmt("%.4f", p.fd) + "</text>\n";

  // axis ticks at the range ends and middle
  for (int k = 0; k <= 2; ++k) {
    const double s = xs.lo + (xs.hi - xs.lo) * k / 2.0;
    const double y = ys.lo + (ys.hi - ys.lo) * k / 2.0;
    svg += "<text x=\"" + fmt("%.2f", px(s)) + "\" y=\"" + fmt("%.2f", y0 + kTop + h + 16) +
           "\" font-size=\"10\" text-anchor=\"middle\">" + fmt("%.3g", s) + "</text>\n";
    svg += "<text x=\"" + fmt("%.2f", kLeft - 6) + "\" y=\"" + fmt("%.2f", py(y) + 3) +
           "\" font-size=\"10\" text-anchor=\"end\">" + fmt("%.3g", y) + "</text>\n";
  }
  svg += "<text x=\"" + fmt("%.2f", kLeft + w / 2) + "\" y=\"" + fmt("%.2f", y0 + kPanelHeight - 10) +
         "\" font-size=\"11\" text-anchor=\"middle\">log scale</text>\n";

  if (!p.used.empty()) {
    Range us;
    for (const auto& pt : p.used) us.add(pt.s);
    svg += "<line class=\"fit\" x1=\"" + fmt("%.2f", px(us.lo)) + "\" y1=\"" + fmt("%.2f", py(p.intercept + p.slope * us.lo)) +
           "\" x2=\"" + fmt("%.2f", px(us.hi)) + "\" y2=\"" + fmt("%.2f", py(p.intercept + p.slope * us.hi)) +
           "\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";
  }
  for (const auto& pt : p.used) {
    svg += "<circle class=\"used\" cx=\"" + fmt("%.2f", px(pt.s)) + "\" cy=\"" + fmt("%.2f", py(pt.y)) +
           "\" r=\"4\" fill=\"#1f4e79\" stroke=\"#1f4e79\"/>\n";
  }
  for (const auto& pt : p.excluded) {
    svg += "<circle class=\"excluded\" cx=\"" + fmt("%.2f", px(pt.s)) + "\" cy=\"" + fmt("%.2f", py(pt.y)) +
           "\" r=\"4\" fill=\"none\" stroke=\"#1f4e79\"/>\n";
  }
  svg += "</g>\n";
}

}  // namespace

std::string loglog_svg(const std::vector<PlotPanel>& panels) {
  std::vector<const PlotPanel*> drawn;
  for (const auto& p : panels) {
    if (!p.used.empty() || !p.excluded.empty()) drawn.push_back(&p);
  }
  if (drawn.empty()) throw Error(ErrorCode::InvalidInput, "record has no log-log points to plot");

  const double height = kPanelHeight * static_cast<double>(drawn.size());
  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", kWidth) + "\" height=\"" +
         fmt("%.0f", height) + "\" viewBox=\"0 0 " + fmt("%.0f", kWidth) + " " + fmt("%.0f", height) +
         "\" font-family=\"sans-serif\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k < drawn.size(); ++k) draw_panel(svg, *drawn[k], kPanelHeight * static_cast<double>(k));
  svg += "</svg>\n";
  return svg;
}

void emit_loglog_plot(const std::vector<PlotPanel>& panels, const std::string& path) {
  write_file(path, loglog_svg(panels));
}

}  // namespace fractal
