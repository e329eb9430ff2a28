#include "larsson/svg.hpp"

#include <cstdio>

namespace larsson {

std::string svg_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

SvgDocument::SvgDocument(double width, double height)
    : width_(width), height_(height) {}

void SvgDocument::line(double x1, double y1, double x2, double y2,
                       const std::string& stroke, double stroke_width) {
  body_ += "<line x1=\"" + svg_num(x1) + "\" y1=\"" + svg_num(y1) +
           "\" x2=\"" + svg_num(x2) + "\" y2=\"" + svg_num(y2) +
           "\" stroke=\"" + stroke + "\" stroke-width=\"" +
           svg_num(stroke_width) + "\"/>\n";
}

void SvgDocument::rect(double x, double y, double w, double h,
                       const std::string& fill, const std::string& stroke,
                       double stroke_width, double opacity) {
  body_ += "<rect x=\"" + svg_num(x) + "\" y=\"" + svg_num(y) + "\" width=\"" +
           svg_num(w) + "\" height=\"" + svg_num(h) + "\" fill=\"" + fill +
           "\" stroke=\"" + stroke + "\" stroke-width=\"" +
           svg_num(stroke_width) + "\"";
  if (opacity != 1.0) body_ += " opacity=\"" + svg_num(opacity) + "\"";
  body_ += "/>\n";
}

namespace {

std::string points_attr(const std::vector<std::pair<double, double>>& pts) {
  std::string s;
  for (const auto& [x, y] : pts) {
    if (!s.empty()) s += ' ';
    s += svg_num(x) + "," + svg_num(y);
  }
  return s;
}

}  // namespace

void SvgDocument::polyline(const std::vector<std::pair<double, double>>& pts,
                           const std::string& stroke, double stroke_width) {
  body_ += "<polyline points=\"" + points_attr(pts) + "\" fill=\"none\" " +
           "stroke=\"" + stroke + "\" stroke-width=\"" +
           svg_num(stroke_width) + "\"/>\n";
}

void SvgDocument::polygon(const std::vector<std::pair<double, double>>& pts,
                          const std::string& fill, double opacity) {
  body_ += "<polygon points=\"" + points_attr(pts) + "\" fill=\"" + fill +
           "\"";
  if (opacity != 1.0) body_ += " opacity=\"" + svg_num(opacity) + "\"";
  body_ += "/>\n";
}

void SvgDocument::circle(double cx, double cy, double r,
                         const std::string& fill) {
  body_ += "<circle cx=\"" + svg_num(cx) + "\" cy=\"" + svg_num(cy) +
           "\" r=\"" + svg_num(r) + "\" fill=\"" + fill + "\"/>\n";
}

void SvgDocument::text(double x, double y, const std::string& s, double size,
                       const std::string& fill) {
  body_ += "<text x=\"" + svg_num(x) + "\" y=\"" + svg_num(y) +
           "\" font-size=\"" + svg_num(size) +
           "\" font-family=\"monospace\" fill=\"" + fill + "\">" + s +
           "</text>\n";
}

std::string SvgDocument::str() const {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         svg_num(width_) + "\" height=\"" + svg_num(height_) +
         "\" viewBox=\"0 0 " + svg_num(width_) + " " + svg_num(height_) +
         "\">\n" + body_ + "</svg>\n";
}

}  // namespace larsson
