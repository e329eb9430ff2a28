#pragma once

#include <string>
#include <utility>
#include <vector>

namespace larsson {

// Minimal deterministic SVG writer: fixed number formatting, elements
// appear exactly in insertion order, no timestamps or ids.
class SvgDocument {
 public:
  SvgDocument(double width, double height);

  void line(double x1, double y1, double x2, double y2,
            const std::string& stroke, double stroke_width = 1.0);
  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& stroke = "none", double stroke_width = 1.0,
            double opacity = 1.0);
  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& stroke, double stroke_width = 1.0);
  void polygon(const std::vector<std::pair<double, double>>& pts,
               const std::string& fill, double opacity = 1.0);
  void circle(double cx, double cy, double r, const std::string& fill);
  void text(double x, double y, const std::string& s, double size = 12.0,
            const std::string& fill = "black");

  std::string str() const;

 private:
  double width_, height_;
  std::string body_;
};

std::string svg_num(double v);  // "%.6g", shared by all elements

}  // namespace larsson
