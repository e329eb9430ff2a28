#include "larsson/render.hpp"

#include <algorithm>
#include <cmath>

#include "larsson/errors.hpp"
#include "larsson/kernel.hpp"
#include "larsson/svg.hpp"

namespace larsson {

namespace {

constexpr double kMargin = 40.0;

struct Frame {
  double x0, x1, y0, y1, w, h;  // data range and pixel size
  double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * w; }
  double py(double y) const { return kMargin + (y1 - y) / (y1 - y0) * h; }
};

}  // namespace

std::string render_region(const Params& marked) {
  const Frame f{0.24, 0.345, 0.0, 0.14, 520.0, 420.0};
  SvgDocument doc(f.w + 2 * kMargin, f.h + 2 * kMargin);

  // Admissible triangle: a > 1/4, b > 0, 3a + 2b < 1.
  doc.polygon({{f.px(0.25), f.py(0.0)},
               {f.px(1.0 / 3.0), f.py(0.0)},
               {f.px(0.25), f.py(0.125)}},
              "#cfe3ff", 0.8);

  // Boundary of the simple region: 1 - 4a - 2b + 3a^2 - 6ab = 0.
  std::vector<std::pair<double, double>> curve;
  const int samples = 120;
  for (int i = 0; i <= samples; ++i) {
    const double a = 0.25 + (1.0 / 3.0 - 0.25) * i / samples;
    const double b = (1.0 - a) * (1.0 - 3.0 * a) / (2.0 * (1.0 + 3.0 * a));
    curve.push_back({f.px(a), f.py(b)});
  }
  doc.polyline(curve, "#d04040", 1.5);

  doc.line(f.px(f.x0), f.py(0.0), f.px(f.x1), f.py(0.0), "black");
  doc.line(f.px(0.25), f.py(f.y0), f.px(0.25), f.py(f.y1), "black");
  doc.text(f.px(f.x1) - 20, f.py(0.0) + 16, "a");
  doc.text(f.px(0.25) - 16, f.py(f.y1) + 12, "b");
  doc.text(f.px(0.27), f.py(0.015), "simple", 11, "#204080");
  doc.text(f.px(0.295), f.py(0.055), "general", 11, "#803030");

  doc.circle(f.px(marked.a), f.py(marked.b), 3.5, "black");
  return doc.str();
}

std::string render_cantor_levels(const OffsetTree& tree, const Params& p,
                                 int depth) {
  if (depth > tree.depth()) throw MissingData("tree shallower than requested depth");
  const double width = 720.0, row = 34.0;
  SvgDocument doc(width + 2 * kMargin, (depth + 1) * row + 2 * kMargin);
  for (int n = 0; n <= depth; ++n) {
    const double y = kMargin + n * row;
    const IntervalSet set =
        n == 0 ? IntervalSet(Interval{0.0, 1.0}) : level_intervals(tree, p, n);
    for (const Interval& iv : set.parts()) {
      doc.rect(kMargin + iv.lo * width, y, std::max(iv.length() * width, 0.5),
               row * 0.55, "#305090");
    }
  }
  return doc.str();
}

std::string render_squares(const OffsetTree& t1, const OffsetTree& t2,
                           const Params& p, int depth, double x) {
  if (depth > t1.depth() || depth > t2.depth())
    throw MissingData("trees shallower than requested depth");
  const double size = 560.0;
  const Frame f{0.0, 1.0, 0.0, 1.0, size, size};
  SvgDocument doc(size + 2 * kMargin, size + 2 * kMargin);
  doc.rect(f.px(0.0), f.py(1.0), size, size, "none", "black");

  for (int n = 1; n <= depth; ++n) {
    const char* color = n % 2 ? "#305090" : "#7296c8";
    for (const Square& q : product_squares(t1, t2, p, n)) {
      doc.rect(f.px(q.u), f.py(q.v + q.side), q.side * size, q.side * size,
               n == depth ? color : "none", color, depth - n + 0.5, 0.9);
    }
  }
  for (const Square& q : product_squares(t1, t2, p, 1)) {
    doc.text(f.px(q.u + q.side / 2) - 8, f.py(q.v + q.side / 2) + 4,
             "Q" + q_label_string(q), 13, "black");
  }

  // e(x): the slope-1 line through (0, x), clipped to the unit square.
  if (x >= -1.0 && x <= 1.0) {
    const double u0 = std::max(0.0, -x), u1 = std::min(1.0, 1.0 - x);
    if (u0 <= u1) {
      doc.line(f.px(u0), f.py(u0 + x), f.px(u1), f.py(u1 + x), "#c03030", 1.5);
      doc.text(f.px(u1) - 34, f.py(u1 + x) - 6, "e(x)", 12, "#c03030");
    }
  }
  return doc.str();
}

std::string render_kernel_stripes(const Params& p, const TypeSpace& T) {
  const double size = 560.0;
  const Frame f{-1.0, 1.0, -1.0, 1.0, size, size};
  SvgDocument doc(size + 2 * kMargin, size + 2 * kMargin);
  doc.rect(f.px(-1.0), f.py(1.0), size, size, "none", "black");

  // Type-space bands on both axes.
  for (const Interval& comp : T.components.parts()) {
    doc.rect(f.px(comp.lo), f.py(1.0), comp.length() / 2.0 * size, size,
             "#d8d8d8", "none", 1.0, 0.6);
    doc.rect(f.px(-1.0), f.py(comp.hi), size, comp.length() / 2.0 * size,
             "#d8d8d8", "none", 1.0, 0.6);
  }

  // Stripes S_k between lines l_{2k-1} (upper) and l_{2k} (lower),
  // clipped to the box by sampling.
  const LineFamily lines = LineFamily::from(p);
  for (int k = 1; k <= 3; ++k) {
    std::vector<std::pair<double, double>> top, bottom;
    const int samples = 160;
    for (int i = 0; i <= samples; ++i) {
      const double x = -1.0 + 2.0 * i / samples;
      double hi = lines.eval(2 * k - 1, x, p);
      double lo = lines.eval(2 * k, x, p);
      if (hi < -1.0 || lo > 1.0) continue;
      hi = std::min(hi, 1.0);
      lo = std::max(lo, -1.0);
      top.push_back({f.px(x), f.py(hi)});
      bottom.push_back({f.px(x), f.py(lo)});
    }
    if (top.empty()) continue;
    std::vector<std::pair<double, double>> poly = top;
    poly.insert(poly.end(), bottom.rbegin(), bottom.rend());
    doc.polygon(poly, "#6a92d4", 0.45);
  }
  for (int j = 1; j <= 6; ++j) {
    const double y0 = lines.eval(j, -1.0, p), y1 = lines.eval(j, 1.0, p);
    // Clip the segment to the box.
    double xa = -1.0, xb = 1.0;
    if (y0 < -1.0) xa = p.a * (-1.0 - lines.intercept[static_cast<std::size_t>(j) - 1]);
    if (y1 > 1.0) xb = p.a * (1.0 - lines.intercept[static_cast<std::size_t>(j) - 1]);
    if (xa > 1.0 || xb < -1.0 || xa > xb) continue;
    doc.line(f.px(xa), f.py(lines.eval(j, xa, p)), f.px(xb),
             f.py(lines.eval(j, xb, p)), "#204080", 0.8);
  }
  return doc.str();
}

std::string render(const RenderBundle& bundle, RenderKind kind) {
  switch (kind) {
    case RenderKind::Region:
      if (!bundle.params) throw MissingData("region figure needs params");
      return render_region(*bundle.params);
    case RenderKind::CantorLevels:
      if (!bundle.params || !bundle.tree1)
        throw MissingData("construction figure needs params and a tree");
      return render_cantor_levels(*bundle.tree1, *bundle.params, bundle.depth);
    case RenderKind::Squares:
      if (!bundle.params || !bundle.tree1 || !bundle.tree2)
        throw MissingData("squares figure needs params and two trees");
      return render_squares(*bundle.tree1, *bundle.tree2, *bundle.params,
                            bundle.depth, bundle.x);
    case RenderKind::KernelStripes:
      if (!bundle.params || !bundle.typespace)
        throw MissingData("kernel figure needs params and a type space");
      return render_kernel_stripes(*bundle.params, *bundle.typespace);
  }
  throw MissingData("unknown figure kind");
}

}  // namespace larsson
