#pragma once

#include <string>

#include "larsson/cantor.hpp"
#include "larsson/params.hpp"
#include "larsson/type_space.hpp"

namespace larsson {

enum class RenderKind { Region, CantorLevels, Squares, KernelStripes };

// Everything a figure might need; each kind checks for its own inputs
// and throws MissingData otherwise.
struct RenderBundle {
  const Params* params = nullptr;
  const TypeSpace* typespace = nullptr;
  const OffsetTree* tree1 = nullptr;
  const OffsetTree* tree2 = nullptr;
  int depth = 0;
  double x = 0.0;  // intercept of the slope-1 line in the squares figure
};

std::string render(const RenderBundle& bundle, RenderKind kind);

// The admissible (a, b) triangle with the simple/general boundary curve.
std::string render_region(const Params& marked);

// Interval rows for construction levels 1..depth of one sampled set.
std::string render_cantor_levels(const OffsetTree& tree, const Params& p,
                                 int depth);

// Level-n squares of a product construction with the line e(x) overlaid.
std::string render_squares(const OffsetTree& t1, const OffsetTree& t2,
                           const Params& p, int depth, double x);

// The three slanted support stripes with the type-space bands.
std::string render_kernel_stripes(const Params& p, const TypeSpace& T);

}  // namespace larsson
