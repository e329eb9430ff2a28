#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "larsson/interval_set.hpp"
#include "larsson/params.hpp"

namespace larsson {

// Rescaled intercept of the slope-1 line inside a square; disengaged
// (the line misses the square) is represented by nullopt and never
// enters arithmetic.
using TypeValue = std::optional<double>;

// One realization of the random construction: a uniform offset in [0, t]
// for every node of the depth-limited binary tree, derived from
// (seed, tree_id, address) so evaluation order never matters.
class OffsetTree {
 public:
  OffsetTree(const Params& p, int depth, std::uint64_t seed,
             std::uint64_t tree_id);

  // Builds a tree from explicit offsets (level l holds 2^l values);
  // used when reloading a serialized realization.
  static OffsetTree with_offsets(const Params& p,
                                 std::vector<std::vector<double>> levels);

  int depth() const { return depth_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t tree_id() const { return tree_id_; }

  // path_bits: digit d_k of the {1,2}-address mapped to bit d_k - 1,
  // MSB-first, so ("1","2") -> (0,1) at level 1.
  double offset(int level, std::uint32_t path_bits) const {
    return levels_[static_cast<std::size_t>(level) - 1][path_bits];
  }
  double offset(const std::string& address) const;  // throws DepthExceeded

  // Left endpoints of the 2^n level-n intervals, in increasing order.
  const std::vector<double>& left_endpoints(int n) const;

  std::string to_json() const;  // address -> offset map

 private:
  void rebuild_endpoints();

  Params params_;
  int depth_;
  std::uint64_t seed_, tree_id_;
  std::vector<std::vector<double>> levels_;     // offsets per level
  std::vector<std::vector<double>> endpoints_;  // cached left endpoints
};

IntervalSet level_intervals(const OffsetTree& tree, const Params& p, int n);

// Level-n product square with lower-left corner (u, v), side a^n.
// ix/iy are the MSB-first bit paths of the two {1,2}-addresses.
struct Square {
  int level = 0;
  double u = 0.0;
  double v = 0.0;
  double side = 1.0;
  std::uint32_t ix = 0;
  std::uint32_t iy = 0;
};

std::vector<Square> product_squares(const OffsetTree& t1,
                                    const OffsetTree& t2, const Params& p,
                                    int n);

// Clockwise-from-top-left label of a child square given the per-axis
// digits (1 = left/bottom interval, 2 = right/top interval).
int q_label(int digit_x, int digit_y);
std::string q_label_string(const Square& q);

TypeValue phi(const Square& q, double x);
Interval project(const Square& q);

struct Offspring {
  int index;    // 1..4, clockwise label of the child square
  double type;  // in [-1, 1]
};

struct OffspringList {
  std::array<Offspring, 4> items;
  int count = 0;
  const Offspring* begin() const { return items.data(); }
  const Offspring* end() const { return items.data() + count; }
};

// The four candidate child types of a type-x individual given the fresh
// uniforms (u1, u2 horizontal; u3, u4 vertical); entries outside [-1, 1]
// are absent.
OffspringList offspring_types(double x, double u1, double u2, double u3,
                              double u4, const Params& p);

}  // namespace larsson
