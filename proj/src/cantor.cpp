#include "larsson/cantor.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "larsson/errors.hpp"
#include "larsson/rng.hpp"

namespace larsson {

namespace {

std::string address_string(int level, std::uint32_t path_bits) {
  std::string s(static_cast<std::size_t>(level), '1');
  for (int k = 0; k < level; ++k) {
    if (path_bits >> (level - 1 - k) & 1u) s[static_cast<std::size_t>(k)] = '2';
  }
  return s;
}

}  // namespace

OffsetTree::OffsetTree(const Params& p, int depth, std::uint64_t seed,
                       std::uint64_t tree_id)
    : params_(p), depth_(depth), seed_(seed), tree_id_(tree_id) {
  if (depth < 1 || depth > 30) throw DepthExceeded("tree depth must be in 1..30");
  const double t = derive(p).t;
  levels_.resize(static_cast<std::size_t>(depth));
  for (int level = 1; level <= depth; ++level) {
    auto& row = levels_[static_cast<std::size_t>(level) - 1];
    row.resize(std::size_t{1} << level);
    for (std::uint32_t idx = 0; idx < row.size(); ++idx) {
      std::uint64_t state = node_state(seed, tree_id, level, idx);
      row[idx] = t * to_unit(splitmix64(state));
    }
  }
  rebuild_endpoints();
}

OffsetTree OffsetTree::with_offsets(const Params& p,
                                    std::vector<std::vector<double>> levels) {
  OffsetTree tree(p, static_cast<int>(levels.size()), 0, 0);
  for (std::size_t l = 0; l < levels.size(); ++l) {
    if (levels[l].size() != (std::size_t{1} << (l + 1)))
      throw BadIndex("level " + std::to_string(l + 1) + " must hold 2^level offsets");
  }
  tree.levels_ = std::move(levels);
  tree.rebuild_endpoints();
  return tree;
}

// Children of an interval starting at q with length a^(l-1) start at
// q + a^(l-1)(b + U_1) and q + a^(l-1)(1/2 + a/2 + U_2).
void OffsetTree::rebuild_endpoints() {
  const Params& p = params_;
  endpoints_.assign(static_cast<std::size_t>(depth_) + 1, {});
  endpoints_[0] = {0.0};
  double parent_len = 1.0;
  for (int level = 1; level <= depth_; ++level) {
    const auto& parents = endpoints_[static_cast<std::size_t>(level) - 1];
    auto& row = endpoints_[static_cast<std::size_t>(level)];
    row.resize(std::size_t{1} << level);
    for (std::uint32_t j = 0; j < parents.size(); ++j) {
      const double q = parents[j];
      row[2 * j] = q + parent_len * (p.b + offset(level, 2 * j));
      row[2 * j + 1] =
          q + parent_len * (0.5 + p.a / 2.0 + offset(level, 2 * j + 1));
    }
    parent_len *= p.a;
  }
}

double OffsetTree::offset(const std::string& address) const {
  const int level = static_cast<int>(address.size());
  if (level < 1 || level > depth_)
    throw DepthExceeded("address level outside 1..depth");
  std::uint32_t bits = 0;
  for (char ch : address) {
    if (ch != '1' && ch != '2') throw BadIndex("address digits must be 1 or 2");
    bits = bits << 1 | static_cast<std::uint32_t>(ch - '1');
  }
  return offset(level, bits);
}

const std::vector<double>& OffsetTree::left_endpoints(int n) const {
  if (n < 0 || n > depth_) throw DepthExceeded("level exceeds tree depth");
  return endpoints_[static_cast<std::size_t>(n)];
}

std::string OffsetTree::to_json() const {
  nlohmann::json j;
  j["seed"] = seed_;
  j["tree_id"] = tree_id_;
  j["depth"] = depth_;
  nlohmann::json offsets = nlohmann::json::object();
  for (int level = 1; level <= depth_; ++level) {
    const auto& row = levels_[static_cast<std::size_t>(level) - 1];
    for (std::uint32_t idx = 0; idx < row.size(); ++idx) {
      offsets[address_string(level, idx)] = row[idx];
    }
  }
  j["offsets"] = std::move(offsets);
  return j.dump(2);
}

IntervalSet level_intervals(const OffsetTree& tree, const Params& p, int n) {
  if (n > tree.depth()) throw DepthExceeded("level exceeds tree depth");
  const double len = std::pow(p.a, n);
  std::vector<Interval> parts;
  parts.reserve(std::size_t{1} << n);
  for (double lo : tree.left_endpoints(n)) parts.push_back({lo, lo + len});
  return IntervalSet::normalized(std::move(parts));
}

std::vector<Square> product_squares(const OffsetTree& t1, const OffsetTree& t2,
                                    const Params& p, int n) {
  if (n > t1.depth() || n > t2.depth())
    throw DepthExceeded("level exceeds tree depth");
  const double side = std::pow(p.a, n);
  const auto& ex = t1.left_endpoints(n);
  const auto& ey = t2.left_endpoints(n);
  std::vector<Square> out;
  out.reserve(ex.size() * ey.size());
  for (std::uint32_t i = 0; i < ex.size(); ++i) {
    for (std::uint32_t j = 0; j < ey.size(); ++j) {
      out.push_back(Square{n, ex[i], ey[j], side, i, j});
    }
  }
  return out;
}

int q_label(int digit_x, int digit_y) {
  // (left, bottom) -> 4, (left, top) -> 1, (right, bottom) -> 3,
  // (right, top) -> 2; clockwise starting at the top-left square.
  if (digit_x == 1) return digit_y == 1 ? 4 : 1;
  return digit_y == 1 ? 3 : 2;
}

std::string q_label_string(const Square& q) {
  std::string s;
  for (int k = q.level - 1; k >= 0; --k) {
    const int dx = 1 + (q.ix >> k & 1u);
    const int dy = 1 + (q.iy >> k & 1u);
    s.push_back(static_cast<char>('0' + q_label(dx, dy)));
  }
  return s;
}

TypeValue phi(const Square& q, double x) {
  const double value = (q.u - q.v + x) / q.side;
  if (value < -1.0 || value > 1.0) return std::nullopt;
  return value;
}

Interval project(const Square& q) {
  return {q.v - q.u - q.side, q.v - q.u + q.side};
}

OffspringList offspring_types(double x, double u1, double u2, double u3,
                              double u4, const Params& p) {
  const double half = 0.5 + p.a / 2.0 - p.b;
  const std::array<double, 4> raw = {
      (x - half + u1 - u4) / p.a,
      (x + u2 - u4) / p.a,
      (x + half + u2 - u3) / p.a,
      (x + u1 - u3) / p.a,
  };
  OffspringList out;
  for (int i = 0; i < 4; ++i) {
    if (raw[static_cast<std::size_t>(i)] >= -1.0 &&
        raw[static_cast<std::size_t>(i)] <= 1.0) {
      out.items[static_cast<std::size_t>(out.count)] =
          Offspring{i + 1, raw[static_cast<std::size_t>(i)]};
      ++out.count;
    }
  }
  return out;
}

}  // namespace larsson
