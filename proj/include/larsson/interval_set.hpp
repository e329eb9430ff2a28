#pragma once

#include <vector>

namespace larsson {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Sorted union of disjoint closed intervals on the line.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(Interval iv);

  // Sorts, drops empty pieces and merges parts whose gap is < merge_gap.
  static IntervalSet normalized(std::vector<Interval> parts,
                                double merge_gap = 0.0);

  void add(Interval iv, double merge_gap = 0.0);

  bool contains(double x) const;
  bool covers(Interval iv) const;  // iv inside a single part
  IntervalSet intersect(Interval iv) const;
  IntervalSet intersect(const IntervalSet& other) const;
  void subtract(Interval iv);

  double total_length() const;
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  const Interval& operator[](std::size_t i) const { return parts_[i]; }
  const std::vector<Interval>& parts() const { return parts_; }
  double min() const { return parts_.front().lo; }
  double max() const { return parts_.back().hi; }

  // Hausdorff-style comparison: same part count and endpoints within tol.
  bool approx_equals(const IntervalSet& other, double tol) const;

 private:
  std::vector<Interval> parts_;
};

}  // namespace larsson
