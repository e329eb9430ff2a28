#include "larsson/interval_set.hpp"

#include <algorithm>
#include <cmath>

namespace larsson {

IntervalSet::IntervalSet(Interval iv) {
  if (iv.hi >= iv.lo) parts_.push_back(iv);
}

IntervalSet IntervalSet::normalized(std::vector<Interval> parts,
                                    double merge_gap) {
  std::erase_if(parts, [](const Interval& iv) { return iv.hi < iv.lo; });
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  IntervalSet out;
  for (const Interval& iv : parts) {
    if (!out.parts_.empty() && iv.lo - out.parts_.back().hi <= merge_gap) {
      out.parts_.back().hi = std::max(out.parts_.back().hi, iv.hi);
    } else {
      out.parts_.push_back(iv);
    }
  }
  return out;
}

void IntervalSet::add(Interval iv, double merge_gap) {
  std::vector<Interval> parts = parts_;
  parts.push_back(iv);
  *this = normalized(std::move(parts), merge_gap);
}

bool IntervalSet::contains(double x) const {
  auto it = std::upper_bound(
      parts_.begin(), parts_.end(), x,
      [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == parts_.begin()) return false;
  return std::prev(it)->contains(x);
}

bool IntervalSet::covers(Interval iv) const {
  for (const Interval& p : parts_) {
    if (p.lo <= iv.lo && iv.hi <= p.hi) return true;
  }
  return false;
}

IntervalSet IntervalSet::intersect(Interval iv) const {
  IntervalSet out;
  for (const Interval& p : parts_) {
    double lo = std::max(p.lo, iv.lo);
    double hi = std::min(p.hi, iv.hi);
    if (lo <= hi) out.parts_.push_back({lo, hi});
  }
  return out;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> acc;
  for (const Interval& iv : other.parts_) {
    IntervalSet piece = intersect(iv);
    acc.insert(acc.end(), piece.parts_.begin(), piece.parts_.end());
  }
  return normalized(std::move(acc));
}

void IntervalSet::subtract(Interval iv) {
  std::vector<Interval> out;
  out.reserve(parts_.size() + 1);
  for (const Interval& p : parts_) {
    if (iv.hi < p.lo || p.hi < iv.lo) {
      out.push_back(p);
      continue;
    }
    if (p.lo < iv.lo) out.push_back({p.lo, iv.lo});
    if (iv.hi < p.hi) out.push_back({iv.hi, p.hi});
  }
  parts_ = std::move(out);
}

double IntervalSet::total_length() const {
  double sum = 0.0;
  for (const Interval& p : parts_) sum += p.length();
  return sum;
}

bool IntervalSet::approx_equals(const IntervalSet& other, double tol) const {
  if (parts_.size() != other.parts_.size()) return false;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (std::abs(parts_[i].lo - other.parts_[i].lo) > tol) return false;
    if (std::abs(parts_[i].hi - other.parts_[i].hi) > tol) return false;
  }
  return true;
}

}  // namespace larsson
