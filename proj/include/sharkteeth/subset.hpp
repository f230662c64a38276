#pragma once

// Exact finite unions of carrier-tagged parameter intervals.
//
// Consecutive rows that carry the same interval set are stored as one block, so
// images of whole generations (which can hold 2^64 rows) stay small. Normal form:
//   * interval sets are sorted, with overlapping or touching intervals merged;
//   * blocks are sorted, disjoint, and adjacent blocks with equal sets are merged;
//   * a degenerate row interval never sits on the bone (it is stored as a bone point);
//   * a bone point lying on some stored row segment is dropped.
// Two normal-form subsets are equal as point sets iff they compare equal.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sharkteeth/geometry.hpp"
#include "sharkteeth/rational.hpp"

namespace shark {

struct Interval {
  Rational lo;
  Rational hi;
  bool degenerate() const { return lo == hi; }
  bool contains(const Rational& t) const { return lo <= t && t <= hi; }
  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> items);  // normalizes

  const std::vector<Interval>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  bool contains(const Rational& t) const;
  IntervalSet shifted(const Rational& by) const;
  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> items_;
};

struct RowBlock {
  BigInt first;
  BigInt last;
  IntervalSet intervals;
  BigInt count() const { return last - first + 1; }
  friend bool operator==(const RowBlock&, const RowBlock&) = default;
};

class MSubset {
 public:
  MSubset() = default;

  const IntervalSet& bone() const { return bone_; }
  const std::vector<RowBlock>& blocks() const { return blocks_; }
  bool empty() const { return bone_.empty() && blocks_.empty(); }

  /// Number of carrier segments in the flat view.
  BigInt segment_count() const;
  /// Flat segment list, bone first then rows ascending; throws ResourceLimit above `limit`.
  std::vector<Segment> segments(std::size_t limit = 1'000'000) const;

  bool is_singleton() const;
  bool contains(const Space& space, const MPoint& p) const;

  friend bool operator==(const MSubset&, const MSubset&) = default;

 private:
  friend class SubsetBuilder;
  IntervalSet bone_;
  std::vector<RowBlock> blocks_;
};

/// Accumulates pieces in any order and produces the normal form.
class SubsetBuilder {
 public:
  explicit SubsetBuilder(const Space& space) : space_(space) {}

  void add_bone(const Rational& lo, const Rational& hi);
  void add_rows(const BigInt& first, const BigInt& last, const Rational& lo, const Rational& hi);
  void add_segment(const Segment& s);
  void add_point(const MPoint& p);
  void add(const MSubset& other);

  std::size_t pending() const { return rows_.size() + bone_.size(); }
  MSubset build() const;

 private:
  struct RowItem {
    BigInt first;
    BigInt last;
    Interval interval;
  };
  const Space& space_;
  std::vector<Interval> bone_;
  std::vector<RowItem> rows_;
};

MSubset subset_of(const Space& space, const std::vector<Segment>& segments);
MSubset unite(const Space& space, const MSubset& a, const MSubset& b);

/// Bone [0,1] plus full rows of generations 0..i_max.
MSubset truncate_M(const Space& space, std::size_t i_max);

/// Squared Euclidean diameter, exact. Throws InvalidArgument on an empty subset.
Rational exact_diameter_sq(const Space& space, const MSubset& a);

/// Polyline vertices that bound the subset's convex hull (first/last row per generation of a block).
std::vector<PlanePoint> extreme_vertices(const Space& space, const MSubset& a);

/// First place where the two normal forms differ, described as text; nullopt if equal.
std::optional<std::string> first_difference(const MSubset& a, const MSubset& b);

std::string describe(const MSubset& a, std::size_t max_blocks = 16);

}  // namespace shark
