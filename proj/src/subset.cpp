#include "sharkteeth/subset.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "sharkteeth/error.hpp"

namespace shark {

IntervalSet::IntervalSet(std::vector<Interval> items) {
  std::sort(items.begin(), items.end(), [](const Interval& a, const Interval& b) {
    int c = cmp(a.lo, b.lo);
    return c != 0 ? c < 0 : a.hi < b.hi;
  });
  for (auto& it : items) {
    if (!items_.empty() && it.lo <= items_.back().hi) {
      if (it.hi > items_.back().hi) items_.back().hi = it.hi;
    } else {
      items_.push_back(std::move(it));
    }
  }
}

bool IntervalSet::contains(const Rational& t) const {
  auto it = std::upper_bound(items_.begin(), items_.end(), t,
                             [](const Rational& x, const Interval& iv) { return x < iv.lo; });
  if (it == items_.begin()) return false;
  return std::prev(it)->contains(t);
}

IntervalSet IntervalSet::shifted(const Rational& by) const {
  IntervalSet out;
  out.items_.reserve(items_.size());
  for (const auto& iv : items_) out.items_.push_back(Interval{iv.lo + by, iv.hi + by});
  return out;
}

BigInt MSubset::segment_count() const {
  BigInt n = static_cast<unsigned long>(bone_.items().size());
  for (const auto& b : blocks_) n += b.count() * static_cast<unsigned long>(b.intervals.items().size());
  return n;
}

std::vector<Segment> MSubset::segments(std::size_t limit) const {
  if (segment_count() > static_cast<unsigned long>(limit))
    fail(ErrorCode::ResourceLimit, "subset has " + segment_count().get_str() + " segments, limit " + std::to_string(limit));
  std::vector<Segment> out;
  for (const auto& iv : bone_.items()) out.push_back(Segment{Carrier::bone(), iv.lo, iv.hi});
  for (const auto& b : blocks_) {
    for (BigInt k = b.first; k <= b.last; ++k)
      for (const auto& iv : b.intervals.items()) out.push_back(Segment{Carrier{k}, iv.lo, iv.hi});
  }
  return out;
}

bool MSubset::is_singleton() const {
  if (blocks_.empty()) return bone_.items().size() == 1 && bone_.items()[0].degenerate();
  if (!bone_.empty() || blocks_.size() != 1) return false;
  const RowBlock& b = blocks_[0];
  return b.first == b.last && b.intervals.items().size() == 1 && b.intervals.items()[0].degenerate();
}

namespace {

bool touches_bone_at(const Space& space, const RowBlock& b, const Rational& t) {
  // n_k is non-decreasing, so the last row has the finest tooth grid of the block.
  return phi_n(space.tooth_exp_of_row(b.last), t) == 0;
}

const RowBlock* block_of(const std::vector<RowBlock>& blocks, const BigInt& k) {
  auto it = std::upper_bound(blocks.begin(), blocks.end(), k,
                             [](const BigInt& row, const RowBlock& b) { return row < b.first; });
  if (it == blocks.begin()) return nullptr;
  const RowBlock& b = *std::prev(it);
  return k <= b.last ? &b : nullptr;
}

}  // namespace

bool MSubset::contains(const Space& space, const MPoint& p) const {
  MPoint q = canonicalize(space, p);
  if (q.carrier.is_bone()) {
    if (bone_.contains(q.t)) return true;
    for (const auto& b : blocks_)
      if (b.intervals.contains(q.t) && touches_bone_at(space, b, q.t)) return true;
    return false;
  }
  const RowBlock* b = block_of(blocks_, q.carrier.row);
  return b != nullptr && b->intervals.contains(q.t);
}

namespace {
void check_bounds(const Rational& lo, const Rational& hi) {
  if (lo > hi || lo < 0 || hi > 1)
    fail(ErrorCode::InvalidArgument, "interval [" + to_string(lo) + ", " + to_string(hi) + "] is not inside [0,1]");
}
}  // namespace

void SubsetBuilder::add_bone(const Rational& lo, const Rational& hi) {
  check_bounds(lo, hi);
  bone_.push_back(Interval{lo, hi});
}

void SubsetBuilder::add_rows(const BigInt& first, const BigInt& last, const Rational& lo, const Rational& hi) {
  check_bounds(lo, hi);
  if (first < 1 || first > last) fail(ErrorCode::InvalidArgument, "invalid row range");
  if (lo != hi) {
    rows_.push_back(RowItem{first, last, Interval{lo, hi}});
    return;
  }
  BigInt a = first;
  while (a <= last) {
    const Generation& g = space_.generation(space_.generation_of_row(a));
    BigInt b = g.last_row() < last ? g.last_row() : last;
    if (phi_n(g.tooth_exp, lo) == 0)
      bone_.push_back(Interval{lo, lo});
    else
      rows_.push_back(RowItem{a, b, Interval{lo, lo}});
    a = b + 1;
  }
}

void SubsetBuilder::add_segment(const Segment& s) {
  if (s.carrier.is_bone())
    add_bone(s.lo, s.hi);
  else
    add_rows(s.carrier.row, s.carrier.row, s.lo, s.hi);
}

void SubsetBuilder::add_point(const MPoint& p) { add_segment(Segment{p.carrier, p.t, p.t}); }

void SubsetBuilder::add(const MSubset& other) {
  for (const auto& iv : other.bone().items()) bone_.push_back(iv);
  for (const auto& b : other.blocks())
    for (const auto& iv : b.intervals.items()) rows_.push_back(RowItem{b.first, b.last, iv});
}

MSubset SubsetBuilder::build() const {
  MSubset out;

  struct Event {
    BigInt pos;
    std::size_t item;
    bool start;
  };
  std::vector<Event> events;
  events.reserve(rows_.size() * 2);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    events.push_back(Event{rows_[i].first, i, true});
    events.push_back(Event{BigInt(rows_[i].last + 1), i, false});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.pos < b.pos; });

  std::set<std::size_t> active;
  std::size_t e = 0;
  while (e < events.size()) {
    BigInt pos = events[e].pos;
    while (e < events.size() && events[e].pos == pos) {
      if (events[e].start)
        active.insert(events[e].item);
      else
        active.erase(events[e].item);
      ++e;
    }
    if (active.empty() || e == events.size()) continue;
    BigInt next = events[e].pos;
    std::vector<Interval> items;
    items.reserve(active.size());
    for (std::size_t idx : active) items.push_back(rows_[idx].interval);
    IntervalSet set(std::move(items));
    if (!out.blocks_.empty() && out.blocks_.back().last + 1 == pos && out.blocks_.back().intervals == set)
      out.blocks_.back().last = next - 1;
    else
      out.blocks_.push_back(RowBlock{pos, BigInt(next - 1), std::move(set)});
  }

  std::vector<Interval> bone;
  for (const auto& iv : bone_) {
    if (iv.degenerate()) {
      bool absorbed = false;
      for (const auto& b : out.blocks_) {
        if (b.intervals.contains(iv.lo) && touches_bone_at(space_, b, iv.lo)) {
          absorbed = true;
          break;
        }
      }
      if (absorbed) continue;
    }
    bone.push_back(iv);
  }
  out.bone_ = IntervalSet(std::move(bone));
  return out;
}

MSubset subset_of(const Space& space, const std::vector<Segment>& segments) {
  SubsetBuilder b(space);
  for (const auto& s : segments) b.add_segment(s);
  return b.build();
}

MSubset unite(const Space& space, const MSubset& a, const MSubset& b) {
  SubsetBuilder builder(space);
  builder.add(a);
  builder.add(b);
  return builder.build();
}

MSubset truncate_M(const Space& space, std::size_t i_max) {
  SubsetBuilder b(space);
  b.add_bone(0, 1);
  b.add_rows(1, space.generation(i_max).last_row(), 0, 1);
  return b.build();
}

std::vector<PlanePoint> extreme_vertices(const Space& space, const MSubset& a) {
  std::vector<PlanePoint> out;
  for (const auto& iv : a.bone().items()) {
    out.push_back(PlanePoint{iv.lo, 0});
    out.push_back(PlanePoint{iv.hi, 0});
  }
  for (const auto& b : a.blocks()) {
    BigInt row = b.first;
    while (row <= b.last) {
      const Generation& g = space.generation(space.generation_of_row(row));
      BigInt end = g.last_row() < b.last ? g.last_row() : b.last;
      // Points of rows strictly between `row` and `end` lie on vertical chords between these two.
      for (const BigInt& k : {row, end}) {
        for (const auto& iv : b.intervals.items()) {
          auto poly = polyline_of(space, Segment{Carrier{k}, iv.lo, iv.hi});
          out.insert(out.end(), poly.begin(), poly.end());
        }
        if (row == end) break;
      }
      row = end + 1;
    }
  }
  return out;
}

namespace {

Rational cross(const PlanePoint& o, const PlanePoint& a, const PlanePoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::vector<PlanePoint> convex_hull(std::vector<PlanePoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const PlanePoint& a, const PlanePoint& b) {
    int c = cmp(a.x, b.x);
    return c != 0 ? c < 0 : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<PlanePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

Rational exact_diameter_sq(const Space& space, const MSubset& a) {
  if (a.empty()) fail(ErrorCode::InvalidArgument, "diameter of an empty subset");
  std::vector<PlanePoint> hull = convex_hull(extreme_vertices(space, a));
  Rational best = 0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j) {
      Rational d = distance_sq(hull[i], hull[j]);
      if (d > best) best = d;
    }
  return best;
}

namespace {

std::string describe_set(const IntervalSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.items().size(); ++i) {
    const auto& iv = s.items()[i];
    if (i) out += ", ";
    out += "[" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]";
  }
  return out + "}";
}

}  // namespace

std::optional<std::string> first_difference(const MSubset& a, const MSubset& b) {
  if (!(a.bone() == b.bone())) return "bone: " + describe_set(a.bone()) + " vs " + describe_set(b.bone());
  // Walk row boundaries of both block lists.
  std::vector<BigInt> cuts;
  for (const auto* list : {&a.blocks(), &b.blocks()})
    for (const auto& blk : *list) {
      cuts.push_back(blk.first);
      cuts.push_back(blk.last + 1);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  static const IntervalSet kEmpty;
  for (const auto& r : cuts) {
    const RowBlock* ba = block_of(a.blocks(), r);
    const RowBlock* bb = block_of(b.blocks(), r);
    const IntervalSet& sa = ba ? ba->intervals : kEmpty;
    const IntervalSet& sb = bb ? bb->intervals : kEmpty;
    if (!(sa == sb)) return "row " + r.get_str() + ": " + describe_set(sa) + " vs " + describe_set(sb);
  }
  return std::nullopt;
}

std::string describe(const MSubset& a, std::size_t max_blocks) {
  std::ostringstream os;
  os << "bone" << describe_set(a.bone());
  std::size_t shown = 0;
  for (const auto& b : a.blocks()) {
    if (shown++ == max_blocks) {
      os << " ... (" << a.blocks().size() << " blocks)";
      break;
    }
    os << " rows " << b.first.get_str();
    if (b.last != b.first) os << ".." << b.last.get_str();
    os << describe_set(b.intervals);
  }
  return os.str();
}

}  // namespace shark
