#include <cmath>
#include <random>

#include "doctest.h"
#include "sharkteeth/error.hpp"
#include "sharkteeth/subset.hpp"

using namespace shark;

namespace {

// Squared diameter in doubles over every polyline vertex of every segment.
double brute_diam_sq(const Space& sp, const MSubset& a) {
  std::vector<std::pair<double, double>> pts;
  for (const Segment& s : a.segments())
    for (const PlanePoint& p : polyline_of(sp, s)) pts.push_back({to_double(p.x), to_double(p.y)});
  double best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double dx = pts[i].first - pts[j].first, dy = pts[i].second - pts[j].second;
      best = std::max(best, dx * dx + dy * dy);
    }
  return best;
}

Segment seg(long row, Rational lo, Rational hi) {
  return Segment{row == 0 ? Carrier::bone() : Carrier{BigInt(row)}, lo, hi};
}

}  // namespace

TEST_CASE("interval sets merge touching pieces") {
  IntervalSet s({{Rational(1, 2), Rational(3, 4)}, {Rational(0), Rational(1, 2)}, {Rational(7, 8), Rational(1)}});
  REQUIRE(s.items().size() == 2);
  CHECK(s.items()[0] == Interval{Rational(0), Rational(3, 4)});
  CHECK(s.contains(Rational(3, 4)));
  CHECK_FALSE(s.contains(Rational(13, 16)));
}

TEST_CASE("normal form: equal rows merge into blocks, bone points fold") {
  Space sp = Space::canonical();
  MSubset a = subset_of(sp, {seg(3, Rational(0), Rational(1, 2)), seg(4, Rational(0), Rational(1, 2)),
                             seg(5, Rational(0), Rational(1, 2))});
  REQUIRE(a.blocks().size() == 1);
  CHECK(a.blocks()[0].first == 3);
  CHECK(a.blocks()[0].last == 5);
  CHECK(a.segment_count() == 3);

  // A degenerate row piece on the bone is a bone point; a bone point under a row segment disappears.
  MSubset b = subset_of(sp, {seg(3, Rational(1, 2), Rational(1, 2))});
  CHECK(b.blocks().empty());
  CHECK(b.bone().items().size() == 1);
  MSubset c = subset_of(sp, {seg(3, Rational(0), Rational(1, 2)), seg(0, Rational(1, 2), Rational(1, 2))});
  CHECK(c.bone().empty());
  CHECK(c == subset_of(sp, {seg(3, Rational(0), Rational(1, 2))}));
  CHECK(c.is_singleton() == false);
  CHECK(b.is_singleton());
}

TEST_CASE("order of insertion does not matter") {
  Space sp = Space::canonical();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Segment> segs;
    for (int i = 0; i < 12; ++i) {
      long row = static_cast<long>(rng() % 20);
      unsigned long a = rng() % 17, b = a + rng() % (17 - a);
      segs.push_back(seg(row, make_rational(BigInt(a), BigInt(16)), make_rational(BigInt(b), BigInt(16))));
    }
    MSubset x = subset_of(sp, segs);
    std::shuffle(segs.begin(), segs.end(), rng);
    MSubset y = subset_of(sp, segs);
    CHECK(x == y);
    CHECK_FALSE(first_difference(x, y).has_value());
    for (const Segment& s : segs) CHECK(x.contains(sp, MPoint{s.carrier, s.hi}));
  }
}

TEST_CASE("truncations and their size") {
  Space sp = Space::canonical();
  CHECK(truncate_M(sp, 0).segment_count() == 3);
  CHECK(truncate_M(sp, 1).segment_count() == 15);
  CHECK(truncate_M(sp, 2).segment_count() == 255);
  CHECK(truncate_M(sp, 3).segment_count() == 65535);
  CHECK(truncate_M(sp, 5).segment_count() == pow2(64) - 1);
  auto d = first_difference(truncate_M(sp, 1), truncate_M(sp, 2));
  REQUIRE(d.has_value());
}

TEST_CASE("diameter of M is 1 on every small truncation") {
  Space sp = Space::canonical();
  for (std::size_t depth = 0; depth <= 3; ++depth) CHECK(exact_diameter_sq(sp, truncate_M(sp, depth)) == 1);
  CHECK_THROWS_AS(exact_diameter_sq(sp, MSubset{}), Error);
}

TEST_CASE("exact diameter agrees with brute force over vertices") {
  Space sp = Space::canonical();
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Segment> segs;
    int count = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < count; ++i) {
      long row = static_cast<long>(rng() % 40);
      unsigned long a = rng() % 65, b = a + rng() % (65 - a);
      segs.push_back(seg(row, make_rational(BigInt(a), BigInt(64)), make_rational(BigInt(b), BigInt(64))));
    }
    MSubset s = subset_of(sp, segs);
    CHECK(to_double(exact_diameter_sq(sp, s)) == doctest::Approx(brute_diam_sq(sp, s)).epsilon(1e-12));
  }
  // Single tooth apex to its base corner: (1/4, 1/12) against (0, 0) on row 3.
  MSubset tooth = subset_of(sp, {seg(3, Rational(0), Rational(1, 4))});
  CHECK(exact_diameter_sq(sp, tooth) == Rational(1, 16) + Rational(1, 144));
}
