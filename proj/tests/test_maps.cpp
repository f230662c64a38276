#include <map>
#include <random>

#include "doctest.h"
#include "sharkteeth/error.hpp"
#include "sharkteeth/maps.hpp"

using namespace shark;

namespace {

// f1 on the canonical space straight from the closed forms k_i = 2^{2^i} - 1,
// N_i = 2^{2^{i+1}} - 2^{2^i}, s_i = 2^{2^{i+1}} + 2^{2^i}.
MPoint oracle_f1(const MPoint& p) {
  if (p.carrier.is_bone()) return MPoint::bone(p.t / 2);
  unsigned long i = 0;
  while (pow2(1ul << (i + 1)) - 1 <= p.carrier.row) ++i;
  BigInt k_i = pow2(1ul << i) - 1;
  BigInt k_next = pow2(1ul << (i + 1)) - 1;
  BigInt s = pow2(1ul << (i + 1)) + pow2(1ul << i);
  BigInt teeth = pow2(i);
  Rational x = p.t * Rational(teeth);
  BigInt j = floor(x);
  if (Rational(j) == x) return MPoint::bone(p.t / 2);  // on the bone
  Rational u = x - Rational(j);
  // Pieces [q/(s+1), (q+1)/(s+1)], lower one at a shared end.
  Rational y = u * Rational(s + 1);
  BigInt q = ceil(y) - 1;
  Rational w = y - Rational(q);  // 0..1 inside the piece
  Rational v = (q % 2 == 0) ? w : Rational(1 - w);
  Rational tau = (Rational(j) + v) / Rational(2 * teeth);
  if (q == s) return MPoint::bone(tau);
  BigInt row = k_next + (p.carrier.row - k_i) * s + q;
  Rational g = tau * Rational(2 * teeth);
  if (Rational(floor(g)) == g) return MPoint::bone(tau);
  return MPoint::row(row, tau);
}

MPoint random_point(std::mt19937_64& rng, const Space& sp, unsigned long max_row = 254) {
  Rational t = make_rational(BigInt(rng() % 10001), BigInt(10000));
  if (rng() % 5 == 0) return MPoint::bone(t);
  return canonicalize(sp, MPoint::row(BigInt(1 + rng() % max_row), t));
}

}  // namespace

TEST_CASE("words parse in application order") {
  Word w = parse_word("g1,f1, h4");
  REQUIRE(w.size() == 3);
  CHECK(w[0] == MapId::G1);
  CHECK(w[2] == MapId::H4);
  CHECK(to_string(w) == "g1,f1,h4");
  CHECK(parse_word("").empty());
  CHECK_THROWS_AS(parse_word("g5"), Error);
  CHECK(family_of(MapId::F2) == Family::F);
  CHECK(family_of(MapId::H1) == Family::H);
}

TEST_CASE("hand-computed point images") {
  Space sp = Space::canonical();
  auto img = [&](const char* word, const char* p) { return to_string(apply_word(sp, parse_word(word), parse_point(p))); };
  CHECK(img("f1", "bone:1/2") == "bone:1/4");
  CHECK(img("f2", "bone:1/2") == "bone:3/4");
  CHECK(img("f1", "row:1:1/4") == "row:4:1/8");    // piece 1 of 7, descending
  CHECK(img("f1", "row:2:1/2") == "row:12:1/4");   // l = 1, piece 3
  CHECK(img("f1", "row:1:13/14") == "bone:1/4");   // bone piece
  CHECK(img("f2", "row:1:1/4") == "row:4:5/8");
  CHECK(img("g1", "row:1:1/4") == "row:1:1/8");
  CHECK(img("g2", "row:1:1/4") == "row:1:3/8");
  CHECK(img("g3", "row:1:1/4") == "row:1:5/8");
  CHECK(img("g4", "row:1:1/4") == "row:1:7/8");
  CHECK(img("g4", "row:5:1/3") == "bone:1");       // constant branch Row(1)(1)
  CHECK(img("h3", "row:1:1/3") == "row:2:1/2");
  CHECK(img("h1", "row:2:1/2") == "row:2:1/4");
  CHECK(img("", "row:3:1/2") == "bone:1/2");
  CHECK(img("f1,g1", "row:1:1/3") == "bone:0");
}

TEST_CASE("f1 agrees with an independent closed-form oracle") {
  Space sp = Space::canonical();
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    MPoint p = random_point(rng, sp);
    REQUIRE(apply_point(sp, MapId::F1, p) == oracle_f1(p));
  }
}

TEST_CASE("shift identity between f1 and f2") {
  Space sp = Space::canonical();
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    MPoint p = random_point(rng, sp);
    PlanePoint a = embed(sp, apply_point(sp, MapId::F1, p));
    PlanePoint b = embed(sp, apply_point(sp, MapId::F2, p));
    CHECK(b == PlanePoint{a.x + Rational(1, 2), a.y});
  }
}

TEST_CASE("row image tables cover the next generation") {
  Space sp = Space::canonical();
  for (std::size_t i = 0; i <= 1; ++i) {
    const Generation& g = sp.generation(i);
    const Generation& h = sp.generation(i + 1);
    std::map<BigInt, int> hits;
    std::size_t bone = 0, entries = 0;
    for_each_row_image(sp, i, [&](const RowImageEntry& e) {
      ++entries;
      if (e.target.is_bone())
        ++bone;
      else
        ++hits[e.target.row];
      CHECK(e.ascending == (e.piece % 2 == 0));
    });
    BigInt teeth = pow2(static_cast<unsigned long>(g.tooth_exp));
    CHECK(BigInt(static_cast<unsigned long>(entries)) == g.rows * teeth * g.pieces());
    CHECK(BigInt(static_cast<unsigned long>(bone)) == g.rows * teeth);
    CHECK(BigInt(static_cast<unsigned long>(hits.size())) == h.rows);
    for (auto& [row, n] : hits) {
      CHECK(row >= h.first_row);
      CHECK(row <= h.last_row());
      CHECK(BigInt(n) == teeth);
    }
  }
}

TEST_CASE("segment images split additively") {
  Space sp = Space::canonical();
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    MapId m = kAllMaps[rng() % kAllMaps.size()];
    Carrier c = rng() % 4 == 0 ? Carrier::bone() : Carrier{BigInt(1 + rng() % 254)};
    unsigned long a = rng() % 200, b = a + 1 + rng() % (200 - a), mid = a + rng() % (b - a + 1);
    auto r = [](unsigned long x) { return make_rational(BigInt(x), BigInt(200)); };
    MSubset whole = apply_segment(sp, m, Segment{c, r(a), r(b)});
    MSubset parts = unite(sp, apply_segment(sp, m, Segment{c, r(a), r(mid)}), apply_segment(sp, m, Segment{c, r(mid), r(b)}));
    CHECK(whole == parts);
    for (unsigned long x = a; x <= b; x += 7) CHECK(whole.contains(sp, apply_point(sp, m, MPoint{c, r(x)})));
  }
}

TEST_CASE("branch values at a piece boundary") {
  Space sp = Space::canonical();
  auto vals = branch_values(sp, MapId::F1, Carrier{BigInt(1)}, Rational(1, 7));
  REQUIRE(vals.size() == 2);
  CHECK(embed(sp, vals[0]) == embed(sp, vals[1]));
  CHECK(breakpoints(sp, MapId::F1, Carrier{BigInt(1)}).size() == 8);
  CHECK(breakpoints(sp, MapId::F1, Carrier{BigInt(15)}).size() == 4 * 273 + 1);
}

TEST_CASE("Lipschitz bounds are sound on sampled pairs") {
  Space sp = Space::canonical();
  LipschitzTable table(sp, 3);
  CHECK(table[0].alpha < 7);
  CHECK(table[0].alpha_sq >= 1);
  CHECK(table[0].alpha * table[0].alpha >= table[0].alpha_sq);
  CHECK(table[1].alpha > table[0].alpha);
  CHECK(table.product_sq(2) == table[0].alpha_sq * table[1].alpha_sq);
  CHECK_THROWS_AS(table.product_sq(4), Error);
  std::mt19937_64 rng(77);
  for (std::size_t i = 0; i <= 1; ++i) {
    const Generation& g = sp.generation(i);
    unsigned long rows = g.rows.get_ui();
    auto pick = [&](const Rational& t) {
      if (rng() % 4 == 0) return MPoint::bone(t);
      return canonicalize(sp, MPoint::row(BigInt(g.first_row + rng() % rows), t));
    };
    for (int trial = 0; trial < 3000; ++trial) {
      Rational t = make_rational(BigInt(rng() % 4097), BigInt(4096));
      Rational dt = make_rational(BigInt(rng() % 9), BigInt(4096 * 64));
      Rational t2 = t + dt <= 1 ? Rational(t + dt) : Rational(t - dt);
      MPoint p = pick(t), q = pick(t2);
      Rational d_in = distance_sq(embed(sp, p), embed(sp, q));
      Rational d_out = distance_sq(embed(sp, apply_point(sp, MapId::F1, p)), embed(sp, apply_point(sp, MapId::F1, q)));
      CHECK(d_out <= table[i].alpha_sq * d_in);
    }
  }
}

TEST_CASE("per-row emission is guarded") {
  Space sp = Space::canonical();
  SubsetBuilder b(sp);
  const Generation& g = sp.generation(5);
  b.add_rows(g.first_row, g.last_row(), Rational(0), Rational(1, 1000));
  CHECK_THROWS_AS(apply_subset(sp, MapId::F1, b.build()), Error);
  // Whole rows consolidate into one block instead.
  MSubset img = apply_subset(sp, MapId::F1, truncate_M(sp, 5));
  // Rows 3 .. 2^128 - 2 (generations 1..6) plus the bone.
  CHECK(img.segment_count() == pow2(128) - 3);
}

TEST_CASE("row point above the bone nearly attains the Lipschitz bound") {
  Space sp = Space::canonical();
  LipschitzTable table(sp, 2);
  Rational t = make_rational(1, 1000000);
  MPoint x = MPoint::row(BigInt(14), t), y = MPoint::bone(t);
  Rational d_in = distance_sq(embed(sp, x), embed(sp, y));
  Rational d_out = distance_sq(embed(sp, apply_point(sp, MapId::F1, x)), embed(sp, apply_point(sp, MapId::F1, y)));
  // Ratio is about c * k = 140, well past 3 * alpha(0).
  CHECK(d_out >= 140 * 140 * d_in);
  CHECK(d_out <= table[1].alpha_sq * d_in);
  CHECK(table[1].alpha > 3 * table[0].alpha);
}
