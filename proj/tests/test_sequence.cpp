#include <cstdint>
#include <map>

#include "doctest.h"
#include "sharkteeth/error.hpp"
#include "sharkteeth/rational.hpp"
#include "sharkteeth/sequence.hpp"

using namespace shark;

namespace {

// floor(log2 x) by repeated halving.
unsigned ilog2(std::uint64_t x) {
  unsigned r = 0;
  while (x > 1) {
    x /= 2;
    ++r;
  }
  return r;
}

long brute_n(std::uint64_t k) { return static_cast<long>(ilog2(ilog2(k + 1))); }

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(make_rational(6, 4) == Rational(3, 2));
  CHECK(to_string(make_rational(-6, 4)) == "-3/2");
  CHECK(to_string(make_rational(8, 4)) == "2");
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("0.5"), Error);
  CHECK(floor(make_rational(-1, 2)) == -1);
  CHECK(ceil(make_rational(-1, 2)) == 0);
  CHECK(floor(Rational(3)) == 3);
  CHECK(pow2_inv(3) == Rational(1, 8));
  CHECK(floor_log2(BigInt(1)) == 0);
  CHECK(floor_log2(BigInt(1023)) == 9);
  CHECK(floor_log2(BigInt(1024)) == 10);
  CHECK(to_decimal(Rational(1, 3), 9) == "0.333333333");
  CHECK(to_decimal(Rational(2, 3), 9) == "0.666666667");
  CHECK(to_decimal(Rational(-1, 8), 2) == "-0.13");
}

TEST_CASE("sqrt_upper is the least 2^-32 grid point above the root") {
  for (long num : {1L, 2L, 3L, 50L, 1000003L}) {
    for (long den : {1L, 7L, 64L}) {
      Rational x = make_rational(num, den);
      Rational a = sqrt_upper(x);
      CHECK(a * a >= x);
      Rational below = a - pow2_inv(32);
      CHECK(below * below < x);
    }
  }
  CHECK(sqrt_upper(Rational(49)) == Rational(7));
}

TEST_CASE("canonical n_k matches brute force") {
  CanonicalSequence seq;
  for (std::uint64_t k = 1; k <= (1u << 16) + 5; ++k) REQUIRE(seq.n_of(BigInt(static_cast<unsigned long>(k))) == brute_n(k));
  CHECK_THROWS_AS(seq.n_of(BigInt(0)), Error);
  // k = 2^(2^i) - 1 starts generation i.
  CHECK(seq.n_of(BigInt(3)) == 1);
  CHECK(seq.n_of(BigInt(2)) == 0);
  CHECK(seq.n_of(pow2(64) - 1) == 6);
  CHECK(seq.n_of(pow2(64) - 2) == 5);
}

TEST_CASE("generation stats: search, closed forms and enumeration agree") {
  CanonicalSequence seq;
  std::map<long, std::uint64_t> count, first;
  for (std::uint64_t k = 1; k < (1u << 16) - 1; ++k) {
    long n = brute_n(k);
    if (!count[n]) first[n] = k;
    ++count[n];
  }
  for (unsigned long i = 0; i <= 4; ++i) {
    GenerationStats cf = canonical_closed_form(i);
    GenerationStats st = generation_stats(seq, static_cast<long>(i));
    CHECK(st == cf);
    BigInt a = pow2(1ul << i), b = pow2(1ul << (i + 1));
    CHECK(cf.rows == b - a);
    CHECK(cf.s == b + a);
    CHECK(cf.first_row == a - 1);
    if (i <= 3) {
      CHECK(st.rows == BigInt(static_cast<unsigned long>(count[static_cast<long>(i)])));
      CHECK(st.first_row == BigInt(static_cast<unsigned long>(first[static_cast<long>(i)])));
    }
    if (i <= 2) CHECK(st.s * st.rows == BigInt(static_cast<unsigned long>(count[static_cast<long>(i) + 1])));
  }
  CHECK(canonical_closed_form(0) == GenerationStats{1, 2, 6, true});
  CHECK(canonical_closed_form(1) == GenerationStats{3, 12, 20, true});
  CHECK(canonical_closed_form(2) == GenerationStats{15, 240, 272, true});
}

TEST_CASE("space lookups") {
  Space sp = Space::canonical();
  CHECK(sp.is_canonical());
  CHECK(sp.g_row() == 1);
  CHECK(sp.h_row() == 2);
  CHECK(sp.generation_of_row(BigInt(1)) == 0);
  CHECK(sp.generation_of_row(BigInt(2)) == 0);
  CHECK(sp.generation_of_row(BigInt(3)) == 1);
  CHECK(sp.generation_of_row(BigInt(14)) == 1);
  CHECK(sp.generation_of_row(BigInt(15)) == 2);
  CHECK(sp.generation_of_row(pow2(64) - 2) == 5);
  CHECK(sp.generation(2).pieces() == 273);
  CHECK(sp.generation(2).bone_piece());
  CHECK_THROWS_AS(sp.generation(100), Error);
}

TEST_CASE("space construction rejects malformed tables") {
  Generation a;
  a.index = 0;
  a.first_row = 1;
  a.rows = 3;
  CHECK_THROWS_AS(Space::from_generations({a}, "x"), Error);
  a.rows = 1;
  Space one = Space::from_generations({a}, "one");
  CHECK(one.single_base_row());
  CHECK(one.h_row() == 1);
  Generation b = a;
  b.index = 1;
  b.first_row = 5;
  a.has_successor = true;
  a.s = 1;
  CHECK_THROWS_AS(Space::from_generations({a, b}, "gap"), Error);
}
