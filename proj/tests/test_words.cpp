#include <random>

#include "doctest.h"
#include "sharkteeth/error.hpp"
#include "sharkteeth/words.hpp"

using namespace shark;

namespace {

bool brute_forbidden(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    Family a = family_of(w[i]), b = family_of(w[i + 1]);
    if ((a == Family::F && b == Family::G) || (a == Family::H && b == Family::G) ||
        (a == Family::F && b == Family::H) || (a == Family::G && b == Family::H))
      return true;
  }
  return false;
}

// Membership in (G* or H*) followed by F*.
bool in_normal_language(const Word& w) {
  std::size_t i = 0;
  if (!w.empty() && family_of(w[0]) != Family::F) {
    Family t = family_of(w[0]);
    while (i < w.size() && family_of(w[i]) == t) ++i;
  }
  while (i < w.size() && family_of(w[i]) == Family::F) ++i;
  return i == w.size();
}

Word random_word(std::mt19937_64& rng, std::size_t len) {
  Word w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(kAllMaps[rng() % kAllMaps.size()]);
  return w;
}

}  // namespace

TEST_CASE("classification examples") {
  CHECK(classify(parse_word("f1,g2")).kind == WordKind::Collapsed);
  CHECK(classify(parse_word("g1,g3,g2")) == WordClass{WordKind::PureG, 0, 3});
  CHECK(classify(parse_word("g1,g2,f1,f2")) == WordClass{WordKind::FafterG, 2, 2});
  CHECK(classify(parse_word("h4,f2")) == WordClass{WordKind::FafterH, 1, 1});
  CHECK(classify(parse_word("f2,f2,f1")) == WordClass{WordKind::PureF, 3, 0});
  CHECK(classify(parse_word("h1,h1")) == WordClass{WordKind::PureH, 0, 2});
  CHECK(classify(parse_word("g1,h1")).kind == WordKind::Collapsed);
  CHECK(classify(parse_word("h1,g1")).kind == WordKind::Collapsed);
  CHECK(classify(parse_word("f1,h2")).kind == WordKind::Collapsed);
  CHECK(classify(Word{}) == WordClass{WordKind::PureF, 0, 0});
}

TEST_CASE("collapse iff a forbidden adjacency, on random words") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10000; ++trial) {
    Word w = random_word(rng, rng() % 12);
    CHECK((classify(w).kind == WordKind::Collapsed) == brute_forbidden(w));
  }
}

TEST_CASE("non-collapsed words are exactly (G* | H*) F*") {
  for (std::size_t len = 0; len <= 6; ++len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= 10;
    std::size_t mismatches = 0;
    for (std::size_t code = 0; code < total; ++code) {
      Word w;
      for (std::size_t c = code, i = 0; i < len; ++i, c /= 10) w.push_back(kAllMaps[c % 10]);
      WordClass cls = classify(w);
      if ((cls.kind != WordKind::Collapsed) != in_normal_language(w)) ++mismatches;
      if (cls.kind != WordKind::Collapsed) {
        if (cls.k + cls.n != len) ++mismatches;
      }
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("class bounds") {
  Space sp = Space::canonical();
  LipschitzTable alpha(sp, 5);
  CHECK(diameter_bound_sq({WordKind::PureG, 0, 3}, alpha) == Rational(1, 64));
  CHECK(diameter_bound_sq({WordKind::Collapsed, 0, 0}, alpha) == 0);
  CHECK(diameter_bound_sq({WordKind::FafterG, 5, 0}, alpha) <= Rational(1, 1024));
  CHECK(diameter_bound_sq({WordKind::PureF, 2, 0}, alpha) == Rational(1, 16));
  Rational chain = alpha.product_sq(1) * pow2_inv(2 * 10);
  CHECK(diameter_bound_sq({WordKind::FafterH, 1, 10}, alpha) == chain);
  CHECK_THROWS_AS(diameter_bound_sq({WordKind::FafterG, 6, 1}, alpha), Error);
}

TEST_CASE("plan minimality") {
  Space sp = Space::canonical();
  CHECK(plan_n1(Rational(1)) == 1);
  CHECK(plan_n1(Rational(1, 2)) == 2);
  CHECK(plan_n1(Rational(1, 10)) == 4);
  CHECK(plan_n1(Rational(2)) == 1);
  CHECK_THROWS_AS(plan_n1(Rational(0)), Error);
  CHECK_THROWS_AS(plan_n1(Rational(-1, 3)), Error);
  for (const char* l : {"1", "1/2", "1/3", "1/4", "1/10", "3/7", "1/1000"}) {
    Rational lambda = parse_rational(l);
    Rational target = lambda * lambda;
    std::size_t n1 = plan_n1(lambda);
    LipschitzTable alpha(sp, n1);
    Plan p = plan_m(lambda, alpha);
    Rational prod = alpha.product_sq(p.n1);
    CHECK(pow2_inv(2 * p.n1) < target);
    if (p.n1 > 1) CHECK_FALSE(pow2_inv(2 * (p.n1 - 1)) < target);
    CHECK(prod * pow2_inv(2 * p.n2) < target);
    if (p.n2 > 1) CHECK_FALSE(prod * pow2_inv(2 * (p.n2 - 1)) < target);
    CHECK(p.m == p.n1 + p.n2);
  }
}

TEST_CASE("certificates") {
  Space sp = Space::canonical();
  for (const char* l : {"1/2", "1/4", "1/10", "1", "2"}) {
    Certificate c = attractor_certificate(sp, parse_rational(l));
    CHECK(c.valid);
    CHECK(c.diam_sq == 1);
    CHECK(c.classes.size() == 2 * (c.plan.m - 1) + 4);
    for (const auto& cb : c.classes) CHECK(cb.bound_sq < c.lambda * c.lambda);
  }
  Certificate c = attractor_certificate(sp, Rational(1, 10));
  CHECK(c.plan.n1 == 4);
  CHECK(c.alpha.size() == 4);
  nlohmann::json j = to_json(c);
  for (const char* key : {"lambda", "n1", "n2", "m", "alpha", "classes", "valid"}) CHECK(j.contains(key));
  CHECK(j["classes"][0].contains("kind"));
  CHECK(j["classes"][0].contains("bound_sq"));
  CHECK(j["lambda"] == "1/10");
  CHECK_THROWS_AS(attractor_certificate(sp, Rational(0)), Error);
}

TEST_CASE("class bounds dominate exact diameters") {
  Space sp = Space::canonical();
  for (std::size_t depth = 0; depth <= 2; ++depth)
    for (std::size_t len = 1; len <= 3; ++len) {
      WordCheckReport r = exhaustive_word_check(sp, len, depth);
      CHECK(r.pass());
      CHECK(r.words == (len == 1 ? 10u : len == 2 ? 100u : 1000u));
      CHECK(r.worst_ratio <= 1);
    }
  CHECK_THROWS_AS(exhaustive_word_check(sp, 6, 1), Error);

  std::mt19937_64 rng(99);
  LipschitzTable alpha(sp, 8);
  MSubset base = truncate_M(sp, 1);
  for (int trial = 0; trial < 200; ++trial) {
    Word w = random_word(rng, 4 + rng() % 5);
    if (rng() % 2) {
      // Bias towards non-collapsed shapes so the Lipschitz arm is exercised.
      std::size_t n = rng() % w.size();
      for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = i < n ? kAllMaps[2 + rng() % 4] : kAllMaps[rng() % 2];
    }
    MSubset img = apply_word(sp, w, base);
    CHECK(exact_diameter_sq(sp, img) <= diameter_bound_sq(classify(w), alpha));
  }
}

TEST_CASE("forbidden words collapse to a point") {
  Space sp = Space::canonical();
  MSubset t = truncate_M(sp, 1);
  CHECK(apply_word(sp, parse_word("f1,g1"), t).is_singleton());
  CHECK(exact_diameter_sq(sp, apply_word(sp, parse_word("f2,g3"), t)) == 0);
}
