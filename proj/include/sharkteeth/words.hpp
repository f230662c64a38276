#pragma once

// Classification of compositions over the ten maps and the diameter bounds that
// drive the attractor certificate.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sharkteeth/maps.hpp"

namespace shark {

enum class WordKind { Collapsed, PureF, PureG, PureH, FafterG, FafterH };

/// n counts the inner tent maps, k the outer f maps.
struct WordClass {
  WordKind kind = WordKind::Collapsed;
  std::size_t k = 0;
  std::size_t n = 0;
  friend bool operator==(const WordClass&, const WordClass&) = default;
};

std::string kind_name(WordKind k);  // "PureG", "FafterH", ...
std::string to_string(const WordClass& c);

/// True if (inner, outer) is one of the adjacencies whose composition is a singleton.
bool forbidden_pair(Family inner, Family outer);

WordClass classify(const Word& w);

/// Squared bound on diam(image of M) for every word of the class (diam M = 1).
Rational diameter_bound_sq(const WordClass& c, const LipschitzTable& alpha);

struct Plan {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t m = 0;
};

/// Smallest n1 >= 1 with 1/4^n1 < lambda^2; the table must cover n1 generations.
std::size_t plan_n1(const Rational& lambda);
Plan plan_m(const Rational& lambda, const LipschitzTable& alpha);

struct ClassBound {
  WordClass cls;
  Rational bound_sq;
};

struct Certificate {
  Rational lambda;
  Rational diam_sq;  // of M, measured on a truncation
  LipschitzTable alpha;
  Plan plan;
  std::vector<ClassBound> classes;
  bool valid = false;
};

Certificate attractor_certificate(const Space& space, const Rational& lambda);
nlohmann::json to_json(const Certificate& c);

struct WordCheckReport {
  std::size_t length = 0;
  std::size_t depth = 0;
  std::size_t words = 0;
  std::size_t failures = 0;
  std::optional<Word> first_failure;
  /// Largest exact_diam_sq / bound_sq over words with nonzero bound.
  Rational worst_ratio;
  Word worst_word;
  bool pass() const { return failures == 0; }
};

/// Every word of the given length over all ten maps applied to truncate_M(depth),
/// exact diameter compared with the class bound. `budget` caps 10^length.
WordCheckReport exhaustive_word_check(const Space& space, std::size_t length, std::size_t depth,
                                      std::size_t budget = 100'000);

}  // namespace shark
