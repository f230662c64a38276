#include "sharkteeth/words.hpp"

#include "sharkteeth/error.hpp"

namespace shark {

std::string kind_name(WordKind k) {
  switch (k) {
    case WordKind::Collapsed: return "Collapsed";
    case WordKind::PureF: return "PureF";
    case WordKind::PureG: return "PureG";
    case WordKind::PureH: return "PureH";
    case WordKind::FafterG: return "FafterG";
    case WordKind::FafterH: return "FafterH";
  }
  return "?";
}

std::string to_string(const WordClass& c) {
  switch (c.kind) {
    case WordKind::Collapsed: return "Collapsed";
    case WordKind::PureF: return "PureF(" + std::to_string(c.k) + ")";
    case WordKind::PureG:
    case WordKind::PureH: return kind_name(c.kind) + "(" + std::to_string(c.n) + ")";
    default: return kind_name(c.kind) + "(k=" + std::to_string(c.k) + ", n=" + std::to_string(c.n) + ")";
  }
}

bool forbidden_pair(Family inner, Family outer) {
  if (outer == Family::G) return inner != Family::G;
  if (outer == Family::H) return inner != Family::H;
  return false;
}

WordClass classify(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (forbidden_pair(family_of(w[i]), family_of(w[i + 1]))) return {WordKind::Collapsed, 0, 0};
  std::size_t n = 0;
  while (n < w.size() && family_of(w[n]) != Family::F) ++n;
  std::size_t k = w.size() - n;
  if (n == 0) return {WordKind::PureF, k, 0};
  bool g = family_of(w[0]) == Family::G;
  if (k == 0) return {g ? WordKind::PureG : WordKind::PureH, 0, n};
  return {g ? WordKind::FafterG : WordKind::FafterH, k, n};
}

namespace {

Rational quarter_pow(std::size_t n) { return pow2_inv(2 * n); }

}  // namespace

Rational diameter_bound_sq(const WordClass& c, const LipschitzTable& alpha) {
  switch (c.kind) {
    case WordKind::Collapsed: return Rational(0);
    case WordKind::PureF: return quarter_pow(c.k);
    case WordKind::PureG:
    case WordKind::PureH: return quarter_pow(c.n);
    default: {
      Rational chain = alpha.product_sq(c.k) * quarter_pow(c.n);
      Rational direct = quarter_pow(c.k);
      return chain < direct ? chain : direct;
    }
  }
}

std::size_t plan_n1(const Rational& lambda) {
  if (lambda <= 0) fail(ErrorCode::InvalidArgument, "lambda must be positive, got " + to_string(lambda));
  Rational target = lambda * lambda;
  std::size_t n1 = 1;
  while (!(quarter_pow(n1) < target)) ++n1;
  return n1;
}

Plan plan_m(const Rational& lambda, const LipschitzTable& alpha) {
  Plan p;
  p.n1 = plan_n1(lambda);
  Rational target = lambda * lambda;
  Rational prod = alpha.product_sq(p.n1);
  // prod / 4^n2 < target  <=>  prod < target * 4^n2
  p.n2 = 1;
  Rational scaled = target * 4;
  while (!(prod < scaled)) {
    ++p.n2;
    scaled *= 4;
  }
  p.m = p.n1 + p.n2;
  return p;
}

Certificate attractor_certificate(const Space& space, const Rational& lambda) {
  Certificate c;
  c.lambda = lambda;
  std::size_t n1 = plan_n1(lambda);
  c.alpha = LipschitzTable(space, n1);
  c.plan = plan_m(lambda, c.alpha);
  c.diam_sq = exact_diameter_sq(space, truncate_M(space, 1));
  const std::size_t m = c.plan.m;

  auto add = [&](WordClass cls) {
    Rational b;
    if ((cls.kind == WordKind::FafterG || cls.kind == WordKind::FafterH) && cls.k > c.alpha.size())
      b = quarter_pow(cls.k);  // beyond the table only the direct f-halving arm is available
    else
      b = diameter_bound_sq(cls, c.alpha);
    c.classes.push_back({cls, Rational(b * c.diam_sq)});
  };
  add({WordKind::PureG, 0, m});
  add({WordKind::PureH, 0, m});
  add({WordKind::PureF, m, 0});
  for (std::size_t k = 1; k < m; ++k) add({WordKind::FafterG, k, m - k});
  for (std::size_t k = 1; k < m; ++k) add({WordKind::FafterH, k, m - k});
  add({WordKind::Collapsed, 0, 0});

  Rational target = lambda * lambda;
  c.valid = true;
  for (const auto& cb : c.classes)
    if (!(cb.bound_sq < target)) c.valid = false;
  return c;
}

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j;
  j["lambda"] = to_string(c.lambda);
  j["diam_sq"] = to_string(c.diam_sq);
  j["n1"] = c.plan.n1;
  j["n2"] = c.plan.n2;
  j["m"] = c.plan.m;
  j["alpha"] = nlohmann::json::array();
  for (std::size_t i = 0; i < c.alpha.size(); ++i) j["alpha"].push_back(to_string(c.alpha[i].alpha));
  j["classes"] = nlohmann::json::array();
  for (const auto& cb : c.classes)
    j["classes"].push_back({{"kind", kind_name(cb.cls.kind)},
                            {"k", cb.cls.k},
                            {"n", cb.cls.n},
                            {"bound_sq", to_string(cb.bound_sq)}});
  j["valid"] = c.valid;
  return j;
}

WordCheckReport exhaustive_word_check(const Space& space, std::size_t length, std::size_t depth,
                                      std::size_t budget) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < length; ++i) {
    total *= kAllMaps.size();
    if (total > budget)
      fail(ErrorCode::ResourceLimit, "10^" + std::to_string(length) + " words exceed the budget of " +
                                         std::to_string(budget));
  }
  WordCheckReport r;
  r.length = length;
  r.depth = depth;
  LipschitzTable alpha(space, length > 0 ? length - 1 : 0);
  Word w;
  // Depth-first so shared prefixes are transported once.
  std::function<void(const MSubset&)> walk = [&](const MSubset& cur) {
    if (w.size() == length) {
      ++r.words;
      Rational bound = diameter_bound_sq(classify(w), alpha);
      Rational diam = exact_diameter_sq(space, cur);
      if (diam > bound) {
        if (!r.first_failure) r.first_failure = w;
        ++r.failures;
      }
      if (bound > 0) {
        Rational ratio = diam / bound;
        if (r.worst_word.empty() || ratio > r.worst_ratio) {
          r.worst_ratio = ratio;
          r.worst_word = w;
        }
      }
      return;
    }
    for (MapId m : kAllMaps) {
      w.push_back(m);
      walk(apply_subset(space, m, cur));
      w.pop_back();
    }
  };
  walk(truncate_M(space, depth));
  return r;
}

}  // namespace shark
