#include "sharkteeth/verify.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "sharkteeth/error.hpp"
#include "sharkteeth/words.hpp"

namespace shark {

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["params"] = params;
  j["pass"] = pass;
  if (witness) j["witness"] = *witness;
  j["seed"] = seed;
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

namespace {

nlohmann::json segment_json(const Segment& s) {
  return {{"carrier", carrier_name(s.carrier)}, {"lo", to_string(s.lo)}, {"hi", to_string(s.hi)}};
}

void record_failure(CheckReport& r, nlohmann::json w) {
  if (r.pass) r.witness = std::move(w);
  r.pass = false;
}

Word maps_of(Family f) {
  Word out;
  for (MapId m : kAllMaps)
    if (family_of(m) == f) out.push_back(m);
  return out;
}

std::string family_name(Family f) { return f == Family::F ? "F" : f == Family::G ? "G" : "H"; }

}  // namespace

CheckReport check_cover(const Space& space, std::size_t d, std::optional<std::size_t> target_depth) {
  CheckReport r;
  r.name = "cover";
  std::size_t target = target_depth.value_or(d + 1);
  r.params = {{"depth", d}, {"target_depth", target}, {"space", space.label()}};
  MSubset src = truncate_M(space, d);
  SubsetBuilder b(space);
  for (MapId m : kAllMaps) b.add(apply_subset(space, m, src));
  MSubset uni = b.build();
  MSubset expect = truncate_M(space, target);
  if (auto diff = first_difference(uni, expect)) {
    record_failure(r, {{"difference", *diff}, {"union", describe(uni, 4)}, {"expected", describe(expect, 4)}});
  }
  r.params["segments"] = to_string(uni.segment_count());
  return r;
}

CheckReport check_halving(const Space& space, Family family, std::size_t trials, std::size_t max_len,
                          std::uint64_t seed, std::size_t depth) {
  CheckReport r;
  r.name = "halving";
  r.seed = seed;
  r.params = {{"family", family_name(family)}, {"max_len", max_len}, {"space", space.label()}};
  Word alphabet = maps_of(family);
  std::size_t checked = 0;

  auto check_word = [&](const Word& w, const MSubset& a, const nlohmann::json& source) {
    Rational base = exact_diameter_sq(space, a);
    Rational prev = base;
    MSubset cur = a;
    for (std::size_t step = 0; step < w.size(); ++step) {
      cur = apply_subset(space, w[step], cur);
      Rational d = exact_diameter_sq(space, cur);
      Rational limit = base * pow2_inv(2 * (step + 1));
      if (d > limit || d * 4 > prev) {
        record_failure(r, {{"source", source},
                           {"word", to_string(w)},
                           {"step", step + 1},
                           {"diam_sq", to_string(d)},
                           {"source_diam_sq", to_string(base)},
                           {"previous_diam_sq", to_string(prev)}});
        return;
      }
      prev = d;
    }
    ++checked;
  };

  if (family == Family::F) {
    MSubset a = truncate_M(space, depth);
    r.params["depth"] = depth;
    Word w;
    std::function<void()> rec = [&]() {
      if (!w.empty()) check_word(w, a, nlohmann::json("truncate_M(" + std::to_string(depth) + ")"));
      if (w.size() == max_len) return;
      for (MapId m : alphabet) {
        w.push_back(m);
        rec();
        w.pop_back();
      }
    };
    rec();
  } else {
    r.params["trials"] = trials;
    std::mt19937_64 rng(seed);
    const Generation& g2 = space.generation(space.generation_count() > 2 ? 2 : space.generation_count() - 1);
    BigInt max_row = g2.last_row();
    unsigned long row_cap = max_row.fits_ulong_p() ? max_row.get_ui() : 1000;
    const BigInt& base = family == Family::G ? space.g_row() : space.h_row();
    const unsigned long den = 1024;
    for (std::size_t t = 0; t < trials; ++t) {
      Carrier c;
      switch (rng() % 3) {
        case 0: c = Carrier::bone(); break;
        case 1: c = Carrier{base}; break;
        default: c = Carrier{BigInt(1 + rng() % row_cap)}; break;
      }
      unsigned long a = rng() % den;
      unsigned long b = a + 1 + rng() % (den - a);
      Segment s{c, make_rational(BigInt(a), BigInt(den)), make_rational(BigInt(b), BigInt(den))};
      Word w;
      std::size_t len = 1 + rng() % max_len;
      for (std::size_t k = 0; k < len; ++k) w.push_back(alphabet[rng() % alphabet.size()]);
      check_word(w, subset_of(space, {s}), segment_json(s));
    }
  }
  r.params["checked"] = checked;
  return r;
}

CheckReport check_collapse(const Space& space, std::size_t d) {
  CheckReport r;
  r.name = "collapse";
  r.params = {{"depth", d}, {"space", space.label()}};
  MSubset src = truncate_M(space, d);
  std::map<MapId, MSubset> first;
  std::size_t words = 0;
  for (MapId inner : kAllMaps) {
    for (MapId outer : kAllMaps) {
      if (!forbidden_pair(family_of(inner), family_of(outer))) continue;
      auto it = first.find(inner);
      if (it == first.end()) it = first.emplace(inner, apply_subset(space, inner, src)).first;
      MSubset img = apply_subset(space, outer, it->second);
      ++words;
      if (!img.is_singleton())
        record_failure(r, {{"word", to_string(Word{inner, outer})}, {"image", describe(img, 4)}});
    }
  }
  r.params["words"] = words;
  return r;
}

CheckReport check_tooth_image(const Space& space, std::size_t i) {
  CheckReport r;
  r.name = "tooth_image";
  r.params = {{"generation", i}, {"space", space.label()}};
  const Generation& g = space.generation(i);
  const Generation& next = space.generation(i + 1);
  BigInt teeth = pow2(static_cast<unsigned long>(g.tooth_exp));
  BigInt target_den = pow2(static_cast<unsigned long>(g.tooth_exp + 1));
  for (BigInt j = 0; j < teeth; ++j) {
    SubsetBuilder src(space);
    src.add_rows(g.first_row, g.last_row(), make_rational(j, teeth), make_rational(BigInt(j + 1), teeth));
    MSubset tooth = src.build();
    for (MapId m : {MapId::F1, MapId::F2}) {
      Rational shift = m == MapId::F2 ? Rational(1, 2) : Rational(0);
      Rational lo = make_rational(j, target_den) + shift;
      Rational hi = make_rational(BigInt(j + 1), target_den) + shift;
      SubsetBuilder want(space);
      want.add_rows(next.first_row, next.last_row(), lo, hi);
      if (g.bone_piece()) want.add_bone(lo, hi);
      MSubset expect = want.build();
      MSubset got = apply_subset(space, m, tooth);
      if (auto diff = first_difference(got, expect))
        record_failure(r, {{"map", std::string(name_of(m))}, {"tooth", to_string(j)}, {"difference", *diff}});
    }
  }
  r.params["teeth"] = to_string(teeth);
  return r;
}

CheckReport check_continuity(const Space& space, std::size_t max_gen) {
  CheckReport r;
  r.name = "continuity";
  r.params = {{"max_gen", max_gen}, {"space", space.label()}};
  std::vector<Carrier> carriers{Carrier::bone()};
  for (std::size_t i = 0; i <= max_gen; ++i) {
    const Generation& g = space.generation(i);
    for (BigInt k = g.first_row; k <= g.last_row(); ++k) carriers.push_back(Carrier{k});
  }
  std::size_t points = 0;
  for (MapId m : kAllMaps) {
    for (const Carrier& c : carriers) {
      for (const Rational& t : breakpoints(space, m, c)) {
        std::vector<MPoint> vals = branch_values(space, m, c, t);
        ++points;
        if (vals.empty()) {
          record_failure(r, {{"map", std::string(name_of(m))}, {"carrier", carrier_name(c)}, {"t", to_string(t)},
                             {"problem", "no branch"}});
          continue;
        }
        PlanePoint ref = embed(space, vals.front());
        for (const MPoint& v : vals) {
          if (!(embed(space, v) == ref)) {
            nlohmann::json all = nlohmann::json::array();
            for (const MPoint& x : vals) all.push_back(to_string(x));
            record_failure(r, {{"map", std::string(name_of(m))}, {"carrier", carrier_name(c)},
                               {"t", to_string(t)}, {"values", all}});
            break;
          }
        }
      }
    }
  }
  r.params["points"] = points;
  return r;
}

std::vector<Rational> farey(std::size_t n) {
  std::vector<Rational> out;
  // Standard next-term recurrence.
  unsigned long a = 0, b = 1, c = 1, d = n;
  out.push_back(Rational(0));
  while (c <= n) {
    unsigned long k = (n + b) / d;
    unsigned long na = c, nb = d, nc = k * c - a, nd = k * d - b;
    a = na;
    b = nb;
    c = nc;
    d = nd;
    out.push_back(make_rational(BigInt(a), BigInt(b)));
  }
  return out;
}

namespace {

// Largest parameter speed of map m over the carriers present in a.
double parameter_stretch(const Space& space, MapId m, const MSubset& a) {
  if (family_of(m) == Family::F) {
    double s = a.bone().empty() ? 0.0 : 0.5;
    for (const auto& b : a.blocks()) {
      std::size_t gi = space.generation_of_row(b.first);
      std::size_t gl = space.generation_of_row(b.last);
      for (std::size_t i = gi; i <= gl; ++i) s = std::max(s, to_double(Rational(space.generation(i).pieces())) / 2);
    }
    return s;
  }
  const BigInt& base = family_of(m) == Family::G ? space.g_row() : space.h_row();
  for (const auto& b : a.blocks())
    if (b.first <= base && base <= b.last) return std::ldexp(1.0, static_cast<int>(space.tooth_exp_of_row(base))) / 2;
  return 0.0;
}

struct Grid {
  double cell;
  std::map<std::pair<long, long>, std::vector<std::pair<double, double>>> buckets;

  std::pair<long, long> key(double x, double y) const {
    return {static_cast<long>(std::floor(x / cell)), static_cast<long>(std::floor(y / cell))};
  }
  void add(double x, double y) { buckets[key(x, y)].push_back({x, y}); }
  double nearest(double x, double y) const {
    auto [kx, ky] = key(x, y);
    double best = INFINITY;
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find({kx + dx, ky + dy});
        if (it == buckets.end()) continue;
        for (auto [px, py] : it->second) best = std::min(best, std::hypot(px - x, py - y));
      }
    return best;
  }
};

}  // namespace

CheckReport sampling_oracle(const Space& space, const Word& w, std::size_t d, std::size_t denom_bound) {
  CheckReport r;
  r.name = "sampling_oracle";
  r.params = {{"word", to_string(w)}, {"depth", d}, {"denom_bound", denom_bound}, {"space", space.label()}};
  MSubset src = truncate_M(space, d);

  double stretch = 1.0;
  MSubset img = src;
  for (MapId m : w) {
    stretch *= parameter_stretch(space, m, img);
    img = apply_subset(space, m, img);
  }

  std::vector<Rational> params = farey(denom_bound);
  std::vector<Segment> segs = src.segments();
  std::vector<std::pair<double, double>> samples;
  std::size_t points = 0;
  for (const Segment& s : segs) {
    for (const Rational& t : params) {
      if (t < s.lo || t > s.hi) continue;
      MPoint p = apply_word(space, w, MPoint{s.carrier, t});
      ++points;
      if (!img.contains(space, p)) {
        record_failure(r, {{"source", to_string(MPoint{s.carrier, t})}, {"image", to_string(p)}});
        continue;
      }
      PlanePoint e = embed(space, p);
      samples.push_back({to_double(e.x), to_double(e.y)});
    }
  }
  r.params["points"] = points;

  // Consecutive samples are at most 1/denom_bound apart in parameter; along each affine
  // piece the image moves by at most sqrt(2) * stretch per unit of parameter.
  double bound = std::sqrt(2.0) * stretch / static_cast<double>(denom_bound) + 1e-9;
  r.params["hausdorff_bound"] = bound;
  if (samples.empty() || !r.pass) return r;
  if (bound >= 2.0) {
    r.notes.push_back("mesh bound exceeds the diameter of M; distance test is vacuous");
    return r;
  }
  Grid grid{bound, {}};
  for (auto [x, y] : samples) grid.add(x, y);
  double worst = 0;
  for (const Segment& s : img.segments()) {
    std::vector<PlanePoint> poly = polyline_of(space, s);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      double x = to_double(poly[i].x), y = to_double(poly[i].y);
      std::vector<std::pair<double, double>> queries{{x, y}};
      if (i + 1 < poly.size()) {
        double nx = to_double(poly[i + 1].x), ny = to_double(poly[i + 1].y);
        for (double f : {0.29, 0.5, 0.73}) queries.push_back({x + f * (nx - x), y + f * (ny - y)});
      }
      for (auto [qx, qy] : queries) {
        double dist = grid.nearest(qx, qy);
        worst = std::max(worst, std::isinf(dist) ? bound * 2 : dist);
        if (dist > bound) {
          record_failure(r, {{"segment", segment_json(s)}, {"x", qx}, {"y", qy}, {"distance", dist}});
          return r;
        }
      }
    }
  }
  r.params["hausdorff_estimate"] = worst;
  return r;
}

}  // namespace shark
