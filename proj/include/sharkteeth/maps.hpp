#pragma once

// The ten maps f1, f2, g1..g4, h1..h4 acting on points and on exact subsets.

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "sharkteeth/geometry.hpp"
#include "sharkteeth/subset.hpp"

namespace shark {

enum class MapId { F1, F2, G1, G2, G3, G4, H1, H2, H3, H4 };
enum class Family { F, G, H };

inline constexpr std::array<MapId, 10> kAllMaps{MapId::F1, MapId::F2, MapId::G1, MapId::G2, MapId::G3,
                                                MapId::G4, MapId::H1, MapId::H2, MapId::H3, MapId::H4};

Family family_of(MapId m);
std::string_view name_of(MapId m);  // "f1", "g3", ...
MapId parse_map_id(std::string_view text);

/// A composition in application order: word[0] is applied first.
using Word = std::vector<MapId>;

Word parse_word(std::string_view text);  // "g1,f1"; empty string is the empty word
std::string to_string(const Word& w);

MPoint apply_point(const Space& space, MapId m, const MPoint& p);
MPoint apply_word(const Space& space, const Word& w, const MPoint& p);

MSubset apply_segment(const Space& space, MapId m, const Segment& s);
MSubset apply_subset(const Space& space, MapId m, const MSubset& a);
MSubset apply_word(const Space& space, const Word& w, const MSubset& a);

/// One affine piece of f1 on a row of generation i.
struct RowImageEntry {
  BigInt source_row;
  std::size_t generation = 0;
  BigInt offset;  // l = source_row - k_i
  BigInt tooth;   // j
  BigInt piece;   // 0..pieces-1
  Carrier target;
  Interval target_interval;  // [j/2^{m+1}, (j+1)/2^{m+1}]
  bool ascending = true;     // even pieces sweep the target interval left to right
};

void for_each_row_image(const Space& space, std::size_t i, const std::function<void(const RowImageEntry&)>& fn);
std::vector<RowImageEntry> row_image_table(const Space& space, std::size_t i);

/// Every value the piecewise definition of `m` assigns at (carrier, t): all branches whose
/// closed domain contains the point, evaluated with their own affine formula.
std::vector<MPoint> branch_values(const Space& space, MapId m, const Carrier& c, const Rational& t);
/// Breakpoints of the piecewise definition of `m` on carrier c (including [0,1] endpoints).
std::vector<Rational> breakpoints(const Space& space, MapId m, const Carrier& c);

/// Certified bound on Lip(f1) (= Lip(f2)) over G_i together with the bone.
struct LipschitzBound {
  Rational alpha_sq;  // exact bound on the squared constant, >= 1
  Rational alpha;     // rational upper bound of sqrt(alpha_sq)
};

LipschitzBound lipschitz_alpha(const Space& space, std::size_t i);

class LipschitzTable {
 public:
  LipschitzTable() = default;
  LipschitzTable(const Space& space, std::size_t count);
  explicit LipschitzTable(std::vector<LipschitzBound> entries) : entries_(std::move(entries)) {}

  std::size_t size() const { return entries_.size(); }
  const LipschitzBound& operator[](std::size_t i) const { return entries_.at(i); }
  /// prod_{i<k} alpha_sq(i); throws InvalidArgument if the table is too short.
  Rational product_sq(std::size_t k) const;

 private:
  std::vector<LipschitzBound> entries_;
};

}  // namespace shark
