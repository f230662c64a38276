#pragma once

#include <compare>
#include <string>
#include <vector>

#include "sharkteeth/rational.hpp"
#include "sharkteeth/sequence.hpp"

namespace shark {

/// Tent function: distance from t to the nearest integer.
Rational phi(const Rational& t);
/// 2^{-n} phi(2^n t): distance from t to the nearest multiple of 2^{-n}.
Rational phi_n(long n, const Rational& t);

/// Value at x of the affine branch of phi on [q/2, (q+1)/2]; used to test branch agreement.
Rational phi_branch(const BigInt& q, const Rational& x);

/// Bone (row == 0) or Row(k), k >= 1.
struct Carrier {
  BigInt row;

  static Carrier bone() { return Carrier{BigInt(0)}; }
  static Carrier row_of(const BigInt& k);
  bool is_bone() const { return row == 0; }

  friend bool operator==(const Carrier& a, const Carrier& b) { return a.row == b.row; }
  friend std::strong_ordering operator<=>(const Carrier& a, const Carrier& b) {
    int c = cmp(a.row, b.row);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
};

struct MPoint {
  Carrier carrier;
  Rational t;

  static MPoint bone(const Rational& t) { return MPoint{Carrier::bone(), t}; }
  static MPoint row(const BigInt& k, const Rational& t) { return MPoint{Carrier::row_of(k), t}; }
  friend bool operator==(const MPoint& a, const MPoint& b) { return a.carrier == b.carrier && a.t == b.t; }
};

struct PlanePoint {
  Rational x;
  Rational y;
  friend bool operator==(const PlanePoint& a, const PlanePoint& b) { return a.x == b.x && a.y == b.y; }
};

Rational distance_sq(const PlanePoint& a, const PlanePoint& b);

struct Segment {
  Carrier carrier;
  Rational lo;
  Rational hi;
  friend bool operator==(const Segment& a, const Segment& b) {
    return a.carrier == b.carrier && a.lo == b.lo && a.hi == b.hi;
  }
};

/// "bone:1/2" / "row:3:1/4"; parse throws Error{Parse}.
std::string to_string(const MPoint& p);
MPoint parse_point(const std::string& text);
std::string carrier_name(const Carrier& c);  // "bone" / "row3"

void validate(const MPoint& p);  // t in [0,1], row >= 1

/// Canonical n_k (floor log2 log2 (k+1)); rejects k = 0.
long n_of(const BigInt& k);

/// p_{i,j}(t) = (t + j) / 2^i and its inverse; j must lie in [0, 2^i).
Rational p_map(long i, const BigInt& j, const Rational& t);
Rational p_inv(long i, const BigInt& j, const Rational& t);

/// Tooth j of a 2^tooth_exp-tooth row that contains t (lower tooth at shared boundaries).
BigInt tooth_index(long tooth_exp, const Rational& t);

/// k with t in [p(k/pieces), p((k+1)/pieces)], lower k at shared endpoints.
BigInt piece_index_general(long tooth_exp, const BigInt& j, const BigInt& pieces, const Rational& t);
/// The P_{ijk} split of tooth j of generation i: s+1 pieces.
BigInt piece_index(long i, const BigInt& j, const BigInt& s, const Rational& t);

PlanePoint embed(const Space& space, const MPoint& p);
/// Row points on the bone become Bone points; idempotent.
MPoint canonicalize(const Space& space, const MPoint& p);

/// Endpoints plus every interior breakpoint of the row profile, by increasing x.
std::vector<PlanePoint> polyline_of(const Space& space, const Segment& s);

}  // namespace shark
