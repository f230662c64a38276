#include "sharkteeth/geometry.hpp"

#include "sharkteeth/error.hpp"

namespace shark {

Rational phi(const Rational& t) {
  BigInt nearest = floor(t + Rational(1, 2));
  return abs(Rational(t - nearest));
}

Rational phi_n(long n, const Rational& t) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "phi_n needs n >= 0");
  Rational scale(pow2(static_cast<unsigned long>(n)));
  return phi(t * scale) / scale;
}

Rational phi_branch(const BigInt& q, const Rational& x) {
  if (mpz_even_p(q.get_mpz_t())) return x - make_rational(q, BigInt(2));
  return make_rational(BigInt(q + 1), BigInt(2)) - x;
}

Carrier Carrier::row_of(const BigInt& k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "row index must be >= 1, got " + k.get_str());
  return Carrier{k};
}

Rational distance_sq(const PlanePoint& a, const PlanePoint& b) {
  Rational dx = a.x - b.x;
  Rational dy = a.y - b.y;
  return dx * dx + dy * dy;
}

std::string carrier_name(const Carrier& c) { return c.is_bone() ? "bone" : "row" + c.row.get_str(); }

std::string to_string(const MPoint& p) {
  if (p.carrier.is_bone()) return "bone:" + to_string(p.t);
  return "row:" + p.carrier.row.get_str() + ":" + to_string(p.t);
}

void validate(const MPoint& p) {
  if (p.t < 0 || p.t > 1) fail(ErrorCode::InvalidArgument, "parameter must lie in [0,1]: " + to_string(p.t));
  if (p.carrier.row < 0) fail(ErrorCode::InvalidArgument, "negative row index");
}

MPoint parse_point(const std::string& text) {
  MPoint p;
  if (text.rfind("bone:", 0) == 0) {
    p = MPoint::bone(parse_rational(text.substr(5)));
  } else if (text.rfind("row:", 0) == 0) {
    auto colon = text.find(':', 4);
    if (colon == std::string::npos) fail(ErrorCode::Parse, "expected row:<k>:<t>, got '" + text + "'");
    BigInt k = parse_bigint(text.substr(4, colon - 4));
    if (k < 1) fail(ErrorCode::Parse, "row index must be >= 1 in '" + text + "'");
    p = MPoint::row(k, parse_rational(text.substr(colon + 1)));
  } else {
    fail(ErrorCode::Parse, "expected bone:<t> or row:<k>:<t>, got '" + text + "'");
  }
  if (p.t < 0 || p.t > 1) fail(ErrorCode::Parse, "parameter outside [0,1] in '" + text + "'");
  return p;
}

long n_of(const BigInt& k) { return canonical_n_of(k); }

namespace {
void check_tooth(long i, const BigInt& j) {
  if (i < 0) fail(ErrorCode::InvalidArgument, "negative generation");
  if (j < 0 || j >= pow2(static_cast<unsigned long>(i)))
    fail(ErrorCode::InvalidArgument, "tooth index " + j.get_str() + " out of range for 2^" + std::to_string(i));
}
}  // namespace

Rational p_map(long i, const BigInt& j, const Rational& t) {
  check_tooth(i, j);
  return (t + Rational(j)) / Rational(pow2(static_cast<unsigned long>(i)));
}

Rational p_inv(long i, const BigInt& j, const Rational& t) {
  check_tooth(i, j);
  return t * Rational(pow2(static_cast<unsigned long>(i))) - Rational(j);
}

BigInt tooth_index(long tooth_exp, const Rational& t) {
  Rational x = t * Rational(pow2(static_cast<unsigned long>(tooth_exp)));
  BigInt j = floor(x);
  if (j > 0 && Rational(j) == x) j -= 1;
  return j;
}

BigInt piece_index_general(long tooth_exp, const BigInt& j, const BigInt& pieces, const Rational& t) {
  Rational u = p_inv(tooth_exp, j, t);
  if (u < 0 || u > 1) fail(ErrorCode::InvalidArgument, "parameter " + to_string(t) + " is outside tooth " + j.get_str());
  Rational x = u * Rational(pieces);
  BigInt k = floor(x);
  if (k > 0 && Rational(k) == x) k -= 1;
  return k;
}

BigInt piece_index(long i, const BigInt& j, const BigInt& s, const Rational& t) {
  return piece_index_general(i, j, BigInt(s + 1), t);
}

PlanePoint embed(const Space& space, const MPoint& p) {
  if (p.carrier.is_bone()) return PlanePoint{p.t, Rational(0)};
  return PlanePoint{p.t, phi_n(space.tooth_exp_of_row(p.carrier.row), p.t) / Rational(p.carrier.row)};
}

MPoint canonicalize(const Space& space, const MPoint& p) {
  validate(p);
  if (p.carrier.is_bone()) return p;
  if (phi_n(space.tooth_exp_of_row(p.carrier.row), p.t) == 0) return MPoint::bone(p.t);
  return p;
}

std::vector<PlanePoint> polyline_of(const Space& space, const Segment& s) {
  if (s.lo > s.hi || s.lo < 0 || s.hi > 1) fail(ErrorCode::InvalidArgument, "invalid segment bounds");
  std::vector<PlanePoint> out;
  auto at = [&](const Rational& t) { return embed(space, MPoint{s.carrier, t}); };
  out.push_back(at(s.lo));
  if (s.lo == s.hi) return out;
  if (!s.carrier.is_bone()) {
    long n = space.tooth_exp_of_row(s.carrier.row);
    BigInt per_unit = pow2(static_cast<unsigned long>(n + 1));  // breakpoints at multiples of 2^{-n-1}
    BigInt m = floor(s.lo * Rational(per_unit)) + 1;
    for (Rational t = make_rational(m, per_unit); t < s.hi; m += 1, t = make_rational(m, per_unit))
      out.push_back(at(t));
  }
  out.push_back(at(s.hi));
  return out;
}

}  // namespace shark
