#include "sharkteeth/maps.hpp"

#include <algorithm>

#include "sharkteeth/error.hpp"

namespace shark {

Family family_of(MapId m) {
  switch (m) {
    case MapId::F1:
    case MapId::F2:
      return Family::F;
    case MapId::G1:
    case MapId::G2:
    case MapId::G3:
    case MapId::G4:
      return Family::G;
    default:
      return Family::H;
  }
}

std::string_view name_of(MapId m) {
  static constexpr std::array<std::string_view, 10> kNames{"f1", "f2", "g1", "g2", "g3",
                                                            "g4", "h1", "h2", "h3", "h4"};
  return kNames[static_cast<std::size_t>(m)];
}

MapId parse_map_id(std::string_view text) {
  for (MapId m : kAllMaps)
    if (name_of(m) == text) return m;
  fail(ErrorCode::Parse, "unknown map '" + std::string(text) + "' (expected f1,f2,g1..g4,h1..h4)");
}

Word parse_word(std::string_view text) {
  Word w;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    w.push_back(parse_map_id(tok));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return w;
}

std::string to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += name_of(w[i]);
  }
  return out;
}

namespace {

const Rational kHalf(1, 2);

// ---------------------------------------------------------------------------
// g/h maps: tau = offset + sign * phi(2^n t) / 2 on the base row, constant elsewhere.

struct TentMap {
  BigInt base_row;
  Rational offset;
  int sign;
};

TentMap tent_map(const Space& space, MapId m) {
  const BigInt& row = family_of(m) == Family::G ? space.g_row() : space.h_row();
  switch (m) {
    case MapId::G1:
    case MapId::H1:
      return {row, Rational(0), +1};
    case MapId::G2:
    case MapId::H2:
      return {row, kHalf, -1};
    case MapId::G3:
    case MapId::H3:
      return {row, kHalf, +1};
    default:
      return {row, Rational(1), -1};
  }
}

Rational tent_param(const TentMap& tm, long n, const Rational& phi_value) {
  (void)n;
  return tm.offset + Rational(tm.sign) * phi_value / 2;
}

MPoint tent_constant(const Space& space, const TentMap& tm) {
  return canonicalize(space, MPoint{Carrier{tm.base_row}, tm.offset});
}

// ---------------------------------------------------------------------------
// f1 on rows.

struct RowContext {
  const Generation* src;
  const Generation* dst;
  BigInt pieces;
  BigInt teeth;       // 2^m
  BigInt target_den;  // 2^{m+1}
};

RowContext row_context(const Space& space, std::size_t gi) {
  const Generation& src = space.generation(gi);
  if (!src.has_successor)
    fail(ErrorCode::InfiniteGeneration,
         "f1 is undefined on generation " + std::to_string(gi) + ": its successor is not in the table");
  const Generation& dst = space.generation(gi + 1);
  auto m = static_cast<unsigned long>(src.tooth_exp);
  return RowContext{&src, &dst, src.pieces(), pow2(m), pow2(m + 1)};
}

// Rows of the successor fed by piece indices idx = l*s + p in [a, b]; beyond the
// successor's row count the surplus wraps onto its final rows, in order.
template <typename Emit>
void emit_index_range(const RowContext& rc, const BigInt& a, const BigInt& b, Emit&& emit) {
  const BigInt& first = rc.dst->first_row;
  const BigInt& count = rc.dst->rows;
  BigInt last = rc.dst->last_row();
  if (a < count) emit(BigInt(first + a), BigInt(first + (b < count ? b : BigInt(count - 1))));
  BigInt a2 = a > count ? a : count;
  if (a2 > b) return;
  BigInt total = rc.src->s * rc.src->rows;
  BigInt e_lo = total - 1 - b;
  BigInt e_hi = total - 1 - a2;
  if (e_hi - e_lo + 1 >= count) {
    emit(first, last);
    return;
  }
  BigInt r_lo = e_lo % count;
  BigInt r_hi = e_hi % count;
  if (r_lo <= r_hi) {
    emit(BigInt(last - r_hi), BigInt(last - r_lo));
  } else {
    emit(first, BigInt(last - r_lo));
    emit(BigInt(last - r_hi), last);
  }
}

BigInt target_row(const RowContext& rc, const BigInt& l, const BigInt& p) {
  BigInt out;
  BigInt idx = l * rc.src->s + p;
  emit_index_range(rc, idx, idx, [&](const BigInt& a, const BigInt&) { out = a; });
  return out;
}

// Image of tooth j, piece p of row offset l at local parameter u (u in the piece's closure).
MPoint f1_piece_value(const Space& space, const RowContext& rc, const BigInt& l, const BigInt& j, const BigInt& p,
                      const Rational& u) {
  Rational pu = u * Rational(rc.pieces);
  Rational v = mpz_even_p(p.get_mpz_t()) ? Rational(pu - Rational(p)) : Rational(Rational(p + 1) - pu);
  Rational tau = (Rational(j) + v) / Rational(rc.target_den);
  if (rc.src->bone_piece() && p == rc.src->s) return MPoint::bone(tau);
  return canonicalize(space, MPoint{Carrier{target_row(rc, l, p)}, tau});
}

MPoint shift_half(const MPoint& p) { return MPoint{p.carrier, p.t + kHalf}; }

MPoint apply_f1(const Space& space, const MPoint& p) {
  if (p.carrier.is_bone()) return MPoint::bone(p.t / 2);
  std::size_t gi = space.generation_of_row(p.carrier.row);
  RowContext rc = row_context(space, gi);
  // Canonical row points are off the bone, hence strictly inside one tooth.
  BigInt j = floor(p.t * Rational(rc.teeth));
  Rational u = p.t * Rational(rc.teeth) - Rational(j);
  Rational x = u * Rational(rc.pieces);
  BigInt piece = floor(x);
  if (piece > 0 && Rational(piece) == x) piece -= 1;
  return f1_piece_value(space, rc, BigInt(p.carrier.row - rc.src->first_row), j, piece, u);
}

}  // namespace

MPoint apply_point(const Space& space, MapId m, const MPoint& p_in) {
  MPoint p = canonicalize(space, p_in);
  switch (family_of(m)) {
    case Family::F: {
      MPoint out = apply_f1(space, p);
      return m == MapId::F2 ? shift_half(out) : out;
    }
    default: {
      TentMap tm = tent_map(space, m);
      if (p.carrier.row != tm.base_row) return tent_constant(space, tm);
      long n = space.tooth_exp_of_row(tm.base_row);
      Rational ph = phi(p.t * Rational(pow2(static_cast<unsigned long>(n))));
      return canonicalize(space, MPoint{Carrier{tm.base_row}, tent_param(tm, n, ph)});
    }
  }
}

MPoint apply_word(const Space& space, const Word& w, const MPoint& p) {
  MPoint cur = canonicalize(space, p);
  for (MapId m : w) cur = apply_point(space, m, cur);
  return cur;
}

namespace {

// Guard on rows emitted one at a time (partial pieces over long row blocks).
constexpr unsigned long kMaxPerRowEmissions = 4'000'000;

class FImage {
 public:
  FImage(const Space& space, bool shift) : space_(space), shift_(shift), out_(space) {}

  void bone(const Rational& lo, const Rational& hi) {
    Rational d = shift_ ? kHalf : Rational(0);
    out_.add_bone(lo + d, hi + d);
  }
  void rows(const BigInt& a, const BigInt& b, const Rational& lo, const Rational& hi) {
    Rational d = shift_ ? kHalf : Rational(0);
    out_.add_rows(a, b, lo + d, hi + d);
  }

  void source_bone(const Interval& iv) { bone(iv.lo / 2, iv.hi / 2); }

  void source_rows(std::size_t gi, const BigInt& first, const BigInt& last, const Interval& iv) {
    RowContext rc = row_context(space_, gi);
    BigInt l0 = first - rc.src->first_row;
    BigInt l1 = last - rc.src->first_row;
    Rational teeth(rc.teeth);
    if (iv.degenerate()) {
      // Off-bone point in every row of the block: one interior piece.
      BigInt j = floor(iv.lo * teeth);
      Rational u = iv.lo * teeth - Rational(j);
      Rational x = u * Rational(rc.pieces);
      BigInt p = floor(x);
      if (p > 0 && Rational(p) == x) p -= 1;
      piece_image(rc, l0, l1, j, p, u, u);
      return;
    }
    BigInt j_lo = floor(iv.lo * teeth);
    BigInt j_hi = ceil(iv.hi * teeth) - 1;
    Rational P(rc.pieces);
    for (BigInt j = j_lo; j <= j_hi; ++j) {
      Rational ua = iv.lo * teeth - Rational(j);
      Rational ub = iv.hi * teeth - Rational(j);
      if (ua < 0) ua = 0;
      if (ub > 1) ub = 1;
      Rational xa = ua * P;
      Rational xb = ub * P;
      BigInt p_first = floor(xa);
      BigInt p_last = ceil(xb) - 1;
      BigInt full_lo = ceil(xa);
      BigInt full_hi = floor(xb) - 1;
      auto partial = [&](const BigInt& p) {
        if (p >= full_lo && p <= full_hi) return;
        Rational a = Rational(p) / P;
        Rational b = Rational(p + 1) / P;
        piece_image(rc, l0, l1, j, p, a > ua ? a : ua, b < ub ? b : ub);
      };
      partial(p_first);
      if (p_last != p_first) partial(p_last);
      if (full_lo <= full_hi) full_pieces(rc, l0, l1, j, full_lo, full_hi);
    }
  }

  MSubset build() const { return out_.build(); }

 private:
  Interval target_interval(const RowContext& rc, const BigInt& j) const {
    return Interval{make_rational(j, rc.target_den), make_rational(BigInt(j + 1), rc.target_den)};
  }

  void check_budget(const BigInt& n) {
    per_row_ += n;
    if (per_row_ > kMaxPerRowEmissions)
      fail(ErrorCode::ResourceLimit, "segment image needs more than " + std::to_string(kMaxPerRowEmissions) +
                                         " separate rows");
  }

  template <typename Body>
  void for_each_offset(const BigInt& l0, const BigInt& l1, Body&& body) {
    check_budget(BigInt(l1 - l0 + 1));
    for (BigInt l = l0; l <= l1; ++l) body(l);
  }

  void piece_image(const RowContext& rc, const BigInt& l0, const BigInt& l1, const BigInt& j, const BigInt& p,
                   const Rational& u_lo, const Rational& u_hi) {
    Rational P(rc.pieces);
    Rational v_lo, v_hi;
    if (mpz_even_p(p.get_mpz_t())) {
      v_lo = P * u_lo - Rational(p);
      v_hi = P * u_hi - Rational(p);
    } else {
      v_lo = Rational(p + 1) - P * u_hi;
      v_hi = Rational(p + 1) - P * u_lo;
    }
    Rational den(rc.target_den);
    Rational lo = (Rational(j) + v_lo) / den;
    Rational hi = (Rational(j) + v_hi) / den;
    if (rc.src->bone_piece() && p == rc.src->s) {
      bone(lo, hi);
      return;
    }
    const BigInt& s = rc.src->s;
    auto emit = [&](const BigInt& a, const BigInt& b) { rows(a, b, lo, hi); };
    if (s == 1) {
      emit_index_range(rc, BigInt(l0 + p), BigInt(l1 + p), emit);
      return;
    }
    for_each_offset(l0, l1, [&](const BigInt& l) {
      BigInt idx = l * s + p;
      emit_index_range(rc, idx, idx, emit);
    });
  }

  void full_pieces(const RowContext& rc, const BigInt& l0, const BigInt& l1, const BigInt& j, const BigInt& pa,
                   BigInt pb) {
    Interval target = target_interval(rc, j);
    const BigInt& s = rc.src->s;
    if (rc.src->bone_piece() && pb >= s) {
      bone(target.lo, target.hi);
      pb = s - 1;
    }
    if (pa > pb) return;
    auto emit = [&](const BigInt& a, const BigInt& b) { rows(a, b, target.lo, target.hi); };
    if (l0 == l1 || (pa == 0 && pb == s - 1)) {
      emit_index_range(rc, BigInt(l0 * s + pa), BigInt(l1 * s + pb), emit);
      return;
    }
    for_each_offset(l0, l1, [&](const BigInt& l) { emit_index_range(rc, BigInt(l * s + pa), BigInt(l * s + pb), emit); });
  }

  const Space& space_;
  bool shift_;
  SubsetBuilder out_;
  BigInt per_row_{0};
};

MSubset apply_f(const Space& space, MapId m, const MSubset& a) {
  FImage img(space, m == MapId::F2);
  for (const auto& iv : a.bone().items()) img.source_bone(iv);
  for (const auto& b : a.blocks()) {
    BigInt row = b.first;
    while (row <= b.last) {
      std::size_t gi = space.generation_of_row(row);
      const Generation& g = space.generation(gi);
      BigInt end = g.last_row() < b.last ? g.last_row() : b.last;
      for (const auto& iv : b.intervals.items()) img.source_rows(gi, row, end, iv);
      row = end + 1;
    }
  }
  return img.build();
}

MSubset apply_tent(const Space& space, MapId m, const MSubset& a) {
  TentMap tm = tent_map(space, m);
  SubsetBuilder out(space);
  bool elsewhere = !a.bone().empty();
  for (const auto& b : a.blocks()) {
    if (b.first != tm.base_row || b.last != tm.base_row) elsewhere = true;
    if (b.first > tm.base_row || b.last < tm.base_row) continue;
    long n = space.tooth_exp_of_row(tm.base_row);
    BigInt grid = pow2(static_cast<unsigned long>(n + 1));  // phi(2^n t) breaks at multiples of 2^{-n-1}
    Rational scale(pow2(static_cast<unsigned long>(n)));
    auto image = [&](const Rational& t) { return tent_param(tm, n, phi(t * scale)); };
    for (const auto& iv : b.intervals.items()) {
      Rational lo = iv.lo;
      while (true) {
        BigInt next_idx = floor(lo * Rational(grid)) + 1;
        Rational next = make_rational(next_idx, grid);
        Rational hi = next < iv.hi ? next : iv.hi;
        Rational x = image(lo);
        Rational y = image(hi);
        if (x > y) std::swap(x, y);
        out.add_rows(tm.base_row, tm.base_row, x, y);
        if (hi >= iv.hi) break;
        lo = hi;
      }
    }
  }
  if (elsewhere) out.add_point(tent_constant(space, tm));
  return out.build();
}

}  // namespace

MSubset apply_subset(const Space& space, MapId m, const MSubset& a) {
  if (a.empty()) return a;
  if (family_of(m) == Family::F) return apply_f(space, m, a);
  return apply_tent(space, m, a);
}

MSubset apply_segment(const Space& space, MapId m, const Segment& s) {
  return apply_subset(space, m, subset_of(space, {s}));
}

MSubset apply_word(const Space& space, const Word& w, const MSubset& a) {
  MSubset cur = a;
  for (MapId m : w) cur = apply_subset(space, m, cur);
  return cur;
}

// ---------------------------------------------------------------------------

void for_each_row_image(const Space& space, std::size_t i, const std::function<void(const RowImageEntry&)>& fn) {
  RowContext rc = row_context(space, i);
  const Generation& g = *rc.src;
  RowImageEntry e;
  e.generation = i;
  for (BigInt l = 0; l < g.rows; ++l) {
    e.source_row = g.first_row + l;
    e.offset = l;
    for (BigInt j = 0; j < rc.teeth; ++j) {
      e.tooth = j;
      e.target_interval = Interval{make_rational(j, rc.target_den), make_rational(BigInt(j + 1), rc.target_den)};
      for (BigInt p = 0; p < rc.pieces; ++p) {
        e.piece = p;
        e.ascending = mpz_even_p(p.get_mpz_t()) != 0;
        e.target = (g.bone_piece() && p == g.s) ? Carrier::bone() : Carrier{target_row(rc, l, p)};
        fn(e);
      }
    }
  }
}

std::vector<RowImageEntry> row_image_table(const Space& space, std::size_t i) {
  std::vector<RowImageEntry> out;
  for_each_row_image(space, i, [&](const RowImageEntry& e) { out.push_back(e); });
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<BigInt> cells_containing(const Rational& x, const BigInt& count) {
  // Indices q in [0, count) whose cell [q, q+1] contains x.
  std::vector<BigInt> out;
  BigInt q = floor(x);
  if (q < count && q >= 0) out.push_back(q);
  if (Rational(q) == x && q - 1 >= 0 && q - 1 < count) out.push_back(BigInt(q - 1));
  return out;
}

void tent_branches(const Space& space, const TentMap& tm, const Rational& t, std::vector<MPoint>& out) {
  long n = space.tooth_exp_of_row(tm.base_row);
  Rational x = t * Rational(pow2(static_cast<unsigned long>(n)));
  // phi(x) has affine branches on the half-integer cells [q/2, (q+1)/2].
  BigInt cells = pow2(static_cast<unsigned long>(n + 1));
  for (const BigInt& q : cells_containing(2 * x, cells))
    out.push_back(canonicalize(space, MPoint{Carrier{tm.base_row}, tent_param(tm, n, phi_branch(q, x))}));
}

}  // namespace

std::vector<MPoint> branch_values(const Space& space, MapId m, const Carrier& c, const Rational& t) {
  std::vector<MPoint> out;
  bool on_bone = c.is_bone() || phi_n(space.tooth_exp_of_row(c.row), t) == 0;
  if (family_of(m) != Family::F) {
    TentMap tm = tent_map(space, m);
    bool on_base = c.row == tm.base_row || (on_bone && phi_n(space.tooth_exp_of_row(tm.base_row), t) == 0);
    if (on_base) tent_branches(space, tm, t, out);
    if (c.row != tm.base_row || on_bone) out.push_back(tent_constant(space, tm));
    return out;
  }
  auto finish = [&](MPoint p) { out.push_back(m == MapId::F2 ? shift_half(p) : p); };
  if (on_bone) finish(MPoint::bone(t / 2));
  if (!c.is_bone()) {
    std::size_t gi = space.generation_of_row(c.row);
    RowContext rc = row_context(space, gi);
    BigInt l = c.row - rc.src->first_row;
    Rational x = t * Rational(rc.teeth);
    for (const BigInt& j : cells_containing(x, rc.teeth)) {
      Rational u = x - Rational(j);
      for (const BigInt& p : cells_containing(u * Rational(rc.pieces), rc.pieces))
        finish(f1_piece_value(space, rc, l, j, p, u));
    }
  }
  return out;
}

std::vector<Rational> breakpoints(const Space& space, MapId m, const Carrier& c) {
  BigInt den;
  if (family_of(m) == Family::F) {
    if (c.is_bone()) return {Rational(0), Rational(1)};
    std::size_t gi = space.generation_of_row(c.row);
    RowContext rc = row_context(space, gi);
    den = rc.teeth * rc.pieces;
  } else {
    TentMap tm = tent_map(space, m);
    if (c.row == tm.base_row)
      den = pow2(static_cast<unsigned long>(space.tooth_exp_of_row(tm.base_row) + 1));
    else if (c.is_bone())
      den = pow2(static_cast<unsigned long>(space.tooth_exp_of_row(tm.base_row)));
    else
      den = pow2(static_cast<unsigned long>(space.tooth_exp_of_row(c.row)));
  }
  if (den > 10'000'000) fail(ErrorCode::ResourceLimit, "too many breakpoints on " + carrier_name(c));
  std::vector<Rational> out;
  for (BigInt q = 0; q <= den; ++q) out.push_back(make_rational(q, den));
  return out;
}

// ---------------------------------------------------------------------------

LipschitzBound lipschitz_alpha(const Space& space, std::size_t i) {
  RowContext rc = row_context(space, i);
  const Generation& g = *rc.src;
  Rational c = Rational(rc.pieces) / 2;  // parameter stretch of every piece
  Rational K(g.last_row());
  Rational k_lo(g.first_row);
  Rational k_next(rc.dst->first_row);

  // Pairs on rows, separated by a piece boundary or on a single row: image heights
  // move at most c/k_next per unit of parameter.
  Rational b_rows = c / k_next;
  Rational best = c * c + b_rows * b_rows;

  // Two different rows inside one piece.
  if (g.rows >= 2) {
    Rational rho;
    if (g.s_exact) {
      // |1/r_x - 1/r_y| / |1/k_x - 1/k_y| = s k_x k_y / (r_x r_y), r >= k_next + (k - k_lo) s.
      Rational s(g.s);
      auto ratio = [&](const Rational& k) -> Rational { return k / (k_next + (k - k_lo) * s); };
      Rational gmax = std::max(ratio(k_lo), ratio(K));
      rho = s * gmax * gmax;
    } else {
      rho = K * (K - 1) / k_next;
    }
    Rational b_same = c * rho * (1 + 1 / (k_lo + 1)) + c / k_next;
    best = std::max(best, Rational(c * c + b_same * b_same));
  }

  // A row point at height delta/k over a bone point: delta <= K d.
  Rational a_mixed = std::max(Rational(c - kHalf), kHalf) * K + kHalf;
  Rational b_mixed = c * K / k_next;
  best = std::max(best, Rational(a_mixed * a_mixed + b_mixed * b_mixed));

  if (best < 1) best = 1;
  return LipschitzBound{best, sqrt_upper(best)};
}

LipschitzTable::LipschitzTable(const Space& space, std::size_t count) {
  entries_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) entries_.push_back(lipschitz_alpha(space, i));
}

Rational LipschitzTable::product_sq(std::size_t k) const {
  if (k > entries_.size())
    fail(ErrorCode::InvalidArgument, "Lipschitz table covers " + std::to_string(entries_.size()) +
                                         " generations, " + std::to_string(k) + " needed");
  Rational out = 1;
  for (std::size_t i = 0; i < k; ++i) out *= entries_[i].alpha_sq;
  return out;
}

}  // namespace shark
