#include "sharkteeth/sequence.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <mutex>

#include "sharkteeth/error.hpp"

namespace shark {

long canonical_n_of(const BigInt& k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "row index must be >= 1, got " + k.get_str());
  // 2^{2^i} <= k+1 < 2^{2^{i+1}}  <=>  i = floor(log2(floor(log2(k+1))))
  unsigned long b = floor_log2(BigInt(k + 1));
  return static_cast<long>(floor_log2(BigInt(b)));
}

long CanonicalSequence::n_of(const BigInt& k) const { return canonical_n_of(k); }

BigInt first_row_at_least(const SharkSequence& seq, long value, const BigInt& from) {
  BigInt lo = from;
  if (seq.n_of(lo) >= value) return lo;
  // invariant: n(lo) < value
  std::optional<BigInt> limit = seq.last_defined();
  auto clamp = [&](BigInt& x) {
    if (!limit || x <= *limit) return;
    x = *limit;
    if (x <= lo || seq.n_of(x) < value)
      fail(ErrorCode::InfiniteGeneration,
           "no row with n_k >= " + std::to_string(value) + " up to k = " + to_string(*limit));
  };
  BigInt step = 1;
  BigInt hi = lo + step;
  clamp(hi);
  while (seq.n_of(hi) < value) {
    lo = hi;
    step *= 2;
    hi = lo + step;
    clamp(hi);
    if (mpz_sizeinbase(hi.get_mpz_t(), 2) > kRowSearchBits)
      fail(ErrorCode::InfiniteGeneration,
           "no row with n_k >= " + std::to_string(value) + " below 2^" + std::to_string(kRowSearchBits));
  }
  // n(lo) < value <= n(hi)
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (seq.n_of(mid) >= value)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

GenerationStats generation_stats(const SharkSequence& seq, long i) {
  if (i < 0) fail(ErrorCode::InvalidArgument, "generation index must be >= 0");
  GenerationStats out;
  out.first_row = first_row_at_least(seq, i);
  if (seq.n_of(out.first_row) != i) fail(ErrorCode::EmptyGeneration, "generation " + std::to_string(i) + " is empty");
  BigInt next_first = first_row_at_least(seq, i + 1, out.first_row);
  out.rows = next_first - out.first_row;
  if (seq.n_of(next_first) != i + 1)
    fail(ErrorCode::EmptyGeneration, "generation " + std::to_string(i + 1) + " is empty");
  BigInt next_rows = first_row_at_least(seq, i + 2, next_first) - next_first;
  out.s = ceil(make_rational(next_rows, out.rows));
  out.s_exact = out.s * out.rows == next_rows;
  return out;
}

GenerationStats canonical_closed_form(unsigned long i) {
  BigInt a = pow2(1ul << i);         // 2^{2^i}
  BigInt b = pow2(1ul << (i + 1));   // 2^{2^{i+1}}
  return GenerationStats{a - 1, b - a, b + a, true};
}

namespace {

constexpr std::size_t kCanonicalMaxGeneration = 24;

Generation canonical_generation(std::size_t i) {
  GenerationStats st = canonical_closed_form(i);
  Generation g;
  g.index = i;
  g.tooth_exp = static_cast<long>(i);
  g.first_row = st.first_row;
  g.rows = st.rows;
  g.has_successor = true;
  g.s = st.s;
  g.s_exact = true;
  return g;
}

}  // namespace

struct Space::Impl {
  bool canonical = false;
  std::string label;
  BigInt g_row{1};
  BigInt h_row{2};
  mutable std::mutex mutex;
  mutable std::deque<Generation> gens;  // deque: references stay valid on growth
};

Space Space::canonical() {
  auto impl = std::make_shared<Impl>();
  impl->canonical = true;
  impl->label = "canonical";
  for (std::size_t i = 0; i < 6; ++i) impl->gens.push_back(canonical_generation(i));
  return Space(std::move(impl));
}

Space Space::from_generations(std::vector<Generation> gens, std::string label) {
  if (gens.empty()) fail(ErrorCode::InvalidArgument, "a space needs at least one generation");
  BigInt expected = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Generation& g = gens[i];
    if (g.index != i) fail(ErrorCode::InvalidArgument, "generation indices must be consecutive");
    if (g.rows < 1) fail(ErrorCode::EmptyGeneration, "generation " + std::to_string(i) + " is empty");
    if (g.first_row != expected) fail(ErrorCode::InvalidArgument, "generation rows must be contiguous from 1");
    if (i > 0 && g.tooth_exp <= gens[i - 1].tooth_exp)
      fail(ErrorCode::InvalidArgument, "tooth exponents must increase across generations");
    if (i + 1 < gens.size() && !g.has_successor)
      fail(ErrorCode::InvalidArgument, "only the final generation may lack a successor");
    if (g.has_successor && g.s < 1) fail(ErrorCode::InvalidArgument, "s must be >= 1");
    expected = g.last_row() + 1;
  }
  if (gens[0].rows > 2)
    fail(ErrorCode::InvalidArgument, "the first generation must have one or two rows (g/h maps fill them)");
  auto impl = std::make_shared<Impl>();
  impl->label = std::move(label);
  impl->h_row = gens[0].rows == 2 ? 2 : 1;
  for (auto& g : gens) impl->gens.push_back(std::move(g));
  return Space(std::move(impl));
}

const Generation& Space::generation(std::size_t i) const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  if (i < impl_->gens.size()) return impl_->gens[i];
  if (!impl_->canonical)
    fail(ErrorCode::InfiniteGeneration, "generation " + std::to_string(i) + " is beyond the built table");
  if (i > kCanonicalMaxGeneration)
    fail(ErrorCode::ResourceLimit, "generation " + std::to_string(i) + " exceeds the supported range");
  while (impl_->gens.size() <= i) impl_->gens.push_back(canonical_generation(impl_->gens.size()));
  return impl_->gens[i];
}

std::size_t Space::generation_count() const {
  if (impl_->canonical) return std::numeric_limits<std::size_t>::max();
  return impl_->gens.size();
}

std::size_t Space::generation_of_row(const BigInt& k) const {
  if (k < 1) fail(ErrorCode::InvalidArgument, "row index must be >= 1");
  if (impl_->canonical) return static_cast<std::size_t>(canonical_n_of(k));
  std::lock_guard<std::mutex> lock(impl_->mutex);
  const auto& gens = impl_->gens;
  auto it = std::upper_bound(gens.begin(), gens.end(), k,
                             [](const BigInt& row, const Generation& g) { return row < g.first_row; });
  std::size_t i = static_cast<std::size_t>(it - gens.begin()) - 1;
  if (k > gens[i].last_row())
    fail(ErrorCode::InfiniteGeneration, "row " + k.get_str() + " is beyond the built table");
  return i;
}

const BigInt& Space::g_row() const { return impl_->g_row; }
const BigInt& Space::h_row() const { return impl_->h_row; }
bool Space::single_base_row() const { return impl_->g_row == impl_->h_row; }
bool Space::is_canonical() const { return impl_->canonical; }
const std::string& Space::label() const { return impl_->label; }

}  // namespace shark
