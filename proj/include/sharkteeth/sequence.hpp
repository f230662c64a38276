#pragma once

// Teeth sequences k -> n_k and the per-generation bookkeeping derived from them.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <optional>

#include "sharkteeth/rational.hpp"

namespace shark {

/// A non-decreasing integer rule k -> n_k, k >= 1.
class SharkSequence {
 public:
  virtual ~SharkSequence() = default;
  /// Throws Error{InfiniteGeneration} where the rule is not defined (finite windows).
  virtual long n_of(const BigInt& k) const = 0;
  virtual std::string describe() const = 0;
  /// Largest k where the rule is defined; nullopt when unbounded.
  virtual std::optional<BigInt> last_defined() const { return std::nullopt; }
};

/// n_k = floor(log2 log2 (k+1)), evaluated with bit lengths only.
class CanonicalSequence final : public SharkSequence {
 public:
  long n_of(const BigInt& k) const override;
  std::string describe() const override { return "canonical"; }
};

long canonical_n_of(const BigInt& k);
inline long canonical_n_of(long k) { return canonical_n_of(BigInt(k)); }

struct GenerationStats {
  BigInt first_row;  // k_i
  BigInt rows;       // N_i
  BigInt s;          // ceil(N_{i+1} / N_i)
  bool s_exact = true;
  friend bool operator==(const GenerationStats&, const GenerationStats&) = default;
};

/// Bit-length cap on the row indices searched by generic sequence scans.
inline constexpr unsigned long kRowSearchBits = 4096;

/// Smallest k >= from with n_k >= value; throws InfiniteGeneration past the search cap.
BigInt first_row_at_least(const SharkSequence& seq, long value, const BigInt& from = 1);

/// Stats of the rows with n_k = i (no renumbering), found by searching the rule.
/// Throws EmptyGeneration if no row (or no row of i+1) has that value.
GenerationStats generation_stats(const SharkSequence& seq, long i);

/// k_i = 2^{2^i} - 1, N_i = 2^{2^{i+1}} - 2^{2^i}, s_i = 2^{2^{i+1}} + 2^{2^i}.
GenerationStats canonical_closed_form(unsigned long i);

/// One generation of the teeth space as the maps see it (index after renumbering).
struct Generation {
  std::size_t index = 0;
  long tooth_exp = 0;  // rows carry 2^tooth_exp teeth
  BigInt first_row;
  BigInt rows;
  bool has_successor = false;
  BigInt s;              // rows of the successor fed by one row; 0 without successor
  bool s_exact = true;   // false when s is a ceiling and the last row re-covers

  BigInt last_row() const { return first_row + rows - 1; }
  bool bone_piece() const { return mpz_even_p(s.get_mpz_t()) != 0; }
  /// Pieces per tooth: s+1 for even s (last one onto the bone), s for odd s.
  BigInt pieces() const { return bone_piece() ? BigInt(s + 1) : s; }
};

/// Immutable view of a teeth space: generation table plus the rows the g/h maps fill.
/// Copies share state; safe to use from several threads.
class Space {
 public:
  static Space canonical();
  /// gens must be consecutive, nonempty, with rows 1.. contiguous; the final one may lack a successor.
  static Space from_generations(std::vector<Generation> gens, std::string label);

  const Generation& generation(std::size_t i) const;
  /// Number of generations known, or SIZE_MAX for the canonical (unbounded) space.
  std::size_t generation_count() const;
  std::size_t generation_of_row(const BigInt& k) const;
  long tooth_exp_of_row(const BigInt& k) const { return generation(generation_of_row(k)).tooth_exp; }

  const BigInt& g_row() const;
  const BigInt& h_row() const;
  bool single_base_row() const;
  bool is_canonical() const;
  const std::string& label() const;

 private:
  struct Impl;
  explicit Space(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace shark
