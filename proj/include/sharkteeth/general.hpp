#pragma once

// Teeth spaces for arbitrary non-decreasing sequences n_k: empty generations are
// renumbered away, s_i is a ceiling, and odd s_i divides each tooth into s_i pieces.
//
// Sequence file format:
//   prefix: n_1 n_2 ... n_P
//   tail: <expression in k>      (or "tail: none" for a finite window)
// Expressions: integers, k, + - * / (floor division), unary minus, parentheses,
// log2(x) (floor), min(a, b, ...), max(a, b, ...).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sharkteeth/geometry.hpp"
#include "sharkteeth/sequence.hpp"

namespace shark {

class Expr {
 public:
  virtual ~Expr() = default;
  virtual BigInt eval(const BigInt& k) const = 0;
  virtual std::string to_string() const = 0;
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Throws Error{Parse} with "line L, column C" in the message.
ExprPtr parse_expression(const std::string& text, std::size_t line = 1, std::size_t column_offset = 0);

class GeneralSequence : public SharkSequence {
 public:
  GeneralSequence(std::vector<long> prefix, ExprPtr tail);

  long n_of(const BigInt& k) const override;
  std::string describe() const override;
  std::optional<BigInt> last_defined() const override;

  const std::vector<long>& prefix() const { return prefix_; }
  const ExprPtr& tail() const { return tail_; }

 private:
  std::vector<long> prefix_;
  ExprPtr tail_;  // null: finite window
};

GeneralSequence parse_sequence(const std::string& text);
GeneralSequence load_sequence_file(const std::string& path);

struct TableEntry {
  Generation gen;
  long original_value = 0;  // n_k shared by the rows (index before renumbering)
  bool odd = false;         // s odd: s pieces per tooth, no bone piece
};

struct GenerationTable {
  std::vector<TableEntry> entries;  // generations 0..i_max+1; the last has no successor
  bool single_base_row = false;     // N_0 = 1: g and h maps share row 1
  std::string label;

  Space to_space() const;
};

/// Generations 0..i_max with successors (plus i_max+1 as the final target).
/// Throws InfiniteGeneration if some generation never ends inside the searchable range.
GenerationTable build_table(const SharkSequence& seq, std::size_t i_max, std::string label = "general");

/// f1 evaluated directly from the table entries.
MPoint apply_f1_general(const GenerationTable& table, const MPoint& p);

}  // namespace shark
