#include "sharkteeth/general.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "sharkteeth/error.hpp"

namespace shark {

namespace {

[[noreturn]] void parse_fail(std::size_t line, std::size_t col, const std::string& what) {
  fail(ErrorCode::Parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
}

class Const : public Expr {
 public:
  explicit Const(BigInt v) : v_(std::move(v)) {}
  BigInt eval(const BigInt&) const override { return v_; }
  std::string to_string() const override { return shark::to_string(v_); }

 private:
  BigInt v_;
};

class Var : public Expr {
 public:
  BigInt eval(const BigInt& k) const override { return k; }
  std::string to_string() const override { return "k"; }
};

class Neg : public Expr {
 public:
  explicit Neg(ExprPtr a) : a_(std::move(a)) {}
  BigInt eval(const BigInt& k) const override { return -a_->eval(k); }
  std::string to_string() const override { return "-(" + a_->to_string() + ")"; }

 private:
  ExprPtr a_;
};

class Binary : public Expr {
 public:
  Binary(char op, ExprPtr a, ExprPtr b) : op_(op), a_(std::move(a)), b_(std::move(b)) {}
  BigInt eval(const BigInt& k) const override {
    BigInt x = a_->eval(k);
    BigInt y = b_->eval(k);
    switch (op_) {
      case '+': return x + y;
      case '-': return x - y;
      case '*': return x * y;
      default: {
        if (y == 0) fail(ErrorCode::InvalidArgument, "division by zero in '" + to_string() + "'");
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        return q;
      }
    }
  }
  std::string to_string() const override { return "(" + a_->to_string() + " " + op_ + " " + b_->to_string() + ")"; }

 private:
  char op_;
  ExprPtr a_, b_;
};

class Call : public Expr {
 public:
  Call(std::string name, std::vector<ExprPtr> args) : name_(std::move(name)), args_(std::move(args)) {}
  BigInt eval(const BigInt& k) const override {
    if (name_ == "log2") {
      BigInt x = args_[0]->eval(k);
      if (x < 1) fail(ErrorCode::InvalidArgument, "log2 of a non-positive value at k = " + shark::to_string(k));
      return BigInt(static_cast<unsigned long>(mpz_sizeinbase(x.get_mpz_t(), 2) - 1));
    }
    BigInt best = args_[0]->eval(k);
    for (std::size_t i = 1; i < args_.size(); ++i) {
      BigInt v = args_[i]->eval(k);
      if (name_ == "min" ? v < best : v > best) best = v;
    }
    return best;
  }
  std::string to_string() const override {
    std::string out = name_ + "(";
    for (std::size_t i = 0; i < args_.size(); ++i) out += (i ? ", " : "") + args_[i]->to_string();
    return out + ")";
  }

 private:
  std::string name_;
  std::vector<ExprPtr> args_;
};

class Parser {
 public:
  Parser(const std::string& text, std::size_t line, std::size_t offset) : s_(text), line_(line), offset_(offset) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (pos_ < s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) const { parse_fail(line_, offset_ + pos_ + 1, what); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (true) {
      if (eat('+'))
        e = std::make_shared<Binary>('+', e, term());
      else if (eat('-'))
        e = std::make_shared<Binary>('-', e, term());
      else
        return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    while (true) {
      if (eat('*'))
        e = std::make_shared<Binary>('*', e, unary());
      else if (eat('/'))
        e = std::make_shared<Binary>('/', e, unary());
      else
        return e;
    }
  }

  ExprPtr unary() {
    if (eat('-')) return std::make_shared<Neg>(unary());
    return primary();
  }

  ExprPtr primary() {
    skip();
    if (pos_ >= s_.size()) error("expression ends early");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return std::make_shared<Const>(BigInt(s_.substr(start, pos_ - start)));
    }
    if (eat('(')) {
      ExprPtr e = expr();
      if (!eat(')')) error("expected ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "k") return std::make_shared<Var>();
      if (name != "log2" && name != "min" && name != "max") {
        pos_ = start;
        error("unknown name '" + name + "'");
      }
      if (!eat('(')) error("expected '(' after " + name);
      std::vector<ExprPtr> args{expr()};
      while (eat(',')) args.push_back(expr());
      if (!eat(')')) error("expected ')'");
      if (name == "log2" && args.size() != 1) {
        pos_ = start;
        error("log2 takes one argument");
      }
      return std::make_shared<Call>(name, std::move(args));
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expression(const std::string& text, std::size_t line, std::size_t column_offset) {
  return Parser(text, line, column_offset).parse();
}

GeneralSequence::GeneralSequence(std::vector<long> prefix, ExprPtr tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    if (prefix_[i] < 0) fail(ErrorCode::InvalidArgument, "n_k must be non-negative");
    if (i > 0 && prefix_[i] < prefix_[i - 1])
      fail(ErrorCode::InvalidArgument, "prefix decreases at k = " + std::to_string(i + 1));
  }
  if (!prefix_.empty() && tail_) {
    BigInt next(static_cast<unsigned long>(prefix_.size() + 1));
    if (n_of(next) < prefix_.back())
      fail(ErrorCode::InvalidArgument, "tail starts below the last prefix value");
  }
}

long GeneralSequence::n_of(const BigInt& k) const {
  if (k < 1) fail(ErrorCode::InvalidArgument, "row index must be >= 1");
  if (k <= prefix_.size()) return prefix_[k.get_ui() - 1];
  if (!tail_)
    fail(ErrorCode::InfiniteGeneration, "n_k is undefined past the prefix (k = " + to_string(k) + ")");
  BigInt v = tail_->eval(k);
  if (v < 0 || !v.fits_slong_p())
    fail(ErrorCode::InvalidArgument, "tail value out of range at k = " + to_string(k));
  return v.get_si();
}

std::optional<BigInt> GeneralSequence::last_defined() const {
  if (tail_) return std::nullopt;
  return BigInt(static_cast<unsigned long>(prefix_.size()));
}

std::string GeneralSequence::describe() const {
  std::string out = "prefix:";
  for (long v : prefix_) out += " " + std::to_string(v);
  out += "; tail: " + (tail_ ? tail_->to_string() : std::string("none"));
  return out;
}

GeneralSequence parse_sequence(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    lines.push_back(l);
  }
  while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string::npos) lines.pop_back();
  if (lines.size() != 2) parse_fail(lines.size() < 2 ? lines.size() + 1 : 3, 1, "expected exactly two lines (prefix, tail)");

  auto body = [&](std::size_t idx, const std::string& key) {
    const std::string& l = lines[idx];
    std::size_t start = l.find_first_not_of(" \t");
    if (start == std::string::npos || l.compare(start, key.size(), key) != 0)
      parse_fail(idx + 1, start == std::string::npos ? 1 : start + 1, "expected '" + key + "'");
    return start + key.size();
  };

  std::vector<long> prefix;
  {
    const std::string& l = lines[0];
    std::size_t pos = body(0, "prefix:");
    while (pos < l.size()) {
      if (std::isspace(static_cast<unsigned char>(l[pos]))) {
        ++pos;
        continue;
      }
      std::size_t start = pos;
      while (pos < l.size() && !std::isspace(static_cast<unsigned char>(l[pos]))) ++pos;
      std::string tok = l.substr(start, pos - start);
      if (tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 12)
        parse_fail(1, start + 1, "expected a non-negative integer, got '" + tok + "'");
      prefix.push_back(std::stol(tok));
    }
  }
  ExprPtr tail;
  {
    const std::string& l = lines[1];
    std::size_t pos = body(1, "tail:");
    std::string rest = l.substr(pos);
    std::size_t a = rest.find_first_not_of(" \t");
    std::size_t b = rest.find_last_not_of(" \t");
    if (a == std::string::npos) parse_fail(2, l.size() + 1, "missing tail expression (use 'none' for a finite window)");
    if (rest.substr(a, b - a + 1) != "none") tail = parse_expression(rest, 2, pos);
  }
  if (!tail && prefix.empty()) parse_fail(1, 1, "empty sequence");
  return GeneralSequence(std::move(prefix), std::move(tail));
}

GeneralSequence load_sequence_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::InvalidArgument, "cannot read sequence file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_sequence(ss.str());
}

GenerationTable build_table(const SharkSequence& seq, std::size_t i_max, std::string label) {
  GenerationTable t;
  t.label = std::move(label);
  BigInt first = 1;
  for (std::size_t idx = 0; idx <= i_max + 1; ++idx) {
    long v = seq.n_of(first);
    BigInt next;
    try {
      next = first_row_at_least(seq, v + 1, first);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InfiniteGeneration) throw;
      fail(ErrorCode::InfiniteGeneration, "generation " + std::to_string(idx) + " (n_k = " + std::to_string(v) +
                                              ", from row " + to_string(first) + ") never ends: " + e.what());
    }
    TableEntry e;
    e.original_value = v;
    e.gen.index = idx;
    e.gen.tooth_exp = v;
    e.gen.first_row = first;
    e.gen.rows = next - first;
    t.entries.push_back(e);
    first = next;
  }
  for (std::size_t i = 0; i + 1 < t.entries.size(); ++i) {
    Generation& g = t.entries[i].gen;
    const BigInt& next_rows = t.entries[i + 1].gen.rows;
    g.has_successor = true;
    g.s = ceil(make_rational(next_rows, g.rows));
    g.s_exact = g.s * g.rows == next_rows;
    t.entries[i].odd = mpz_odd_p(g.s.get_mpz_t()) != 0;
  }
  if (t.entries[0].gen.rows > 2)
    fail(ErrorCode::InvalidArgument, "the first generation has " + to_string(t.entries[0].gen.rows) +
                                         " rows; only one or two rows can carry the g/h maps");
  t.single_base_row = t.entries[0].gen.rows == 1;
  return t;
}

Space GenerationTable::to_space() const {
  std::vector<Generation> gens;
  for (const auto& e : entries) gens.push_back(e.gen);
  return Space::from_generations(std::move(gens), label);
}

MPoint apply_f1_general(const GenerationTable& table, const MPoint& p) {
  validate(p);
  if (p.carrier.is_bone()) return MPoint::bone(p.t / 2);

  const auto& es = table.entries;
  std::size_t gi = es.size();
  for (std::size_t i = 0; i < es.size(); ++i)
    if (es[i].gen.first_row <= p.carrier.row && p.carrier.row < es[i].gen.first_row + es[i].gen.rows) gi = i;
  if (gi == es.size()) fail(ErrorCode::InfiniteGeneration, "row " + to_string(p.carrier.row) + " is outside the table");
  if (gi + 1 >= es.size()) fail(ErrorCode::InfiniteGeneration, "f1 needs the generation after " + std::to_string(gi));
  const Generation& g = es[gi].gen;
  const Generation& h = es[gi + 1].gen;

  BigInt width = pow2(static_cast<unsigned long>(g.tooth_exp));
  Rational x = p.t * Rational(width);
  // Points on the bone are treated as bone points.
  if (x == Rational(floor(x))) return MPoint::bone(p.t / 2);
  BigInt j = floor(x);
  Rational u = x - Rational(j);

  bool odd = es[gi].odd;
  BigInt pieces = odd ? g.s : BigInt(g.s + 1);
  Rational y = u * Rational(pieces);
  BigInt q = ceil(y) - 1;  // lower piece at a shared boundary
  if (q < 0) q = 0;
  Rational v = (q % 2 == 0) ? Rational(y - Rational(q)) : Rational(Rational(q + 1) - y);
  Rational tau = (Rational(j) + v) / Rational(2 * width);
  if (!odd && q == g.s) return MPoint::bone(tau);

  BigInt l = p.carrier.row - g.first_row;
  BigInt idx = l * g.s + q;
  BigInt row;
  if (idx < h.rows) {
    row = h.first_row + idx;
  } else {
    // Surplus pieces of the last row run over the final rows of the successor again.
    BigInt back = (g.s * g.rows - 1 - idx) % h.rows;
    row = h.first_row + h.rows - 1 - back;
  }
  Rational on_grid = tau * Rational(pow2(static_cast<unsigned long>(h.tooth_exp)));
  if (on_grid == Rational(floor(on_grid))) return MPoint::bone(tau);
  return MPoint::row(row, tau);
}

}  // namespace shark
