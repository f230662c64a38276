#include "sharkteeth/rational.hpp"

#include <cctype>

#include "sharkteeth/error.hpp"

namespace shark {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) fail(ErrorCode::Parse, "expected integer, got '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      fail(ErrorCode::Parse, "expected integer, got '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_bigint(text));
  BigInt num = parse_bigint(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    fail(ErrorCode::Parse, "sign not allowed in denominator: '" + std::string(text) + "'");
  BigInt den = parse_bigint(den_text);
  if (den == 0) fail(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  return make_rational(num, den);
}

std::string to_string(const BigInt& z) { return z.get_str(); }

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

BigInt floor(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

BigInt ceil(const Rational& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

BigInt pow2(unsigned long e) {
  BigInt z;
  mpz_ui_pow_ui(z.get_mpz_t(), 2, e);
  return z;
}

Rational pow2_inv(unsigned long e) { return Rational(BigInt(1), pow2(e)); }

unsigned long floor_log2(const BigInt& z) {
  if (z < 1) fail(ErrorCode::InvalidArgument, "floor_log2 of non-positive value");
  return static_cast<unsigned long>(mpz_sizeinbase(z.get_mpz_t(), 2)) - 1;
}

Rational sqrt_upper(const Rational& x, unsigned long bits) {
  if (x < 0) fail(ErrorCode::InvalidArgument, "sqrt of negative value");
  // a = ceil(sqrt(ceil(x * 4^bits))) / 2^bits
  BigInt scaled = ceil(x * Rational(pow2(2 * bits)));
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  if (root * root < scaled) root += 1;
  return make_rational(root, pow2(bits));
}

std::string to_decimal(const Rational& r, int digits) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational scaled = abs(r) * Rational(scale);
  BigInt q = floor(scaled + Rational(1, 2));
  BigInt int_part, frac_part;
  mpz_fdiv_qr(int_part.get_mpz_t(), frac_part.get_mpz_t(), q.get_mpz_t(), scale.get_mpz_t());
  std::string out = (r < 0 && q != 0) ? "-" : "";
  out += int_part.get_str();
  if (digits > 0) {
    std::string frac = frac_part.get_str();
    out += "." + std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
  }
  return out;
}

double to_double(const Rational& r) { return r.get_d(); }

}  // namespace shark
