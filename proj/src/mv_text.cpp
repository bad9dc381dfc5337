#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

#include "cliff/multivector.hpp"

namespace cliff {

std::string to_text(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

std::string to_text(const QR2& x) {
  if (x.is_zero()) return "0";
  std::string out;
  if (x.a != 0) out = to_text(x.a);
  if (x.b != 0) {
    std::string bs = to_text(x.b);
    if (!out.empty()) {
      if (bs[0] == '-') {
        out += "-";
        bs.erase(0, 1);
      } else {
        out += "+";
      }
    }
    if (bs == "1")
      out += "√2";
    else if (bs == "-1")
      out += "-√2";
    else
      out += bs + "√2";
  }
  return out;
}

std::string to_text(const CRat& c) {
  if (c.is_zero()) return "0";
  std::string out;
  if (c.re != 0) out = to_text(c.re);
  if (c.im != 0) {
    std::string is = to_text(c.im);
    if (!out.empty() && is[0] != '-') out += "+";
    out += is + "i";
  }
  return out;
}

namespace {

std::string blade_text(std::uint32_t mask) {
  if (mask == 0) return "1";
  std::string out;
  for (int a = 0; mask != 0; ++a, mask >>= 1)
    if (mask & 1) out += "e" + std::to_string(a + 1);
  return out;
}

struct TermCursor {
  std::string_view s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("multivector parse error at offset " + std::to_string(i) + ": " +
                                what);
  }

  Rational rational() {
    skip_ws();
    std::size_t start = i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits) fail("expected number");
    if (i < s.size() && s[i] == '/') {
      ++i;
      std::size_t den = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == den) fail("expected denominator");
    }
    return Rational(std::string(s.substr(start, i - start)));
  }

  std::uint32_t blade(const Signature& sig) {
    std::uint32_t mask = 0;
    if (eat('1')) return 0;
    while (peek() == 'e') {
      ++i;
      std::size_t digits = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == digits) fail("expected generator index after 'e'");
      int a = std::stoi(std::string(s.substr(digits, i - digits)));
      if (a < 1 || a > sig.n()) fail("generator index out of range");
      std::uint32_t bit = std::uint32_t(1) << (a - 1);
      if (mask & bit) fail("repeated generator in blade");
      if (bit < mask) fail("blade generators must be ascending");
      mask |= bit;
    }
    if (mask == 0) fail("expected blade");
    return mask;
  }
};

}  // namespace

std::string to_text(const Multivector& u) {
  if (u.is_zero()) return "0";
  std::vector<std::pair<std::uint32_t, CRat>> terms(u.terms().begin(), u.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    int gx = blade_grade(x.first), gy = blade_grade(y.first);
    return gx != gy ? gx < gy : x.first < y.first;
  });
  std::string out;
  auto emit = [&](const Rational& value, bool imag, std::uint32_t mask) {
    if (value == 0) return;
    Rational v = value;
    if (out.empty()) {
      if (v < 0) {
        out += "-";
        v = -v;
      }
    } else {
      out += v < 0 ? " - " : " + ";
      if (v < 0) v = -v;
    }
    out += to_text(v);
    if (imag) out += "i";
    out += "*" + blade_text(mask);
  };
  for (const auto& [mask, c] : terms) {
    emit(c.re, false, mask);
    emit(c.im, true, mask);
  }
  return out;
}

Multivector parse_multivector(std::string_view text, Signature sig, Field field) {
  Multivector u(sig, field);
  TermCursor cur{text};
  if (cur.done()) throw std::invalid_argument("multivector parse error: empty input");
  if (cur.peek() == '0') {
    ++cur.i;
    if (!cur.done()) cur.fail("unexpected text after 0");
    return u;
  }
  bool first = true;
  while (!cur.done()) {
    int sep_sign = 1;
    if (!first) {
      if (cur.eat('+'))
        sep_sign = 1;
      else if (cur.eat('-'))
        sep_sign = -1;
      else
        cur.fail("expected '+' or '-'");
    }
    first = false;
    Rational value = 1;
    bool have_value = false;
    if (cur.peek() == '-' || cur.peek() == '+' || std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      // Distinguish a numeric coefficient from the bare identity blade "1":
      // a coefficient is always followed by 'i', '*', or nothing numeric.
      std::size_t save = cur.i;
      value = cur.rational();
      have_value = true;
      if (cur.peek() == 'e') {  // it was the identity-blade digit of e.g. "1" in "1*.."? no: "1e1" invalid
        cur.i = save;
        cur.fail("missing '*' between coefficient and blade");
      }
    }
    bool imag = false;
    if (cur.peek() == 'i') {
      ++cur.i;
      imag = true;
    }
    std::uint32_t mask = 0;
    if (cur.eat('*')) {
      mask = cur.blade(sig);
    } else if (cur.peek() == 'e') {
      if (have_value) cur.fail("missing '*' between coefficient and blade");
      mask = cur.blade(sig);
    } else if (!have_value && !imag) {
      cur.fail("expected term");
    } else {
      mask = 0;  // bare coefficient or bare i: identity blade
    }
    value *= sep_sign;
    u.add_term(mask, imag ? CRat(Rational(0), value) : CRat(value));
  }
  return u;
}

}  // namespace cliff
