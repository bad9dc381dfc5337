#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "cliff/rational.hpp"

namespace cliff {

// Metric data for Cl(p,q): generators 1..p square to +1, p+1..p+q to -1.
struct Signature {
  int p = 0;
  int q = 0;

  Signature() = default;
  Signature(int pp, int qq) : p(pp), q(qq) {
    if (p < 0 || q < 0) throw std::invalid_argument("Signature: negative count");
    if (n() > 30) throw std::invalid_argument("Signature: n too large");
  }

  int n() const { return p + q; }
  int metric(int a) const {  // 1-based generator index
    if (a < 1 || a > n()) throw std::invalid_argument("Signature: generator index out of range");
    return a <= p ? 1 : -1;
  }
  friend bool operator==(const Signature&, const Signature&) = default;
  std::string str() const { return "Cl(" + std::to_string(p) + "," + std::to_string(q) + ")"; }
};

// Basis blades are bitmasks: bit a-1 set iff generator e^a is present.
inline int blade_grade(std::uint32_t mask) { return std::popcount(mask); }

struct BladeProduct {
  int sign;            // +1 or -1
  std::uint32_t mask;  // a XOR b
};

// Product of two basis blades.  The swap sign counts, for every generator of
// b, the generators of a with strictly larger index; each generator common to
// both masks then contracts with its metric sign.
inline BladeProduct blade_product(std::uint32_t a, std::uint32_t b, const Signature& sig) {
  if (sig.n() < 32 && ((a | b) >> sig.n()) != 0)
    throw std::invalid_argument("blade_product: blade does not fit signature");
  int swaps = 0;
  for (std::uint32_t rest = b; rest != 0; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    swaps += std::popcount(a >> (j + 1));
  }
  int sign = (swaps & 1) ? -1 : 1;
  for (std::uint32_t common = a & b; common != 0; common &= common - 1) {
    int j = std::countr_zero(common);
    sign *= sig.metric(j + 1);
  }
  return {sign, a ^ b};
}

enum class Field { Real, Complex };

enum class QuaternionType { T0 = 0, T1 = 1, T2 = 2, T3 = 3 };

// Which line of the U^dagger formula to evaluate: conjugation by e^{1..p}
// (default) or by e^{p+1..n}.  Both must agree; the q-based route exists as a
// cross-check.
enum class HermitianRoute { PBased, QBased };

namespace detail {

template <class C>
struct coeff_traits;

template <>
struct coeff_traits<CRat> {
  static CRat unit(int re, int im) { return CRat(Rational(re), Rational(im)); }
  static bool is_zero(const CRat& c) { return c.is_zero(); }
  static bool is_real(const CRat& c) { return c.im_zero(); }
  static CRat conj(const CRat& c) { return c.conj(); }
  static CRat scale(const CRat& c, int s) { return CRat(c.re * s, c.im * s); }
};

template <>
struct coeff_traits<std::complex<double>> {
  static std::complex<double> unit(int re, int im) { return {double(re), double(im)}; }
  static bool is_zero(const std::complex<double>& c) { return c.real() == 0.0 && c.imag() == 0.0; }
  static bool is_real(const std::complex<double>& c) { return c.imag() == 0.0; }
  static std::complex<double> conj(const std::complex<double>& c) { return std::conj(c); }
  static std::complex<double> scale(const std::complex<double>& c, int s) { return c * double(s); }
};

}  // namespace detail

// Sparse multivector over a declared scalar field.  Zero coefficients are
// never stored, so equality is structural.  Values are immutable in practice:
// every operation returns a fresh object.
template <class C>
class BasicMultivector {
 public:
  using Coeff = C;
  using Terms = std::map<std::uint32_t, C>;
  using CT = detail::coeff_traits<C>;

  BasicMultivector(Signature sig, Field field) : sig_(sig), field_(field) {}

  static BasicMultivector zero(Signature sig, Field f) { return BasicMultivector(sig, f); }
  static BasicMultivector unit(Signature sig, Field f) {
    return blade(sig, f, 0, CT::unit(1, 0));
  }
  static BasicMultivector scalar(Signature sig, Field f, C c) {
    return blade(sig, f, 0, std::move(c));
  }
  static BasicMultivector generator(Signature sig, Field f, int a) {
    if (a < 1 || a > sig.n()) throw std::invalid_argument("generator index out of range");
    return blade(sig, f, std::uint32_t(1) << (a - 1), CT::unit(1, 0));
  }
  static BasicMultivector blade(Signature sig, Field f, std::uint32_t mask, C c) {
    BasicMultivector u(sig, f);
    u.add_term(mask, std::move(c));
    return u;
  }

  const Signature& sig() const { return sig_; }
  Field field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  C coeff(std::uint32_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? CT::unit(0, 0) : it->second;
  }

  void add_term(std::uint32_t mask, C c) {
    if (sig_.n() < 32 && (mask >> sig_.n()) != 0)
      throw std::invalid_argument("multivector term does not fit signature");
    if (field_ == Field::Real && !CT::is_real(c))
      throw std::invalid_argument("imaginary coefficient in a real multivector");
    auto it = terms_.find(mask);
    if (it == terms_.end()) {
      if (!CT::is_zero(c)) terms_.emplace(mask, std::move(c));
      return;
    }
    it->second += c;
    if (CT::is_zero(it->second)) terms_.erase(it);
  }

  BasicMultivector complexified() const {
    BasicMultivector u(sig_, Field::Complex);
    u.terms_ = terms_;
    return u;
  }

  friend BasicMultivector operator+(const BasicMultivector& x, const BasicMultivector& y) {
    x.check_compatible(y);
    BasicMultivector r = x;
    for (const auto& [m, c] : y.terms_) r.add_term(m, c);
    return r;
  }
  friend BasicMultivector operator-(const BasicMultivector& x, const BasicMultivector& y) {
    x.check_compatible(y);
    BasicMultivector r = x;
    for (const auto& [m, c] : y.terms_) r.add_term(m, -c);
    return r;
  }
  friend BasicMultivector operator-(const BasicMultivector& x) {
    BasicMultivector r(x.sig_, x.field_);
    for (const auto& [m, c] : x.terms_) r.terms_.emplace(m, -c);
    return r;
  }
  friend BasicMultivector operator*(const C& s, const BasicMultivector& x) {
    BasicMultivector r(x.sig_, x.field_);
    for (const auto& [m, c] : x.terms_) r.add_term(m, s * c);
    return r;
  }

  // Geometric product: bilinear extension of the blade product.
  friend BasicMultivector operator*(const BasicMultivector& x, const BasicMultivector& y) {
    x.check_compatible(y);
    BasicMultivector r(x.sig_, x.field_);
    for (const auto& [ma, ca] : x.terms_)
      for (const auto& [mb, cb] : y.terms_) {
        BladeProduct bp = blade_product(ma, mb, x.sig_);
        r.add_term(bp.mask, CT::scale(ca * cb, bp.sign));
      }
    return r;
  }

  friend bool operator==(const BasicMultivector& x, const BasicMultivector& y) {
    return x.sig_ == y.sig_ && x.terms_ == y.terms_;
  }

  BasicMultivector grade_part(int k) const {
    if (k < 0 || k > sig_.n()) throw std::invalid_argument("grade_part: grade out of range");
    return filtered([k](int g) { return g == k; });
  }
  BasicMultivector even_part() const {
    return filtered([](int g) { return g % 2 == 0; });
  }
  BasicMultivector odd_part() const {
    return filtered([](int g) { return g % 2 == 1; });
  }
  BasicMultivector type_part(QuaternionType t) const {
    int tt = static_cast<int>(t);
    return filtered([tt](int g) { return g % 4 == tt; });
  }
  bool is_even() const {
    for (const auto& [m, c] : terms_)
      if (blade_grade(m) % 2 != 0) return false;
    return true;
  }
  bool is_real() const {
    for (const auto& [m, c] : terms_)
      if (!CT::is_real(c)) return false;
    return true;
  }

  // Grade involution: (-1)^k on grade k.
  BasicMultivector grade_involution() const {
    return signed_by_grade([](int k) { return k % 2 ? -1 : 1; });
  }
  // Reversion: (-1)^{k(k-1)/2} on grade k.
  BasicMultivector reversed() const {
    return signed_by_grade([](int k) { return (k / 2) % 2 ? -1 : 1; });
  }
  BasicMultivector conjugated() const {
    BasicMultivector r(sig_, field_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, CT::conj(c));
    return r;
  }
  // Pseudo-hermitian conjugation: complex conjugation followed by reversion.
  BasicMultivector pseudo_hermitian() const { return conjugated().reversed(); }

  // Hermitian conjugation, evaluated by conjugating the pseudo-hermitian (or
  // its grade involution) with the side blade.  The involution twist enters
  // for even p on the p-route but for odd q on the q-route.
  BasicMultivector hermitian(HermitianRoute route = HermitianRoute::PBased) const {
    int side_count = route == HermitianRoute::PBased ? sig_.p : sig_.q;
    std::uint32_t side_mask = route == HermitianRoute::PBased
                                  ? (side_count ? (std::uint32_t(1) << side_count) - 1 : 0)
                                  : (((std::uint32_t(1) << sig_.n()) - 1) ^
                                     ((std::uint32_t(1) << sig_.p) - 1));
    bool twist = route == HermitianRoute::PBased ? sig_.p % 2 == 0 : sig_.q % 2 == 1;
    BasicMultivector core = pseudo_hermitian();
    if (twist) core = core.grade_involution();
    if (side_mask == 0) return core;
    BasicMultivector side = blade(sig_, field_, side_mask, CT::unit(1, 0));
    int self = blade_product(side_mask, side_mask, sig_).sign;  // side * side = self * e
    BasicMultivector side_inv = blade(sig_, field_, side_mask, CT::unit(self, 0));
    return side_inv * core * side;
  }

 private:
  template <class Pred>
  BasicMultivector filtered(Pred keep) const {
    BasicMultivector r(sig_, field_);
    for (const auto& [m, c] : terms_)
      if (keep(blade_grade(m))) r.terms_.emplace(m, c);
    return r;
  }
  template <class SignFn>
  BasicMultivector signed_by_grade(SignFn sign_of) const {
    BasicMultivector r(sig_, field_);
    for (const auto& [m, c] : terms_)
      r.terms_.emplace(m, CT::scale(c, sign_of(blade_grade(m))));
    return r;
  }
  void check_compatible(const BasicMultivector& y) const {
    if (!(sig_ == y.sig_)) throw std::invalid_argument("multivector signature mismatch");
    if (field_ != y.field_) throw std::invalid_argument("multivector field mismatch");
  }

  Signature sig_;
  Field field_;
  Terms terms_;
};

using Multivector = BasicMultivector<CRat>;                  // exact coefficients
using MultivectorF = BasicMultivector<std::complex<double>>; // floating view

template <class C>
BasicMultivector<C> commutator(const BasicMultivector<C>& x, const BasicMultivector<C>& y) {
  return x * y - y * x;
}
template <class C>
BasicMultivector<C> anticommutator(const BasicMultivector<C>& x, const BasicMultivector<C>& y) {
  return x * y + y * x;
}

template <class C>
std::pair<BasicMultivector<C>, BasicMultivector<C>> parity_split(const BasicMultivector<C>& u) {
  return {u.even_part(), u.odd_part()};
}

// Text format: terms `coeff*e1e2` joined by `+`, identity blade `1`,
// imaginary unit `i`.  Exact round trip through parse_multivector.
std::string to_text(const Multivector& u);
Multivector parse_multivector(std::string_view text, Signature sig, Field field);

inline double max_abs_coeff(const MultivectorF& u) {
  double m = 0.0;
  for (const auto& [mask, c] : u.terms()) m = std::max(m, std::abs(c));
  return m;
}

inline MultivectorF to_float(const Multivector& u) {
  MultivectorF r(u.sig(), Field::Complex);
  for (const auto& [m, c] : u.terms())
    r.add_term(m, std::complex<double>(to_double(c.re), to_double(c.im)));
  return r;
}

}  // namespace cliff
