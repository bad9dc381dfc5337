#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace cliff {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_text(const Rational& r);

// Exact scalar a + b*sqrt(2) with rational a, b.  Nonzero elements are
// invertible because sqrt(2) is irrational: a^2 - 2 b^2 = 0 forces a = b = 0.
struct QR2 {
  Rational a;  // rational part
  Rational b;  // coefficient of sqrt(2)

  QR2() : a(0), b(0) {}
  QR2(int v) : a(v), b(0) {}  // NOLINT: implicit on purpose
  QR2(Rational ra) : a(std::move(ra)), b(0) {}
  QR2(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

  static QR2 sqrt2(Rational coeff = 1) { return QR2(0, std::move(coeff)); }

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }

  friend QR2 operator+(const QR2& x, const QR2& y) { return {x.a + y.a, x.b + y.b}; }
  friend QR2 operator-(const QR2& x, const QR2& y) { return {x.a - y.a, x.b - y.b}; }
  friend QR2 operator-(const QR2& x) { return {-x.a, -x.b}; }
  friend QR2 operator*(const QR2& x, const QR2& y) {
    return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  QR2& operator+=(const QR2& y) { a += y.a; b += y.b; return *this; }
  QR2& operator-=(const QR2& y) { a -= y.a; b -= y.b; return *this; }
  QR2& operator*=(const QR2& y) { *this = *this * y; return *this; }

  QR2 inverse() const {
    Rational norm = a * a - 2 * b * b;
    if (norm == 0) throw std::domain_error("QR2: inverse of zero");
    return {a / norm, -b / norm};
  }
  friend QR2 operator/(const QR2& x, const QR2& y) { return x * y.inverse(); }

  friend bool operator==(const QR2& x, const QR2& y) = default;

  // Sign of the real value a + b*sqrt(2).
  int sign() const {
    int sa = a == 0 ? 0 : (a > 0 ? 1 : -1);
    int sb = b == 0 ? 0 : (b > 0 ? 1 : -1);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare |a|^2 against 2|b|^2.
    Rational d = a * a - 2 * b * b;
    if (d == 0) return 0;  // unreachable for rational a, b not both zero
    return d > 0 ? sa : sb;
  }
};

inline double to_double(const QR2& x) {
  return to_double(x.a) + to_double(x.b) * std::sqrt(2.0);
}

std::string to_text(const QR2& x);

// Ring complexification T + i T, used for complex rational coefficients and
// complexified matrix entries.
template <class T>
struct Cx {
  T re{};
  T im{};

  Cx() = default;
  Cx(T r) : re(std::move(r)) {}  // NOLINT: implicit on purpose
  Cx(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re_zero() && im_zero(); }
  bool re_zero() const { return cx_zero(re); }
  bool im_zero() const { return cx_zero(im); }

  static bool cx_zero(const T& v) {
    if constexpr (requires { v.is_zero(); }) return v.is_zero();
    else return v == 0;
  }

  Cx conj() const { return {re, -im}; }

  friend Cx operator+(const Cx& x, const Cx& y) { return {x.re + y.re, x.im + y.im}; }
  friend Cx operator-(const Cx& x, const Cx& y) { return {x.re - y.re, x.im - y.im}; }
  friend Cx operator-(const Cx& x) { return {-x.re, -x.im}; }
  friend Cx operator*(const Cx& x, const Cx& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  Cx& operator+=(const Cx& y) { re += y.re; im += y.im; return *this; }
  Cx& operator-=(const Cx& y) { *this = *this - y; return *this; }
  Cx& operator*=(const Cx& y) { *this = *this * y; return *this; }

  Cx inverse() const {
    T norm = re * re + im * im;  // zero only when re = im = 0 (real subfield)
    if (cx_zero(norm)) throw std::domain_error("Cx: inverse of zero");
    if constexpr (requires { norm.inverse(); }) {
      T inv = norm.inverse();
      return {re * inv, (-im) * inv};
    } else {
      return {re / norm, -im / norm};
    }
  }
  friend Cx operator/(const Cx& x, const Cx& y) { return x * y.inverse(); }

  friend bool operator==(const Cx& x, const Cx& y) = default;
};

using CRat = Cx<Rational>;   // exact complex rational coefficient
using CQR2 = Cx<QR2>;        // complexified QR2 matrix entry

std::string to_text(const CRat& c);

}  // namespace cliff
