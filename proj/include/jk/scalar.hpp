#pragma once
// Scalar backends: exact rationals (GMP), complex rationals as pairs of
// rationals, and IEEE doubles.

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace jk {

using Rational = mpq_class;

/// Exact complex number with rational real and imaginary parts.
struct CRational {
  Rational re{0};
  Rational im{0};

  CRational() = default;
  CRational(const Rational& r) : re(r), im(0) {}  // NOLINT(implicit)
  CRational(const Rational& r, const Rational& i) : re(r), im(i) {}
  CRational(long r) : re(r), im(0) {}  // NOLINT(implicit)

  static CRational i() { return {Rational(0), Rational(1)}; }

  CRational& operator+=(const CRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CRational& operator-=(const CRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  CRational& operator*=(const CRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  CRational& operator*=(const Rational& o) {
    re *= o;
    im *= o;
    return *this;
  }
  CRational& operator/=(const CRational& o) {
    Rational d = o.re * o.re + o.im * o.im;
    if (d == 0) throw std::domain_error("CRational: division by zero");
    Rational r = (re * o.re + im * o.im) / d;
    Rational i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  friend CRational operator+(CRational a, const CRational& b) { return a += b; }
  friend CRational operator-(CRational a, const CRational& b) { return a -= b; }
  friend CRational operator*(CRational a, const CRational& b) { return a *= b; }
  friend CRational operator*(CRational a, const Rational& b) { return a *= b; }
  friend CRational operator*(const Rational& b, CRational a) { return a *= b; }
  friend CRational operator/(CRational a, const CRational& b) { return a /= b; }
  CRational operator-() const { return {Rational(-re), Rational(-im)}; }
  friend bool operator==(const CRational& a, const CRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const CRational& a, const CRational& b) { return !(a == b); }

  CRational conj() const { return {re, Rational(-im)}; }

  friend std::ostream& operator<<(std::ostream& os, const CRational& z) {
    if (z.im == 0) return os << z.re;
    if (z.re == 0) return os << z.im << "i";
    return os << "(" << z.re << (z.im < 0 ? "" : "+") << z.im << "i)";
  }
};

/// n/d in canonical form (the two-argument mpq_class constructor does not reduce).
inline Rational ratio(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

template <class S>
inline constexpr bool is_exact_v =
    std::is_same_v<S, Rational> || std::is_same_v<S, CRational>;

/// Conversion from an exact rational into scalar type S.
template <class S>
S from_rational(const Rational& q) {
  if constexpr (std::is_same_v<S, double>) {
    return q.get_d();
  } else {
    return S(q);
  }
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const CRational& z) { return sgn(z.re) == 0 && sgn(z.im) == 0; }
inline bool is_zero(double d) { return d == 0.0; }

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double d) { return d; }

template <class S>
std::string to_string(const S& s) {
  std::ostringstream os;
  os.precision(17);
  os << s;
  return os.str();
}

/// Parses "3", "-7/3", "0.25", "1e-3" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
  }
  // decimal with optional exponent
  std::size_t epos = s.find_first_of("eE");
  long exponent = 0;
  if (epos != std::string::npos) {
    exponent = std::stol(s.substr(epos + 1));
    s = s.substr(0, epos);
  }
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  std::size_t dot = s.find('.');
  std::string digits = s;
  if (dot != std::string::npos) {
    digits = s.substr(0, dot) + s.substr(dot + 1);
    exponent -= static_cast<long>(s.size() - dot - 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad rational literal: " + text);
  mpz_class num(digits, 10);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent >= 0 ? Rational(num * ten_pow) : Rational(num, ten_pow);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

/// Deterministic 64-bit generator helpers; the mapping from engine output to
/// values is fixed here so seeds reproduce across standard libraries.
template <class Engine>
long uniform_int(Engine& eng, long lo, long hi) {
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(static_cast<std::uint64_t>(eng()) % span);
}

template <class Engine>
double uniform_real(Engine& eng, double lo, double hi) {
  double u = static_cast<double>(static_cast<std::uint64_t>(eng()) >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

template <class Engine>
Rational random_rational(Engine& eng, long max_num = 5, long max_den = 3) {
  long num = uniform_int(eng, -max_num, max_num);
  long den = uniform_int(eng, 1, max_den);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace jk
