#pragma once
// Sparse multivariate polynomials with exact coefficients, stored in
// graded-lex canonical order with no zero coefficients.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jk/scalar.hpp"

namespace jk {

using Exponent = std::uint8_t;
using Monomial = std::vector<Exponent>;

inline unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

/// Graded lexicographic order: total degree first, then lexicographic.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

template <class C>
class Poly {
 public:
  using Terms = std::map<Monomial, C, GradedLex>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const C& c) {
    Poly p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t i, const C& c = C(1)) {
    Monomial m(nvars, 0);
    m.at(i) = 1;
    Poly p(nvars);
    p.add_term(m, c);
    return p;
  }
  static Poly monomial(const Monomial& m, const C& c = C(1)) {
    Poly p(m.size());
    p.add_term(m, c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const C& c) {
    if (m.size() != nvars_) throw std::invalid_argument("Poly: monomial arity mismatch");
    if (jk::is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (jk::is_zero(it->second)) terms_.erase(it);
    }
  }

  C coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }

  int degree() const { return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.rbegin()->first)); }

  Poly homogeneous_part(unsigned d) const {
    Poly out(nvars_);
    for (const auto& [m, c] : terms_)
      if (total_degree(m) == d) out.terms_.emplace(m, c);
    return out;
  }

  Poly& operator+=(const Poly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  template <class T>
  Poly& scale(const T& s) {
    if (jk::is_zero(C(s))) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly p(*this);
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    Poly out(a.nvars_);
    Monomial m(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.nvars_; ++i) {
          unsigned e = unsigned(ma[i]) + unsigned(mb[i]);
          if (e > 255) throw std::overflow_error("Poly: exponent overflow");
          m[i] = static_cast<Exponent>(e);
        }
        out.add_term(m, ca * cb);
      }
    }
    return out;
  }
  template <class T>
  friend Poly operator*(Poly a, const T& s) requires(!std::is_same_v<T, Poly>) {
    return a.scale(s);
  }

  Poly derivative(std::size_t var) const {
    Poly out(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial d = m;
      d[var] -= 1;
      C coeff = c;
      coeff *= C(Rational(m[var]));
      out.add_term(d, coeff);
    }
    return out;
  }

  Poly pow(unsigned k) const {
    Poly out = constant(nvars_, C(1));
    for (unsigned i = 0; i < k; ++i) out = out * (*this);
    return out;
  }

  /// Evaluates at a point; D is the value type of the point.
  template <class D>
  D evaluate(const std::vector<D>& point) const {
    if (point.size() != nvars_) throw std::invalid_argument("Poly: point arity mismatch");
    unsigned maxdeg = 0;
    for (const auto& [m, c] : terms_)
      for (auto e : m) maxdeg = std::max<unsigned>(maxdeg, e);
    std::vector<std::vector<D>> powers(nvars_, std::vector<D>(maxdeg + 1, D(1)));
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned e = 1; e <= maxdeg; ++e) powers[i][e] = powers[i][e - 1] * point[i];
    D acc(0);
    for (const auto& [m, c] : terms_) {
      D t = convert<D>(c);
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m[i]) t *= powers[i][m[i]];
      acc += t;
    }
    return acc;
  }

  /// Exact division by a polynomial of total degree 1 (no constant term
  /// required). Returns nullopt when the division leaves a remainder.
  std::optional<Poly> divide_by_linear(const Poly& linear) const {
    check(linear);
    std::size_t pivot = nvars_;
    C pivot_coeff(0);
    for (const auto& [m, c] : linear.terms_) {
      if (total_degree(m) > 1) throw std::invalid_argument("divide_by_linear: divisor is not linear");
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m[i] == 1) {
          pivot = i;
          pivot_coeff = c;
          break;
        }
      if (pivot != nvars_) break;
    }
    if (pivot == nvars_) throw std::invalid_argument("divide_by_linear: divisor has no variable");
    // divisor = pivot_coeff * x_pivot + rest
    Poly rest = linear;
    {
      Monomial m(nvars_, 0);
      m[pivot] = 1;
      rest.terms_.erase(m);
    }
    // group f by powers of x_pivot
    unsigned top = 0;
    for (const auto& [m, c] : terms_) top = std::max<unsigned>(top, m[pivot]);
    std::vector<Poly> slices(top + 1, Poly(nvars_));
    for (const auto& [m, c] : terms_) {
      Monomial r = m;
      r[pivot] = 0;
      slices[m[pivot]].terms_.emplace(r, c);
    }
    if (is_zero()) return Poly(nvars_);
    if (top == 0) {
      return std::nullopt;  // nonzero and independent of the pivot variable
    }
    // f_d = c q_{d-1} + rest q_d, top down
    std::vector<Poly> q(top, Poly(nvars_));
    C inv = C(1);
    inv /= pivot_coeff;
    q[top - 1] = slices[top] * inv;
    for (unsigned d = top - 1; d >= 1; --d) {
      q[d - 1] = (slices[d] - rest * q[d]) * inv;
    }
    Poly remainder = slices[0] - rest * q[0];
    if (!remainder.is_zero()) return std::nullopt;
    Poly out(nvars_);
    Monomial xp(nvars_, 0);
    for (unsigned d = 0; d < top; ++d) {
      xp[pivot] = static_cast<Exponent>(d);
      out += q[d] * monomial(xp);
    }
    return out;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Poly& p) {
    if (p.terms_.empty()) return os << "0";
    bool first = true;
    for (const auto& [m, c] : p.terms_) {
      if (!first) os << " + ";
      first = false;
      os << c;
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) os << "*v" << i << (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
    }
    return os;
  }

 private:
  template <class D>
  static D convert(const C& c) {
    if constexpr (std::is_same_v<D, double> && std::is_same_v<C, Rational>) {
      return c.get_d();
    } else {
      return D(c);
    }
  }

  void check(const Poly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("Poly: variable count mismatch");
  }

  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Lifts rational coefficients to complex rationals.
inline Poly<CRational> complexify(const Poly<Rational>& p) {
  Poly<CRational> out(p.nvars());
  for (const auto& [m, c] : p.terms()) out.add_term(m, CRational(c));
  return out;
}

}  // namespace jk
