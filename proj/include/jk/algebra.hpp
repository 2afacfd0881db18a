#pragma once
// Simple euclidean Jordan algebras as dense structure-constant tables.
//
// Each algebra is stored over a rational basis that is orthogonal for
// <u|v> = tr(uv)/rho but not necessarily normalized: the Gram matrix is
// diagonal with rational entries. Exact arithmetic never meets sqrt(rho).
//   Gamma(k):  basis 1, e_1..e_k of the Clifford model; Gram = identity.
//   H_k(F):    E_ii (Gram 1/rho) then F_ij^mu = e_mu E_ij + conj(e_mu) E_ji
//              for i<j (Gram 2/rho), mu running over the units of F.

#include <array>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "jk/matrix.hpp"
#include "jk/scalar.hpp"

namespace jk {

/// Raised when an algebra specification violates the classification list.
class SpecificationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Family { SpinFactor, SymReal, SymComplex, SymQuaternion, SymOctonion };

struct AlgebraSpec {
  Family family = Family::SpinFactor;
  int k = 2;

  void validate() const {
    switch (family) {
      case Family::SpinFactor:
        if (k < 2) throw SpecificationError("Gamma(k) requires k >= 2 (Gamma(1) is not simple), got k=" + std::to_string(k));
        break;
      case Family::SymReal:
        if (!(k == 1 || k >= 3))
          throw SpecificationError("H_k(R) requires k = 1 or k >= 3 (H_2(R) is Gamma(2)), got k=" + std::to_string(k));
        break;
      case Family::SymComplex:
        if (k < 3) throw SpecificationError("H_k(C) requires k >= 3, got k=" + std::to_string(k));
        break;
      case Family::SymQuaternion:
        if (k < 3) throw SpecificationError("H_k(H) requires k >= 3, got k=" + std::to_string(k));
        break;
      case Family::SymOctonion:
        if (k != 3) throw SpecificationError("H_k(O) is a Jordan algebra with new structure only for k = 3, got k=" + std::to_string(k));
        break;
    }
  }

  int rank() const { return family == Family::SpinFactor ? 2 : k; }
  int degree() const {
    switch (family) {
      case Family::SpinFactor: return k - 1;
      case Family::SymReal: return 1;
      case Family::SymComplex: return 2;
      case Family::SymQuaternion: return 4;
      case Family::SymOctonion: return 8;
    }
    return 0;
  }
  int dim() const {
    int r = rank();
    return r + r * (r - 1) * degree() / 2;
  }

  /// Canonical spec string, e.g. "gamma:3" or "h:3:O".
  std::string str() const {
    switch (family) {
      case Family::SpinFactor: return "gamma:" + std::to_string(k);
      case Family::SymReal: return "h:" + std::to_string(k) + ":R";
      case Family::SymComplex: return "h:" + std::to_string(k) + ":C";
      case Family::SymQuaternion: return "h:" + std::to_string(k) + ":H";
      case Family::SymOctonion: return "h:" + std::to_string(k) + ":O";
    }
    return {};
  }

  /// Human-readable name, e.g. "Gamma(3)" or "H_3(O)".
  std::string display_name() const {
    if (family == Family::SpinFactor) return "Gamma(" + std::to_string(k) + ")";
    const char* f = family == Family::SymReal ? "R" : family == Family::SymComplex ? "C" : family == Family::SymQuaternion ? "H" : "O";
    return "H_" + std::to_string(k) + "(" + f + ")";
  }

  friend bool operator==(const AlgebraSpec& a, const AlgebraSpec& b) { return a.family == b.family && a.k == b.k; }
  friend bool operator!=(const AlgebraSpec& a, const AlgebraSpec& b) { return !(a == b); }
};

inline constexpr const char* kSpecGrammar = "gamma:k (k>=2) | h:k:R (k=1 or k>=3) | h:k:C (k>=3) | h:k:H (k>=3) | h:3:O";

/// Parses "gamma:k", "h:k:R", "h:k:C", "h:k:H", "h:3:O".
inline AlgebraSpec parse_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  auto bad = [&](const std::string& why) {
    return SpecificationError("bad algebra spec '" + text + "': " + why + "; grammar: " + kSpecGrammar);
  };
  auto parse_k = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw bad("k must be a positive integer");
    return std::stoi(s);
  };
  AlgebraSpec spec;
  if (parts.size() == 2 && parts[0] == "gamma") {
    spec.family = Family::SpinFactor;
    spec.k = parse_k(parts[1]);
  } else if (parts.size() == 3 && parts[0] == "h") {
    spec.k = parse_k(parts[1]);
    if (parts[2] == "R") spec.family = Family::SymReal;
    else if (parts[2] == "C") spec.family = Family::SymComplex;
    else if (parts[2] == "H") spec.family = Family::SymQuaternion;
    else if (parts[2] == "O") spec.family = Family::SymOctonion;
    else throw bad("unknown field '" + parts[2] + "'");
  } else {
    throw bad("unrecognized form");
  }
  spec.validate();
  return spec;
}

namespace detail {

/// Octonion units e_0..e_7 with the oriented Fano triples
/// (1,2,3),(1,4,5),(1,7,6),(2,4,6),(2,5,7),(3,4,7),(3,6,5): e_a e_b = e_c
/// cyclically, anticommuting units, e_i^2 = -1. The subsets {e_0}, {e_0,e_1}
/// and {e_0..e_3} are the reals, complexes and quaternions.
struct CayleyTable {
  std::array<std::array<int, 8>, 8> index{};
  std::array<std::array<int, 8>, 8> sign{};

  CayleyTable() {
    constexpr int lines[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};
    for (int i = 0; i < 8; ++i) {
      index[0][i] = i, sign[0][i] = 1;
      index[i][0] = i, sign[i][0] = 1;
    }
    for (int i = 1; i < 8; ++i) index[i][i] = 0, sign[i][i] = -1;
    for (const auto& l : lines) {
      for (int r = 0; r < 3; ++r) {
        int a = l[r], b = l[(r + 1) % 3], c = l[(r + 2) % 3];
        index[a][b] = c, sign[a][b] = 1;
        index[b][a] = c, sign[b][a] = -1;
      }
    }
  }
};

inline const CayleyTable& cayley() {
  static const CayleyTable t;
  return t;
}

using FNumber = std::vector<Rational>;  // coefficients over units e_0..e_{d-1}

inline FNumber f_mul(const FNumber& a, const FNumber& b) {
  const auto& t = cayley();
  FNumber out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (sgn(b[j]) == 0) continue;
      out[t.index[i][j]] += t.sign[i][j] * a[i] * b[j];
    }
  }
  return out;
}

inline FNumber f_conj(FNumber a) {
  for (std::size_t i = 1; i < a.size(); ++i) a[i] = -a[i];
  return a;
}

using FMatrix = std::vector<std::vector<FNumber>>;

inline FMatrix fm_mul(const FMatrix& a, const FMatrix& b, std::size_t d) {
  std::size_t k = a.size();
  FMatrix c(k, std::vector<FNumber>(k, FNumber(d, Rational(0))));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) {
        FNumber p = f_mul(a[i][l], b[l][j]);
        for (std::size_t m = 0; m < d; ++m) c[i][j][m] += p[m];
      }
  return c;
}

/// Clifford algebra Cl(R^k) with e_i^2 = +1; blades indexed by bitmask.
inline int blade_sign(unsigned a, unsigned b) {
  int swaps = 0;
  a >>= 1;
  while (a) {
    swaps += __builtin_popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

}  // namespace detail

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Nonzero structure constant: (b_a b_b) has coefficient `coef` on b_c.
struct StructureEntry {
  int a, b, c;
  Rational coef;
  double dcoef;
};

class Algebra {
 public:
  const AlgebraSpec& spec() const { return spec_; }
  int rank() const { return rho_; }
  int degree() const { return delta_; }
  int dim() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Diagonal Gram entries <b_a|b_a>.
  const std::vector<Rational>& gram() const { return gram_; }
  /// tr(x) = sum_a trace_coeffs[a] x^a.
  const std::vector<Rational>& trace_coeffs() const { return trace_; }
  const std::vector<Rational>& identity_coords() const { return identity_; }
  const std::vector<StructureEntry>& entries() const { return entries_; }
  /// Entries grouped by the first factor's basis index.
  const std::vector<std::vector<StructureEntry>>& entries_by_first() const { return by_first_; }

  /// Dense C[a][b][c].
  Rational structure_constant(int a, int b, int c) const {
    for (const auto& e : by_first_[a])
      if (e.b == b && e.c == c) return e.coef;
    return Rational(0);
  }

  static AlgebraPtr make(const AlgebraSpec& spec);

 private:
  Algebra() = default;
  void finalize(const std::vector<std::vector<std::vector<Rational>>>& products);

  AlgebraSpec spec_;
  int rho_ = 0, delta_ = 0, n_ = 0;
  std::vector<std::string> labels_;
  std::vector<Rational> gram_, trace_, identity_;
  std::vector<StructureEntry> entries_;
  std::vector<std::vector<StructureEntry>> by_first_;
};

inline AlgebraPtr make_algebra(const AlgebraSpec& spec) { return Algebra::make(spec); }
inline AlgebraPtr make_algebra(const std::string& spec) { return Algebra::make(parse_spec(spec)); }

inline AlgebraPtr Algebra::make(const AlgebraSpec& spec) {
  spec.validate();
  std::shared_ptr<Algebra> alg(new Algebra());
  alg->spec_ = spec;
  alg->rho_ = spec.rank();
  alg->delta_ = spec.degree();
  alg->n_ = spec.dim();
  const int n = alg->n_;
  std::vector<std::vector<std::vector<Rational>>> products(n, std::vector<std::vector<Rational>>(n));

  if (spec.family == Family::SpinFactor) {
    const int k = spec.k;
    // basis vector a <-> blade mask: 0 -> scalar, i -> e_i
    auto mask = [](int a) { return a == 0 ? 0u : (1u << (a - 1)); };
    alg->labels_.push_back("1");
    for (int i = 1; i <= k; ++i) alg->labels_.push_back("e" + std::to_string(i));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        // (b_a b_b + b_b b_a)/2 in the Clifford algebra, then read grade <= 1
        std::map<unsigned, Rational> acc;
        unsigned ma = mask(a), mb = mask(b);
        acc[ma ^ mb] += Rational(detail::blade_sign(ma, mb), 2);
        acc[ma ^ mb] += Rational(detail::blade_sign(mb, ma), 2);
        std::vector<Rational> coords(n, Rational(0));
        for (const auto& [m, c] : acc) {
          if (sgn(c) == 0) continue;
          if (m == 0) coords[0] += c;
          else if (__builtin_popcount(m) == 1) coords[__builtin_ctz(m) + 1] += c;
          else throw std::logic_error("spin factor product left the grade-1 subspace");
        }
        products[a][b] = coords;
      }
    alg->trace_.assign(n, Rational(0));
    alg->trace_[0] = 2;
    alg->identity_.assign(n, Rational(0));
    alg->identity_[0] = 1;
  } else {
    const int k = spec.k;
    const int d = alg->delta_;
    using detail::FMatrix;
    using detail::FNumber;
    auto zero_matrix = [&] { return FMatrix(k, std::vector<FNumber>(k, FNumber(d, Rational(0)))); };
    std::vector<FMatrix> basis;
    std::vector<std::pair<int, int>> positions;  // (i,j) and unit mu encoded below
    std::vector<int> units;
    static const char* unit_names[8] = {"", "i", "j", "k", "l", "il", "jl", "kl"};
    for (int i = 0; i < k; ++i) {
      FMatrix m = zero_matrix();
      m[i][i][0] = 1;
      basis.push_back(m);
      positions.emplace_back(i, i);
      units.push_back(0);
      alg->labels_.push_back("E" + std::to_string(i + 1) + std::to_string(i + 1));
    }
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        for (int mu = 0; mu < d; ++mu) {
          FMatrix m = zero_matrix();
          FNumber unit(d, Rational(0));
          unit[mu] = 1;
          m[i][j] = unit;
          m[j][i] = detail::f_conj(unit);
          basis.push_back(m);
          positions.emplace_back(i, j);
          units.push_back(mu);
          std::string lbl = "F" + std::to_string(i + 1) + std::to_string(j + 1);
          if (d > 1) lbl += std::string(".") + (mu == 0 ? "1" : unit_names[mu]);
          alg->labels_.push_back(lbl);
        }
    auto decompose = [&](const FMatrix& m) {
      std::vector<Rational> coords(n, Rational(0));
      for (int i = 0; i < k; ++i) {
        for (int mu = 1; mu < d; ++mu)
          if (sgn(m[i][i][mu]) != 0) throw std::logic_error("Hermitian product has non-real diagonal");
        coords[i] = m[i][i][0];
      }
      int idx = k;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
          FNumber c = detail::f_conj(m[j][i]);
          for (int mu = 0; mu < d; ++mu) {
            if (c[mu] != m[i][j][mu]) throw std::logic_error("Jordan product is not Hermitian");
            coords[idx++] = m[i][j][mu];
          }
        }
      return coords;
    };
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        FMatrix ab = detail::fm_mul(basis[a], basis[b], d);
        FMatrix ba = detail::fm_mul(basis[b], basis[a], d);
        FMatrix sym = zero_matrix();
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            for (int mu = 0; mu < d; ++mu) sym[i][j][mu] = (ab[i][j][mu] + ba[i][j][mu]) / 2;
        products[a][b] = decompose(sym);
        products[b][a] = products[a][b];
      }
    alg->trace_.assign(n, Rational(0));
    alg->identity_.assign(n, Rational(0));
    for (int i = 0; i < k; ++i) alg->trace_[i] = 1, alg->identity_[i] = 1;
  }
  alg->finalize(products);
  return alg;
}

inline void Algebra::finalize(const std::vector<std::vector<std::vector<Rational>>>& products) {
  by_first_.assign(n_, {});
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c) {
        const Rational& q = products[a][b][c];
        if (sgn(q) == 0) continue;
        StructureEntry e{a, b, c, q, q.get_d()};
        entries_.push_back(e);
        by_first_[a].push_back(e);
      }
  // Gram matrix from tr(b_a b_b)/rho; the construction basis must be orthogonal.
  gram_.assign(n_, Rational(0));
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      Rational t(0);
      for (int c = 0; c < n_; ++c) t += products[a][b][c] * trace_[c];
      t /= rho_;
      if (a == b) {
        if (sgn(t) <= 0) throw std::logic_error("trace form is not positive definite");
        gram_[a] = t;
      } else if (sgn(t) != 0) {
        throw std::logic_error("construction basis is not orthogonal");
      }
    }
}

// ---------------------------------------------------------------------------
// Elements

/// Raised when operands belong to different algebras.
class AlgebraMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Element of a Jordan algebra with coordinates in scalar type S
/// (Rational, CRational or double). Different scalar modes are different
/// types, so mixed-mode arithmetic does not compile.
template <class S>
struct Element {
  AlgebraPtr alg;
  std::vector<S> coords;

  Element() = default;
  Element(AlgebraPtr a, std::vector<S> c) : alg(std::move(a)), coords(std::move(c)) {
    if (!alg) throw std::invalid_argument("Element: null algebra");
    if (static_cast<int>(coords.size()) != alg->dim())
      throw std::invalid_argument("Element: coordinate vector has length " + std::to_string(coords.size()) +
                                  ", algebra dimension is " + std::to_string(alg->dim()));
  }

  static Element zero(const AlgebraPtr& a) { return Element(a, std::vector<S>(a->dim(), S(0))); }
  static Element identity(const AlgebraPtr& a) {
    std::vector<S> c;
    for (const auto& q : a->identity_coords()) c.push_back(from_rational<S>(q));
    return Element(a, c);
  }
  static Element basis(const AlgebraPtr& a, int i) {
    Element e = zero(a);
    e.coords.at(i) = S(1);
    return e;
  }

  int dim() const { return static_cast<int>(coords.size()); }
  const S& operator[](int i) const { return coords[i]; }
  S& operator[](int i) { return coords[i]; }

  bool is_zero() const {
    for (const auto& c : coords)
      if (!jk::is_zero(c)) return false;
    return true;
  }

  Element& operator+=(const Element& o) {
    check_same_algebra(o);
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
    return *this;
  }
  Element& operator-=(const Element& o) {
    check_same_algebra(o);
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
    return *this;
  }
  template <class T>
  Element& operator*=(const T& s) {
    for (auto& c : coords) c *= s;
    return *this;
  }
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  Element operator-() const {
    Element e(*this);
    for (auto& c : e.coords) c = -c;
    return e;
  }
  friend Element operator*(const S& s, Element a) { return a *= s; }
  friend Element operator*(Element a, const S& s) { return a *= s; }
  friend bool operator==(const Element& a, const Element& b) { return a.coords == b.coords; }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

  void check_same_algebra(const Element& o) const {
    if (alg != o.alg && (!alg || !o.alg || alg->spec() != o.alg->spec()))
      throw AlgebraMismatch("operands belong to different algebras");
  }
};

using QElement = Element<Rational>;
using CElement = Element<CRational>;
using FElement = Element<double>;

template <class T, class S>
Element<T> cast_element(const Element<S>& x) {
  std::vector<T> c;
  c.reserve(x.coords.size());
  for (const auto& v : x.coords) {
    if constexpr (std::is_same_v<T, double>)
      c.push_back(to_double(v));
    else
      c.push_back(T(v));
  }
  return Element<T>(x.alg, c);
}

template <class S>
inline void check_pair(const Element<S>& u, const Element<S>& v) {
  u.check_same_algebra(v);
}

/// Random element with small rational coordinates.
template <class Engine>
QElement random_element(const AlgebraPtr& alg, Engine& eng, long max_num = 4, long max_den = 3) {
  std::vector<Rational> c(alg->dim());
  for (auto& q : c) q = random_rational(eng, max_num, max_den);
  return QElement(alg, c);
}

template <class Engine>
FElement random_float_element(const AlgebraPtr& alg, Engine& eng) {
  std::vector<double> c(alg->dim());
  for (auto& q : c) q = uniform_real(eng, -1.0, 1.0);
  return FElement(alg, c);
}

namespace detail {
template <class S>
inline S times_coef(const StructureEntry& e, const S& value) {
  if constexpr (std::is_same_v<S, double>) {
    return e.dcoef * value;
  } else {
    S out(value);
    out *= e.coef;
    return out;
  }
}
}  // namespace detail

/// Jordan product uv.
template <class S>
Element<S> product(const Element<S>& u, const Element<S>& v) {
  check_pair(u, v);
  Element<S> out = Element<S>::zero(u.alg);
  for (int a = 0; a < u.dim(); ++a) {
    if (is_zero(u.coords[a])) continue;
    for (const auto& e : u.alg->entries_by_first()[a]) {
      if (is_zero(v.coords[e.b])) continue;
      S t = u.coords[a] * v.coords[e.b];
      out.coords[e.c] += detail::times_coef(e, t);
    }
  }
  return out;
}

template <class S>
Element<S> power(const Element<S>& x, int m) {
  if (m < 0) throw std::invalid_argument("power: negative exponent");
  Element<S> out = Element<S>::identity(x.alg);
  for (int i = 0; i < m; ++i) out = product(x, out);
  return out;
}

/// Matrix of L_u in the algebra basis: (L_u)(c, b) = sum_a C[a][b][c] u^a.
template <class S>
Matrix<S> mult_matrix(const Element<S>& u) {
  const int n = u.dim();
  Matrix<S> m(n, n);
  for (int a = 0; a < n; ++a) {
    if (is_zero(u.coords[a])) continue;
    for (const auto& e : u.alg->entries_by_first()[a]) m(e.c, e.b) += detail::times_coef(e, u.coords[a]);
  }
  return m;
}

template <class S>
Element<S> apply(const Matrix<S>& m, const Element<S>& v) {
  return Element<S>(v.alg, m.apply(v.coords));
}

/// S_uv = [L_u, L_v] + L_{uv}.
template <class S>
Matrix<S> smul_matrix(const Element<S>& u, const Element<S>& v) {
  check_pair(u, v);
  Matrix<S> lu = mult_matrix(u), lv = mult_matrix(v);
  return commutator(lu, lv) + mult_matrix(product(u, v));
}

/// Jordan triple product {uvw} = u(vw) - v(uw) + (uv)w.
template <class S>
Element<S> triple(const Element<S>& u, const Element<S>& v, const Element<S>& w) {
  check_pair(u, v);
  check_pair(u, w);
  return product(u, product(v, w)) - product(v, product(u, w)) + product(product(u, v), w);
}

template <class S>
S trace(const Element<S>& u) {
  S t(0);
  const auto& tc = u.alg->trace_coeffs();
  for (int a = 0; a < u.dim(); ++a)
    if (sgn(tc[a]) != 0) t += from_rational<S>(tc[a]) * u.coords[a];
  return t;
}

/// <u|v> = tr(uv)/rho (bilinear; no conjugation for complex scalars).
template <class S>
S inner(const Element<S>& u, const Element<S>& v) {
  check_pair(u, v);
  S t(0);
  const auto& g = u.alg->gram();
  for (int a = 0; a < u.dim(); ++a) {
    S p = u.coords[a] * v.coords[a];
    t += from_rational<S>(g[a]) * p;
  }
  return t;
}

/// P(x) = 2 L_x^2 - L_{x^2}.
template <class S>
Matrix<S> quad_rep(const Element<S>& x) {
  Matrix<S> lx = mult_matrix(x);
  Matrix<S> out = lx * lx;
  out.scale(S(2));
  return out - mult_matrix(product(x, x));
}

/// Adjoint with respect to <.|.>: (A^dagger)_{ij} = A_{ji} g_j / g_i.
template <class S>
Matrix<S> adjoint(const Matrix<S>& m, const Algebra& alg) {
  const int n = alg.dim();
  Matrix<S> t(n, n);
  const auto& g = alg.gram();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (jk::is_zero(m(j, i))) continue;
      Rational ratio = g[j] / g[i];
      S v = m(j, i);
      if constexpr (std::is_same_v<S, double>)
        v *= ratio.get_d();
      else
        v *= ratio;
      t(i, j) = v;
    }
  return t;
}

}  // namespace jk
