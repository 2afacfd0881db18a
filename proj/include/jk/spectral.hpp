#pragma once
// Spectral data of Jordan elements: power traces, elementary symmetric
// functions of the eigenvalues (Newton identities), the staircase function
// tau_k, determinants, Jordan frames and bases, principal minors and random
// automorphisms.
//
// Normalization: c_k(x) is the k-th elementary symmetric function of the
// eigenvalues, so c_1 = tr x, c_2 = ((tr x)^2 - tr x^2)/2 and det = c_rho with
// det(e) = 1.

#include <unsupported/Eigen/MatrixFunctions>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "jk/algebra.hpp"
#include "jk/poly.hpp"

namespace jk {

template <class S>
S power_trace(const Element<S>& x, int m) {
  return trace(power(x, m));
}

/// p_1..p_kmax in one pass.
template <class S>
std::vector<S> power_traces(const Element<S>& x, int kmax) {
  std::vector<S> p(kmax + 1, S(0));
  p[0] = from_rational<S>(Rational(x.alg->rank()));
  Element<S> y = x;
  for (int m = 1; m <= kmax; ++m) {
    p[m] = trace(y);
    if (m < kmax) y = product(x, y);
  }
  return p;
}

/// Newton identities: k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i.
template <class S>
std::vector<S> newton_elementary(const std::vector<S>& p, int kmax) {
  std::vector<S> e(kmax + 1, S(0));
  e[0] = S(1);
  for (int k = 1; k <= kmax; ++k) {
    S acc(0);
    for (int i = 1; i <= k; ++i) {
      S t = e[k - i] * p[i];
      if (i % 2) acc += t;
      else acc -= t;
    }
    acc *= from_rational<S>(Rational(1, k));
    e[k] = acc;
  }
  return e;
}

/// c_0..c_rho.
template <class S>
std::vector<S> sym_c_all(const Element<S>& x) {
  int rho = x.alg->rank();
  return newton_elementary(power_traces(x, rho), rho);
}

template <class S>
S sym_c(const Element<S>& x, int k) {
  if (k < 1 || k > x.alg->rank())
    throw std::out_of_range("sym_c: k=" + std::to_string(k) + " outside 1.." + std::to_string(x.alg->rank()));
  return sym_c_all(x)[k];
}

template <class S>
S det(const Element<S>& x) {
  return sym_c_all(x)[x.alg->rank()];
}

namespace detail {

/// Determinant by Gaussian elimination over a field.
template <class S>
S field_det(std::vector<std::vector<S>> a) {
  const std::size_t n = a.size();
  S d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    if constexpr (std::is_same_v<S, double>) {
      double best = 0;
      for (std::size_t r = c; r < n; ++r)
        if (std::abs(a[r][c]) > best) best = std::abs(a[r][c]), piv = r;
    } else {
      for (std::size_t r = c; r < n; ++r)
        if (!is_zero(a[r][c])) {
          piv = r;
          break;
        }
    }
    if (piv == n || is_zero(a[piv][c])) return S(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(a[r][c])) continue;
      S f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return d;
}

/// Laplace expansion for ring entries (used with polynomial entries).
template <class T>
T laplace_det(const std::vector<std::vector<T>>& a, const T& one, const T& zero) {
  const std::size_t n = a.size();
  if (n == 0) return one;
  if (n == 1) return a[0][0];
  T acc = zero;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<T>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<T> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(a[r][c]);
      minor.push_back(row);
    }
    T term = a[0][j] * laplace_det(minor, one, zero);
    if (j % 2) acc = acc - term;
    else acc = acc + term;
  }
  return acc;
}

/// Jacobi-Trudi matrix for the staircase partition (k-1,...,1):
/// entry (i,j) = e_{k-2i+j} for i,j = 1..k-1.
template <class T>
std::vector<std::vector<T>> staircase_matrix(const std::vector<T>& e, int k, const T& zero) {
  std::vector<std::vector<T>> m(k - 1, std::vector<T>(k - 1, zero));
  for (int i = 1; i <= k - 1; ++i)
    for (int j = 1; j <= k - 1; ++j) {
      int idx = k - 2 * i + j;
      if (idx >= 0 && idx < static_cast<int>(e.size())) m[i - 1][j - 1] = e[idx];
    }
  return m;
}

}  // namespace detail

/// tau_k as the staircase Schur function in the eigenvalues. On a rank-k
/// element with nonzero eigenvalues a_1..a_k it equals prod_{i<j<=k}(a_i+a_j).
template <class S>
S sym_tau(const Element<S>& x, int k) {
  int rho = x.alg->rank();
  if (k < 1 || k > rho) throw std::out_of_range("sym_tau: k=" + std::to_string(k) + " outside 1.." + std::to_string(rho));
  if (k == 1) return S(1);
  auto e = sym_c_all(x);
  return detail::field_det(detail::staircase_matrix(e, k, S(0)));
}

/// prod_{i<j<=k}(a_i + a_j) over the first k entries of a.
inline double tau_from_eigenvalues(const std::vector<double>& a, int k) {
  double t = 1;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) t *= a[i] + a[j];
  return t;
}

/// Elementary symmetric e_k of a list.
inline double elementary_from_eigenvalues(const std::vector<double>& a, int k) {
  std::vector<double> e(k + 1, 0.0);
  e[0] = 1;
  for (double v : a)
    for (int j = k; j >= 1; --j) e[j] += e[j - 1] * v;
  return e[k];
}

/// Roots of t^rho - c_1 t^{rho-1} + c_2 t^{rho-2} - ..., sorted descending.
inline std::vector<double> roots_from_elementary(const std::vector<double>& c) {
  const int rho = static_cast<int>(c.size()) - 1;
  std::vector<double> r;
  if (rho == 1) {
    r = {c[1]};
  } else if (rho == 2) {
    double disc = std::max(0.0, c[1] * c[1] - 4 * c[2]);
    double s = std::sqrt(disc);
    r = {(c[1] + s) / 2, (c[1] - s) / 2};
  } else if (rho == 3) {
    // t^3 - a t^2 + b t - d; depressed with t = s + a/3
    double a = c[1], b = c[2], d = c[3];
    double shift = a / 3;
    double p = b - a * a / 3;
    double q = -(2 * a * a * a / 27 - a * b / 3 + d);
    // s^3 + p s + q = 0 with three real roots
    if (std::abs(p) < 1e-300) {
      double s = std::cbrt(-q);
      r = {s + shift, s + shift, s + shift};
    } else {
      double m = 2 * std::sqrt(std::max(0.0, -p / 3));
      double arg = m == 0 ? 0 : 3 * q / (p * m);
      arg = std::clamp(arg, -1.0, 1.0);
      double th = std::acos(arg) / 3;
      for (int j = 0; j < 3; ++j) r.push_back(m * std::cos(th - 2 * M_PI * j / 3) + shift);
    }
  } else {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(rho, rho);
    for (int i = 1; i < rho; ++i) comp(i, i - 1) = 1;
    for (int i = 0; i < rho; ++i) {
      // coefficient of t^i in the monic polynomial is (-1)^{rho-i} c_{rho-i}
      double coeff = ((rho - i) % 2 ? -1.0 : 1.0) * c[rho - i];
      comp(i, rho - 1) = -coeff;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < rho; ++i) r.push_back(es.eigenvalues()[i].real());
  }
  std::sort(r.begin(), r.end(), std::greater<>());
  return r;
}

/// Jordan eigenvalues, descending, via the characteristic polynomial.
template <class S>
std::vector<double> eigenvalues(const Element<S>& x) {
  auto c = sym_c_all(x);
  std::vector<double> cd;
  for (const auto& v : c) cd.push_back(to_double(v));
  return roots_from_elementary(cd);
}

// ---------------------------------------------------------------------------
// Symbolic forms

/// Polynomials in the n coordinates of x (construction basis).
using CoordPoly = Poly<Rational>;

/// Coordinates of x^m as polynomials, m = 0..mmax.
inline std::vector<std::vector<CoordPoly>> symbolic_powers(const Algebra& alg, int mmax) {
  const int n = alg.dim();
  std::vector<std::vector<CoordPoly>> pw(mmax + 1, std::vector<CoordPoly>(n, CoordPoly(n)));
  for (int a = 0; a < n; ++a) pw[0][a] = CoordPoly::constant(n, alg.identity_coords()[a]);
  if (mmax >= 1)
    for (int a = 0; a < n; ++a) pw[1][a] = CoordPoly::variable(n, a);
  for (int m = 2; m <= mmax; ++m) {
    for (const auto& e : alg.entries()) {
      // x^m = x * x^{m-1}
      CoordPoly t = CoordPoly::variable(n, e.a) * pw[m - 1][e.b];
      pw[m][e.c] += t.scale(e.coef);
    }
  }
  return pw;
}

inline CoordPoly symbolic_trace(const Algebra& alg, const std::vector<CoordPoly>& coords) {
  CoordPoly t(alg.dim());
  for (int a = 0; a < alg.dim(); ++a)
    if (sgn(alg.trace_coeffs()[a]) != 0) t += CoordPoly(coords[a]).scale(alg.trace_coeffs()[a]);
  return t;
}

/// c_0..c_rho as polynomials.
inline std::vector<CoordPoly> symbolic_c(const Algebra& alg) {
  const int rho = alg.rank(), n = alg.dim();
  auto pw = symbolic_powers(alg, rho);
  std::vector<CoordPoly> p;
  for (int m = 0; m <= rho; ++m) p.push_back(symbolic_trace(alg, pw[m]));
  std::vector<CoordPoly> e(rho + 1, CoordPoly(n));
  e[0] = CoordPoly::constant(n, Rational(1));
  for (int k = 1; k <= rho; ++k) {
    CoordPoly acc(n);
    for (int i = 1; i <= k; ++i) {
      CoordPoly t = e[k - i] * p[i];
      if (i % 2) acc += t;
      else acc -= t;
    }
    e[k] = acc.scale(Rational(1, k));
  }
  return e;
}

inline CoordPoly symbolic_tau(const Algebra& alg, int k) {
  const int n = alg.dim();
  if (k < 1 || k > alg.rank()) throw std::out_of_range("symbolic_tau: k out of range");
  if (k == 1) return CoordPoly::constant(n, Rational(1));
  auto e = symbolic_c(alg);
  return detail::laplace_det(detail::staircase_matrix(e, k, CoordPoly(n)), CoordPoly::constant(n, Rational(1)),
                             CoordPoly(n));
}

// ---------------------------------------------------------------------------
// Frames, Jordan bases, minors

struct JordanFrame {
  std::vector<QElement> idempotents;

  int size() const { return static_cast<int>(idempotents.size()); }
  const QElement& operator[](int i) const { return idempotents[i]; }

  /// e[i] = e_11 + ... + e_ii.
  QElement partial_identity(int i) const {
    QElement c = QElement::zero(idempotents.at(0).alg);
    for (int j = 0; j < i; ++j) c += idempotents[j];
    return c;
  }
};

inline JordanFrame jordan_frame(const AlgebraPtr& alg) {
  JordanFrame f;
  if (alg->spec().family == Family::SpinFactor) {
    QElement a = QElement::zero(alg), b = QElement::zero(alg);
    a[0] = Rational(1, 2), a[1] = Rational(1, 2);
    b[0] = Rational(1, 2), b[1] = Rational(-1, 2);
    f.idempotents = {a, b};
  } else {
    for (int i = 0; i < alg->rank(); ++i) f.idempotents.push_back(QElement::basis(alg, i));
  }
  return f;
}

/// Jordan basis vector of V_ij (i <= j, 0-based). `exact` is a rational
/// multiple of `unit`: unit = exact * scale, with <unit|unit> = 1/rho.
struct JordanBasisVector {
  int i, j;
  std::string label;
  QElement exact;
  double scale;
  FElement unit;
};

inline std::vector<JordanBasisVector> jordan_basis(const AlgebraPtr& alg, const JordanFrame& frame) {
  std::vector<JordanBasisVector> out;
  const int rho = alg->rank();
  const double s2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < rho; ++i) {
    FElement u = cast_element<double>(frame[i]);
    out.push_back({i, i, "e" + std::to_string(i + 1) + std::to_string(i + 1), frame[i], 1.0, u});
  }
  if (alg->spec().family == Family::SpinFactor) {
    for (int a = 2; a < alg->dim(); ++a) {
      QElement v = QElement::basis(alg, a);
      FElement u = cast_element<double>(v);
      u *= s2;
      out.push_back({0, 1, "e12." + std::to_string(a - 1), v, s2, u});
    }
  } else {
    for (int a = rho; a < alg->dim(); ++a) {
      // labels look like F12 or F12.i; indices are single digits for k <= 9
      const std::string& l = alg->labels()[a];
      int i = l[1] - '1', j = l[2] - '1';
      QElement v = QElement::basis(alg, a);
      FElement u = cast_element<double>(v);
      u *= s2;
      out.push_back({i, j, "e" + l.substr(1), v, s2, u});
    }
  }
  return out;
}

/// Projection onto the 1-eigenspace of L_c for an idempotent c: L_c(2L_c - I).
template <class S>
Matrix<S> peirce_one_projector(const Element<S>& c) {
  Matrix<S> lc = mult_matrix(c);
  Matrix<S> t = lc;
  t.scale(S(2));
  t -= Matrix<S>::identity(lc.rows());
  return lc * t;
}

/// Delta_i(x): determinant inside V_i = V(e[i], 1) of the projection of x.
template <class S>
S principal_minor(const Element<S>& x, const JordanFrame& frame, int i) {
  const int rho = x.alg->rank();
  if (i < 1 || i > rho) throw std::out_of_range("principal_minor: i out of range");
  QElement c = frame.partial_identity(i);
  Element<S> cs;
  if constexpr (std::is_same_v<S, double>) cs = cast_element<double>(c);
  else cs = cast_element<S>(c);
  Element<S> y = apply(peirce_one_projector(cs), x);
  // y has eigenvalues of its V_i-determinant plus rho-i zeros
  return sym_c_all(y)[i];
}

template <class S>
S delta_m(const Element<S>& x, const JordanFrame& frame, const std::vector<int>& m) {
  const int rho = x.alg->rank();
  if (static_cast<int>(m.size()) != rho) throw std::invalid_argument("delta_m: multi-index must have rho entries");
  for (int i = 0; i < rho; ++i) {
    if (m[i] < 0) throw std::invalid_argument("delta_m: negative entry");
    if (i + 1 < rho && m[i] < m[i + 1]) throw std::invalid_argument("delta_m: multi-index must be non-increasing");
  }
  S acc(1);
  for (int i = 0; i < rho; ++i) {
    int ex = m[i] - (i + 1 < rho ? m[i + 1] : 0);
    if (ex == 0) continue;
    S d = principal_minor(x, frame, i + 1);
    for (int t = 0; t < ex; ++t) acc *= d;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Automorphisms

inline Eigen::MatrixXd mult_matrix_eigen(const FElement& u) { return mult_matrix(u).to_eigen(); }

/// exp of a random derivation sum_t c_t [L_{u_t}, L_{v_t}], in the
/// construction basis. `strength` scales the derivation.
template <class Engine>
Eigen::MatrixXd automorphism_sample(const AlgebraPtr& alg, Engine& eng, double strength = 1.0, int terms = 3) {
  const int n = alg->dim();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int t = 0; t < terms; ++t) {
    FElement u = random_float_element(alg, eng), v = random_float_element(alg, eng);
    Eigen::MatrixXd lu = mult_matrix_eigen(u), lv = mult_matrix_eigen(v);
    d += strength * uniform_real(eng, -1.0, 1.0) * (lu * lv - lv * lu);
  }
  return d.exp();
}

inline Eigen::MatrixXd automorphism_sample(const AlgebraPtr& alg, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  return automorphism_sample(alg, eng);
}

inline FElement apply_eigen(const Eigen::MatrixXd& g, const FElement& x) {
  Eigen::VectorXd v(x.dim());
  for (int i = 0; i < x.dim(); ++i) v[i] = x[i];
  Eigen::VectorXd w = g * v;
  return FElement(x.alg, std::vector<double>(w.data(), w.data() + w.size()));
}

}  // namespace jk
