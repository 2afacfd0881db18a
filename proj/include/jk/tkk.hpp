#pragma once
// The conformal algebra co(V) = V + str(V) + V* with the TKK bracket.
// An element (u, A, v) stands for X_u + A + Y_v, with A an operator in
// str(V) = span{S_uv}. Complexified elements use CRational scalars.

#include <Eigen/SVD>

#include <map>

#include "jk/spectral.hpp"

namespace jk {

/// Raised when an operator presented as a str element is not in the span.
class StrMembershipError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exact reduced row echelon basis of span{S_{b_a b_b}} inside End(V),
/// stored as sparse rows over the n*n matrix entries.
class StrBasis {
 public:
  using SparseRow = std::vector<std::pair<int, Rational>>;  // sorted by column

  explicit StrBasis(const AlgebraPtr& alg) : alg_(alg) {
    const int n = alg->dim();
    std::vector<Matrix<Rational>> left(n);
    for (int a = 0; a < n; ++a) left[a] = mult_matrix(QElement::basis(alg, a));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Matrix<Rational> s = commutator(left[a], left[b]);
        for (const auto& e : alg->entries_by_first()[a])
          if (e.b == b)
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < n; ++j) {
                if (sgn(left[e.c](i, j)) == 0) continue;
                s(i, j) += e.coef * left[e.c](i, j);
              }
        insert(to_sparse(s));
      }
  }

  const AlgebraPtr& algebra() const { return alg_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<SparseRow>& rows() const { return rows_; }

  Matrix<Rational> basis_matrix(int i) const {
    const int n = alg_->dim();
    Matrix<Rational> m(n, n);
    for (const auto& [c, q] : rows_[i]) m(c / n, c % n) = q;
    return m;
  }

  /// Coordinates of m in the basis, or nullopt when m is not in the span.
  std::optional<std::vector<Rational>> coordinates(const Matrix<Rational>& m) const {
    SparseRow r = to_sparse(m);
    std::vector<Rational> coords(rows_.size(), Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Rational c = value_at(r, pivots_[i]);
      if (sgn(c) == 0) continue;
      coords[i] = c;
      r = axpy(r, rows_[i], -c);
    }
    if (!r.empty()) return std::nullopt;
    return coords;
  }

  bool contains(const Matrix<Rational>& m) const { return coordinates(m).has_value(); }
  bool contains(const Matrix<CRational>& m) const {
    const int n = alg_->dim();
    Matrix<Rational> re(n, n), im(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) re(i, j) = m(i, j).re, im(i, j) = m(i, j).im;
    return contains(re) && contains(im);
  }

 private:
  SparseRow to_sparse(const Matrix<Rational>& m) const {
    SparseRow r;
    const int n = alg_->dim();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (sgn(m(i, j)) != 0) r.emplace_back(i * n + j, m(i, j));
    return r;
  }

  static Rational value_at(const SparseRow& r, int col) {
    auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& p, int c) { return p.first < c; });
    return (it != r.end() && it->first == col) ? it->second : Rational(0);
  }

  /// a + s*b.
  static SparseRow axpy(const SparseRow& a, const SparseRow& b, const Rational& s) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, s * b[j].second);
        ++j;
      } else {
        Rational v = a[i].second + s * b[j].second;
        if (sgn(v) != 0) out.emplace_back(a[i].first, v);
        ++i, ++j;
      }
    }
    return out;
  }

  void insert(SparseRow r) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Rational c = value_at(r, pivots_[i]);
      if (sgn(c) != 0) r = axpy(r, rows_[i], -c);
    }
    if (r.empty()) return;
    int piv = r.front().first;
    Rational lead = r.front().second;
    for (auto& [c, q] : r) q /= lead;
    // keep the basis fully reduced
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Rational c = value_at(rows_[i], piv);
      if (sgn(c) != 0) rows_[i] = axpy(rows_[i], r, -c);
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(piv);
  }

  AlgebraPtr alg_;
  std::vector<SparseRow> rows_;
  std::vector<int> pivots_;
};

/// Operator certified to lie in str(V).
class StrElement {
 public:
  StrElement(const StrBasis& basis, Matrix<Rational> m) : matrix_(std::move(m)) {
    if (!basis.contains(matrix_)) throw StrMembershipError("operator is not in the span of the S_uv");
  }
  const Matrix<Rational>& matrix() const { return matrix_; }

 private:
  Matrix<Rational> matrix_;
};

/// X_u + A + Y_v.
template <class S>
struct CoElement {
  Element<S> x;
  Matrix<S> a;
  Element<S> y;

  static CoElement zero(const AlgebraPtr& alg) {
    return {Element<S>::zero(alg), Matrix<S>(alg->dim(), alg->dim()), Element<S>::zero(alg)};
  }
  static CoElement X(const Element<S>& u) {
    CoElement c = zero(u.alg);
    c.x = u;
    return c;
  }
  static CoElement Y(const Element<S>& v) {
    CoElement c = zero(v.alg);
    c.y = v;
    return c;
  }
  static CoElement Str(const AlgebraPtr& alg, const Matrix<S>& m) {
    CoElement c = zero(alg);
    c.a = m;
    return c;
  }
  static CoElement Str(const StrElement& s, const AlgebraPtr& alg) {
    return Str(alg, s.matrix().template cast<S>());
  }

  CoElement& operator+=(const CoElement& o) {
    x += o.x;
    a += o.a;
    y += o.y;
    return *this;
  }
  CoElement& operator-=(const CoElement& o) {
    x -= o.x;
    a -= o.a;
    y -= o.y;
    return *this;
  }
  friend CoElement operator+(CoElement p, const CoElement& q) { return p += q; }
  friend CoElement operator-(CoElement p, const CoElement& q) { return p -= q; }
  CoElement operator-() const { return {-x, -a, -y}; }
  friend CoElement operator*(const S& s, CoElement p) {
    p.x *= s;
    p.a.scale(s);
    p.y *= s;
    return p;
  }
  friend bool operator==(const CoElement& p, const CoElement& q) { return p.x == q.x && p.a == q.a && p.y == q.y; }
  bool is_zero() const { return x.is_zero() && a.is_zero() && y.is_zero(); }
};

using QCo = CoElement<Rational>;
using CCo = CoElement<CRational>;

template <class S>
CoElement<S> S_element(const Element<S>& u, const Element<S>& v) {
  return CoElement<S>::Str(u.alg, smul_matrix(u, v));
}

/// [(u,A,v), (u',B,v')] = (Au' - Bu, [A,B] - 2S_{uv'} + 2S_{u'v}, -A^dagger v' + B^dagger v).
template <class S>
CoElement<S> co_bracket(const CoElement<S>& p, const CoElement<S>& q, const StrBasis* certify = nullptr) {
  p.x.check_same_algebra(q.x);
  const Algebra& alg = *p.x.alg;
  CoElement<S> r;
  r.x = apply(p.a, q.x) - apply(q.a, p.x);
  Matrix<S> m = commutator(p.a, q.a);
  if (!p.x.is_zero() && !q.y.is_zero()) {
    Matrix<S> s = smul_matrix(p.x, q.y);
    s.scale(S(2));
    m -= s;
  }
  if (!q.x.is_zero() && !p.y.is_zero()) {
    Matrix<S> s = smul_matrix(q.x, p.y);
    s.scale(S(2));
    m += s;
  }
  r.a = m;
  r.y = apply(adjoint(q.a, alg), p.y) - apply(adjoint(p.a, alg), q.y);
  if (certify) {
    bool ok;
    if constexpr (std::is_same_v<S, double>) ok = true;
    else ok = certify->contains(r.a);
    if (!ok) throw StrMembershipError("co_bracket: str component left the certified span");
  }
  return r;
}

/// theta(u, A, v) = (v, -A^dagger, u).
template <class S>
CoElement<S> cartan_involution(const CoElement<S>& p) {
  return {p.y, -adjoint(p.a, *p.x.alg), p.x};
}

/// Random element X_u + sum_t S_{u_t v_t} + Y_v with small rational data.
template <class Engine>
QCo random_co_element(const AlgebraPtr& alg, Engine& eng, int str_terms = 2) {
  QCo c = QCo::zero(alg);
  c.x = random_element(alg, eng, 3, 2);
  c.y = random_element(alg, eng, 3, 2);
  for (int t = 0; t < str_terms; ++t) {
    QElement u = random_element(alg, eng, 3, 2), v = random_element(alg, eng, 3, 2);
    c.a += smul_matrix(u, v);
  }
  return c;
}

template <class S>
CoElement<CRational> complexify(const CoElement<S>& p) {
  auto cx = [](const Element<S>& e) {
    std::vector<CRational> c;
    for (const auto& v : e.coords) c.push_back(CRational(v));
    return CElement(e.alg, c);
  };
  return {cx(p.x), p.a.template cast<CRational>(), cx(p.y)};
}

/// Distinguished sl_2 triples over the complexification.
struct RootData {
  CCo H_e, E_plus, E_minus;
  CCo H_alpha0, E_plus_alpha0, E_minus_alpha0;
};

inline RootData root_data(const AlgebraPtr& alg, const JordanFrame& frame) {
  const CRational i = CRational::i();
  const CRational half_i(Rational(0), Rational(1, 2));
  auto triple_for = [&](const QElement& c, CCo& h, CCo& ep, CCo& em) {
    CElement cc = cast_element<CRational>(c);
    Matrix<CRational> s = smul_matrix(cc, cc);
    h = CCo::zero(alg);
    h.x = i * cc;
    h.y = i * cc;
    ep = CCo::zero(alg);
    ep.x = half_i * cc;
    ep.y = -(half_i * cc);
    em = ep;
    ep.a = -s;
    em.a = s;
  };
  RootData rd;
  triple_for(QElement::identity(alg), rd.H_e, rd.E_plus, rd.E_minus);
  triple_for(frame[0], rd.H_alpha0, rd.E_plus_alpha0, rd.E_minus_alpha0);
  return rd;
}

inline int dim_str(const AlgebraPtr& alg) { return StrBasis(alg).dim(); }
inline int dim_co(const AlgebraPtr& alg) { return 2 * alg->dim() + dim_str(alg); }

/// Numerical rank of span{S_{b_a b_b}} by SVD, threshold 1e-8 * sigma_max.
inline int dim_str_numeric(const AlgebraPtr& alg) {
  const int n = alg->dim();
  std::vector<Eigen::MatrixXd> left(n);
  for (int a = 0; a < n; ++a) left[a] = mult_matrix_eigen(FElement::basis(alg, a));
  Eigen::MatrixXd rows(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Eigen::MatrixXd s = left[a] * left[b] - left[b] * left[a];
      for (const auto& e : alg->entries_by_first()[a])
        if (e.b == b) s += e.dcoef * left[e.c];
      rows.row(a * n + b) = Eigen::Map<Eigen::RowVectorXd>(s.data(), n * n);
    }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(rows);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-8 * sv[0]) ++r;
  return r;
}

/// Spanning sets of u = span{[L_a,L_b], X_c+Y_c} and p = span{L_a, X_c-Y_c}.
inline std::vector<QCo> compact_span(const AlgebraPtr& alg) {
  const int n = alg->dim();
  std::vector<QCo> out;
  std::vector<Matrix<Rational>> left(n);
  for (int a = 0; a < n; ++a) left[a] = mult_matrix(QElement::basis(alg, a));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Matrix<Rational> d = commutator(left[a], left[b]);
      if (!d.is_zero()) out.push_back(QCo::Str(alg, d));
    }
  for (int c = 0; c < n; ++c) {
    QCo t = QCo::zero(alg);
    t.x = QElement::basis(alg, c);
    t.y = QElement::basis(alg, c);
    out.push_back(t);
  }
  return out;
}

inline std::vector<QCo> noncompact_span(const AlgebraPtr& alg) {
  const int n = alg->dim();
  std::vector<QCo> out;
  for (int a = 0; a < n; ++a) out.push_back(QCo::Str(alg, mult_matrix(QElement::basis(alg, a))));
  for (int c = 0; c < n; ++c) {
    QCo t = QCo::zero(alg);
    t.x = QElement::basis(alg, c);
    t.y = -QElement::basis(alg, c);
    out.push_back(t);
  }
  return out;
}

/// Exact rank of a set of co elements, flattened as (x, A, y).
inline int co_rank(const std::vector<QCo>& elems) {
  if (elems.empty()) return 0;
  std::map<int, std::vector<std::pair<int, Rational>>> basis;
  const int n = elems[0].x.dim();
  int rank = 0;
  for (const auto& e : elems) {
    std::map<int, Rational> v;
    for (int i = 0; i < n; ++i)
      if (sgn(e.x[i]) != 0) v[i] = e.x[i];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (sgn(e.a(i, j)) != 0) v[n + i * n + j] = e.a(i, j);
    for (int i = 0; i < n; ++i)
      if (sgn(e.y[i]) != 0) v[n + n * n + i] = e.y[i];
    for (const auto& [piv, row] : basis) {
      auto it = v.find(piv);
      if (it == v.end()) continue;
      Rational c = it->second;
      for (const auto& [col, q] : row) {
        Rational t = v[col] - c * q;
        if (sgn(t) == 0) v.erase(col);
        else v[col] = t;
      }
    }
    if (v.empty()) continue;
    auto lead = *v.begin();
    std::vector<std::pair<int, Rational>> row;
    for (const auto& [col, q] : v) row.emplace_back(col, q / lead.second);
    // keep older rows reduced at the new pivot
    for (auto& [piv, r] : basis) {
      Rational c(0);
      for (const auto& [col, q] : r)
        if (col == lead.first) c = q;
      if (sgn(c) == 0) continue;
      std::map<int, Rational> m(r.begin(), r.end());
      for (const auto& [col, q] : row) {
        Rational t = m[col] - c * q;
        if (sgn(t) == 0) m.erase(col);
        else m[col] = t;
      }
      r.assign(m.begin(), m.end());
    }
    basis[lead.first] = row;
    ++rank;
  }
  return rank;
}

}  // namespace jk
