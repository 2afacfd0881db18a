#pragma once
// Polynomial-coefficient differential operators on V in normal form
// (multiplications left of derivatives), the nu-parametrized acute
// realization of co(V), and the checks built on it.
//
// A WeylOp over n coordinates is a Poly<CRational> in 2n variables: the
// first n exponents are powers of x^a, the last n are powers of d/dx^a.

#include <Eigen/SVD>

#include "jk/phase_space.hpp"
#include "jk/tkk.hpp"

namespace jk {

using StatePoly = Poly<CRational>;

class WeylOp {
 public:
  WeylOp() = default;
  explicit WeylOp(std::size_t n) : n_(n), p_(2 * n) {}
  WeylOp(std::size_t n, Poly<CRational> p) : n_(n), p_(std::move(p)) {
    if (p_.nvars() != 2 * n) throw std::invalid_argument("WeylOp: symbol arity mismatch");
  }

  static WeylOp scalar(std::size_t n, const CRational& c) { return WeylOp(n, Poly<CRational>::constant(2 * n, c)); }
  static WeylOp x(std::size_t n, std::size_t a, const CRational& c = CRational(1)) {
    return WeylOp(n, Poly<CRational>::variable(2 * n, a, c));
  }
  static WeylOp d(std::size_t n, std::size_t a, const CRational& c = CRational(1)) {
    return WeylOp(n, Poly<CRational>::variable(2 * n, n + a, c));
  }
  /// x^A d^B with coefficient c.
  static WeylOp term(const Monomial& xa, const Monomial& db, const CRational& c) {
    Monomial m(xa);
    m.insert(m.end(), db.begin(), db.end());
    return WeylOp(xa.size(), Poly<CRational>::monomial(m, c));
  }

  std::size_t n() const { return n_; }
  const Poly<CRational>& symbol() const { return p_; }
  bool is_zero() const { return p_.is_zero(); }
  std::size_t size() const { return p_.size(); }

  WeylOp& operator+=(const WeylOp& o) {
    p_ += o.p_;
    return *this;
  }
  WeylOp& operator-=(const WeylOp& o) {
    p_ -= o.p_;
    return *this;
  }
  friend WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
  friend WeylOp operator-(WeylOp a, const WeylOp& b) { return a -= b; }
  WeylOp operator-() const { return WeylOp(n_, -p_); }
  friend WeylOp operator*(const CRational& c, WeylOp a) {
    a.p_.scale(c);
    return a;
  }
  friend bool operator==(const WeylOp& a, const WeylOp& b) { return a.n_ == b.n_ && a.p_ == b.p_; }
  friend bool operator!=(const WeylOp& a, const WeylOp& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const WeylOp& a) { return os << a.p_; }

 private:
  std::size_t n_ = 0;
  Poly<CRational> p_;
};

namespace detail {

inline Rational falling(unsigned c, unsigned k) {
  Rational r(1);
  for (unsigned t = 0; t < k; ++t) r *= c - t;
  return r;
}

inline Rational binom(unsigned b, unsigned k) {
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), b, k);
  return Rational(z);
}

}  // namespace detail

/// Normal-ordered product a*b, via d^b x^c = sum_k C(b,k) c!/(c-k)! x^{c-k} d^{b-k}.
inline WeylOp compose(const WeylOp& a, const WeylOp& b) {
  if (a.n() != b.n()) throw std::invalid_argument("compose: variable count mismatch");
  const std::size_t n = a.n();
  Poly<CRational> out(2 * n);
  std::vector<unsigned> active;
  Monomial m(2 * n);
  for (const auto& [ma, ca] : a.symbol().terms()) {
    for (const auto& [mb, cb] : b.symbol().terms()) {
      active.clear();
      for (std::size_t i = 0; i < n; ++i)
        if (ma[n + i] && mb[i]) active.push_back(static_cast<unsigned>(i));
      CRational base = ca * cb;
      // enumerate contraction multi-index k over active variables
      std::vector<unsigned> k(active.size(), 0);
      while (true) {
        CRational c = base;
        for (std::size_t t = 0; t < active.size(); ++t) {
          unsigned i = active[t];
          if (k[t]) c *= Rational(detail::binom(ma[n + i], k[t]) * detail::falling(mb[i], k[t]));
        }
        for (std::size_t i = 0; i < n; ++i) {
          m[i] = ma[i] + mb[i];
          m[n + i] = ma[n + i] + mb[n + i];
        }
        for (std::size_t t = 0; t < active.size(); ++t) {
          unsigned i = active[t];
          m[i] -= k[t];
          m[n + i] -= k[t];
        }
        out.add_term(m, c);
        // next k
        std::size_t t = 0;
        for (; t < active.size(); ++t) {
          unsigned i = active[t];
          unsigned lim = std::min<unsigned>(ma[n + i], mb[i]);
          if (k[t] < lim) {
            ++k[t];
            break;
          }
          k[t] = 0;
        }
        if (t == active.size()) break;
      }
    }
  }
  return WeylOp(n, out);
}

inline WeylOp commutator(const WeylOp& a, const WeylOp& b) { return compose(a, b) - compose(b, a); }

/// Action on polynomials in the n coordinates.
inline StatePoly apply(const WeylOp& a, const StatePoly& p) {
  const std::size_t n = a.n();
  if (p.nvars() != n) throw std::invalid_argument("apply: state arity mismatch");
  StatePoly out(n);
  for (const auto& [m, c] : a.symbol().terms()) {
    StatePoly q = p;
    for (std::size_t i = 0; i < n && !q.is_zero(); ++i)
      for (unsigned t = 0; t < m[n + i]; ++t) q = q.derivative(i);
    if (q.is_zero()) continue;
    Monomial xa(m.begin(), m.begin() + n);
    out += q * StatePoly::monomial(xa, c);
  }
  return out;
}

/// psi = e^{-r} p.
struct PolyState {
  StatePoly p;
};

inline PolyState apply(const WeylOp& a, const PolyState& s) { return {apply(a, s.p)}; }

// ---------------------------------------------------------------------------
// Wallach parameter

/// Raised for nu outside the Wallach set minus zero.
class WallachDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct WallachParam {
  enum class Kind { Discrete, Continuous };
  Rational value;
  Kind kind = Kind::Continuous;
  int k = 0;           // for discrete points nu = k delta/2
  int rho_of_nu = 0;   // rank of the supporting cone

  static WallachParam classify(const Algebra& alg, const Rational& nu) {
    const int rho = alg.rank(), delta = alg.degree();
    WallachParam w;
    w.value = nu;
    Rational threshold = ratio((rho - 1) * delta, 2);
    if (nu > threshold) {
      w.kind = Kind::Continuous;
      w.rho_of_nu = rho;
      return w;
    }
    for (int k = 1; k <= rho - 1; ++k)
      if (nu == ratio(k * delta, 2)) {
        w.kind = Kind::Discrete;
        w.k = k;
        w.rho_of_nu = k;
        return w;
      }
    std::ostringstream os;
    os << "nu = " << nu << " is not in the Wallach set minus zero for " << alg.spec().display_name()
       << ": need nu = k*delta/2 with 1 <= k <= " << rho - 1 << " (delta = " << delta << ") or nu > " << threshold;
    throw WallachDomainError(os.str());
  }

  std::string describe() const {
    std::ostringstream os;
    os << value << (kind == Kind::Discrete ? " (discrete, k=" + std::to_string(k) + ")" : std::string(" (continuous)"))
       << ", rho(nu)=" << rho_of_nu;
    return os.str();
  }
};

/// Parses "7/3", "0.5", "d:k" or "k*delta/2" (both meaning k delta / 2).
inline Rational parse_nu(const std::string& text, const Algebra& alg) {
  auto sugar = [&](const std::string& k) {
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad nu sugar '" + text + "'");
    return ratio(std::stoi(k) * alg.degree(), 2);
  };
  if (text.rfind("d:", 0) == 0) return sugar(text.substr(2));
  const std::string tail = "*delta/2";
  if (text.size() > tail.size() && text.compare(text.size() - tail.size(), tail.size(), tail) == 0)
    return sugar(text.substr(0, text.size() - tail.size()));
  return parse_rational(text);
}

// ---------------------------------------------------------------------------
// Acute realization

class AcuteRealization {
 public:
  AcuteRealization(AlgebraPtr alg, Rational nu) : alg_(std::move(alg)), nu_(std::move(nu)), n_(alg_->dim()) {
    const auto& g = alg_->gram();
    for (int a = 0; a < n_; ++a) grad_shift_.push_back(g[a] * alg_->identity_coords()[a]);
  }

  const AlgebraPtr& algebra() const { return alg_; }
  const Rational& nu() const { return nu_; }
  std::size_t n() const { return n_; }

  /// -<Ax|d> - (nu rho/(2n)) Tr A; equals S_uv(nu) when A = S_uv.
  WeylOp S_op(const Matrix<Rational>& m) const {
    WeylOp out(n_);
    for (int c = 0; c < n_; ++c)
      for (int b = 0; b < n_; ++b)
        if (sgn(m(c, b)) != 0) out += term_xd(b, c, -m(c, b));
    Rational scal = nu_ * alg_->rank() * m.trace() / (2 * n_);
    if (sgn(scal) != 0) out += WeylOp::scalar(n_, CRational(-scal));
    return out;
  }
  WeylOp S(const QElement& u, const QElement& v) const { return S_op(smul_matrix(u, v)); }

  /// i<x|{d u d}> + i nu tr(u d).
  WeylOp X(const QElement& u) const {
    const auto& g = alg_->gram();
    Poly<CRational> out(2 * n_);
    Monomial m(2 * n_, 0);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        QElement t = triple(QElement::basis(alg_, a), u, QElement::basis(alg_, b));
        if (t.is_zero()) continue;
        Rational w = 1 / (g[a] * g[b]);
        for (int c = 0; c < n_; ++c) {
          if (sgn(t[c]) == 0) continue;
          std::fill(m.begin(), m.end(), 0);
          m[c] += 1;
          m[n_ + a] += 1;
          m[n_ + b] += 1;
          out.add_term(m, CRational(Rational(0), w * g[c] * t[c]));
        }
      }
    for (int a = 0; a < n_; ++a) {
      if (sgn(u[a]) == 0) continue;
      std::fill(m.begin(), m.end(), 0);
      m[n_ + a] = 1;
      out.add_term(m, CRational(Rational(0), nu_ * alg_->rank() * u[a]));
    }
    return WeylOp(n_, out);
  }

  /// -i<x|v>.
  WeylOp Y(const QElement& v) const {
    const auto& g = alg_->gram();
    WeylOp out(n_);
    for (int c = 0; c < n_; ++c)
      if (sgn(v[c]) != 0) out += WeylOp::x(n_, c, CRational(Rational(0), -g[c] * v[c]));
    return out;
  }

  /// pi_nu(X_u + A + Y_v) for real or complexified co elements.
  WeylOp realize(const QCo& c) const { return X(c.x) + S_op(c.a) + Y(c.y); }
  WeylOp realize(const CCo& c) const {
    auto part = [&](auto pick) {
      QCo q = QCo::zero(alg_);
      for (int a = 0; a < n_; ++a) q.x[a] = pick(c.x[a]), q.y[a] = pick(c.y[a]);
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) q.a(i, j) = pick(c.a(i, j));
      return q;
    };
    QCo re = part([](const CRational& z) { return z.re; });
    QCo im = part([](const CRational& z) { return z.im; });
    return realize(re) + CRational::i() * realize(im);
  }

  /// e^r a e^{-r}: d_a -> d_a - sign * dr/dx^a, with dr/dx^a = g_a e^a.
  WeylOp gaussian_conjugate(const WeylOp& op, int sign = 1) const {
    Poly<CRational> out(2 * n_);
    for (const auto& [m, c] : op.symbol().terms()) {
      // expand prod_a (d_a - s_a)^{B_a}
      Poly<CRational> acc = Poly<CRational>::monomial(Monomial(m.begin(), m.end()), c);
      for (int a = 0; a < n_; ++a) {
        unsigned B = m[n_ + a];
        if (B == 0 || sgn(grad_shift_[a]) == 0) continue;
        Rational s = -sign * grad_shift_[a];
        Poly<CRational> next(2 * n_);
        for (const auto& [mm, cc] : acc.terms()) {
          for (unsigned k = 0; k <= B; ++k) {
            // choose k factors of (-s_a), keep B-k derivatives
            Monomial t = mm;
            t[n_ + a] = B - k;
            Rational w = detail::binom(B, k);
            Rational sp(1);
            for (unsigned q = 0; q < k; ++q) sp *= s;
            CRational v = cc;
            v *= Rational(w * sp);
            next.add_term(t, v);
          }
        }
        acc = std::move(next);
      }
      out += acc;
    }
    return WeylOp(n_, out);
  }

 private:
  WeylOp term_xd(int xvar, int dvar, const Rational& c) const {
    Monomial m(2 * n_, 0);
    m[xvar] = 1;
    m[n_ + dvar] = 1;
    return WeylOp(n_, Poly<CRational>::monomial(m, CRational(c)));
  }

  AlgebraPtr alg_;
  Rational nu_;
  int n_;
  std::vector<Rational> grad_shift_;
};

/// The six TKK relations for the acute operators, exact.
template <class Engine>
std::vector<Check> verify_tkk_ops(const AlgebraPtr& alg, const Rational& nu, int trials, Engine& eng) {
  AcuteRealization R(alg, nu);
  struct Fam {
    const char* name;
    bool ok = true;
    json witness = nullptr;
  };
  Fam fams[6] = {{"ops.XX"}, {"ops.YY"}, {"ops.XY"}, {"ops.SX"}, {"ops.SY"}, {"ops.SS"}};
  for (int t = 0; t < trials; ++t) {
    QElement u = random_element(alg, eng, 2, 2), v = random_element(alg, eng, 2, 2);
    QElement z = random_element(alg, eng, 2, 2), w = random_element(alg, eng, 2, 2);
    json wit = {{"trial", t}, {"u", coords_json(u)}, {"v", coords_json(v)}, {"z", coords_json(z)}, {"w", coords_json(w)}};
    WeylOp Xu = R.X(u), Yv = R.Y(v), Suv = R.S(u, v);
    bool res[6] = {
        commutator(Xu, R.X(v)).is_zero(),
        commutator(R.Y(u), Yv).is_zero(),
        commutator(Xu, Yv) == CRational(-2) * Suv,
        commutator(Suv, R.X(z)) == R.X(triple(u, v, z)),
        commutator(Suv, R.Y(z)) == -R.Y(triple(v, u, z)),
        commutator(Suv, R.S(z, w)) == R.S(triple(u, v, z), w) - R.S(z, triple(v, u, w)),
    };
    for (int f = 0; f < 6; ++f)
      if (!res[f] && fams[f].ok) fams[f].ok = false, fams[f].witness = wit;
  }
  std::vector<Check> out;
  for (const auto& f : fams) out.push_back(Check::exact(f.name, f.ok, f.witness));
  return out;
}

/// All monomials of total degree d in n variables, graded-lex order.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned d) {
  std::vector<Monomial> out;
  Monomial m(n, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == n) {
      m[i] = static_cast<Exponent>(left);
      out.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      m[i] = static_cast<Exponent>(e);
      rec(i + 1, left - e);
    }
  };
  if (n == 0) return out;
  rec(0, d);
  std::sort(out.begin(), out.end(), GradedLex());
  return out;
}

/// conj(i(X_e + Y_e)) p = (2I + nu rho) p + lower degree, for all degree-I monomials p.
inline Check he_grading_check(const AlgebraPtr& alg, const Rational& nu, unsigned I) {
  AcuteRealization R(alg, nu);
  QElement e = QElement::identity(alg);
  WeylOp h = R.gaussian_conjugate(CRational::i() * (R.X(e) + R.Y(e)));
  CRational expected(Rational(2 * I) + nu * alg->rank());
  const std::size_t n = alg->dim();
  for (const auto& m : monomials_of_degree(n, I)) {
    StatePoly p = StatePoly::monomial(m);
    StatePoly q = apply(h, p);
    bool ok = q.degree() <= static_cast<int>(I);
    StatePoly lead = q.homogeneous_part(I);
    StatePoly want = p;
    want.scale(expected);
    if (!ok || lead != want) {
      json w = {{"I", I}, {"monomial", std::vector<int>(m.begin(), m.end())}, {"expected", to_string(expected)}};
      return Check::exact("he_grading.I=" + std::to_string(I), false, w);
    }
  }
  return Check::exact("he_grading.I=" + std::to_string(I), true);
}

/// psi_0 = e^{-r} is annihilated by E_{-alpha0} and by the derivations,
/// and has H_{alpha0}-weight nu and H_e-weight nu rho.
inline std::vector<Check> lowest_weight_check(const AlgebraPtr& alg, const Rational& nu) {
  AcuteRealization R(alg, nu);
  RootData rd = root_data(alg, jordan_frame(alg));
  const std::size_t n = alg->dim();
  StatePoly one = StatePoly::constant(n, CRational(1));
  auto act = [&](const CCo& c) { return apply(R.gaussian_conjugate(R.realize(c)), one); };
  std::vector<Check> out;
  out.push_back(Check::exact("lowest_weight.E_-alpha0", act(rd.E_minus_alpha0).is_zero()));
  StatePoly h0 = act(rd.H_alpha0);
  out.push_back(Check::exact("lowest_weight.H_alpha0=nu", h0 == StatePoly::constant(n, CRational(nu)),
                             json{{"got", to_string(h0)}}));
  StatePoly he = act(rd.H_e);
  out.push_back(Check::exact("lowest_weight.H_e=nu*rho", he == StatePoly::constant(n, CRational(nu * alg->rank())),
                             json{{"got", to_string(he)}}));
  bool der_ok = true;
  json wit = nullptr;
  for (int a = 0; a < alg->dim() && der_ok; ++a)
    for (int b = a + 1; b < alg->dim(); ++b) {
      Matrix<Rational> d = commutator(mult_matrix(QElement::basis(alg, a)), mult_matrix(QElement::basis(alg, b)));
      if (d.is_zero()) continue;
      StatePoly q = apply(R.gaussian_conjugate(R.S_op(d)), one);
      if (!q.is_zero()) {
        der_ok = false;
        wit = {{"a", a}, {"b", b}};
        break;
      }
    }
  out.push_back(Check::exact("lowest_weight.derivations", der_ok, wit));
  return out;
}

/// E_I = -(1/2)/(I + nu rho/2)^2.
inline Rational bound_spectrum(const Algebra& alg, const Rational& nu, unsigned I) {
  WallachParam::classify(alg, nu);
  Rational s = Rational(I) + nu * alg.rank() / 2;
  return Rational(-1, 2) / (s * s);
}

}  // namespace jk
