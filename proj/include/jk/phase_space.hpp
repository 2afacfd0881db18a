#pragma once
// Symplectic calculus on T*V. Observables are polynomials in 2n variables:
// x^0..x^{n-1} (coordinates of x in the algebra basis) followed by
// P_0..P_{n-1}, the components of the covector pi, so that
// <w|pi> = sum_a w^a P_a and {x^a, P_b} = delta_ab. The element of V
// representing pi has coordinates pi^a = P_a / g_a.
//
// Rational observables carry a denominator r^m with r = <e|x>.

#include <functional>

#include "jk/report.hpp"
#include "jk/spectral.hpp"

namespace jk {

using PhasePoly = Poly<Rational>;

class PhaseSpace {
 public:
  explicit PhaseSpace(AlgebraPtr alg) : alg_(std::move(alg)), n_(alg_->dim()) {}

  const AlgebraPtr& algebra() const { return alg_; }
  int dim() const { return n_; }
  std::size_t nvars() const { return 2 * n_; }

  PhasePoly zero() const { return PhasePoly(nvars()); }
  PhasePoly constant(const Rational& c) const { return PhasePoly::constant(nvars(), c); }
  PhasePoly x(int a) const { return PhasePoly::variable(nvars(), a); }
  PhasePoly p(int a) const { return PhasePoly::variable(nvars(), n_ + a); }

  /// <w|x> for a fixed w.
  PhasePoly pair_x(const QElement& w) const {
    PhasePoly out = zero();
    for (int a = 0; a < n_; ++a)
      if (sgn(w[a]) != 0) out += x(a).scale(alg_->gram()[a] * w[a]);
    return out;
  }

  /// r = <e|x>.
  PhasePoly r() const { return pair_x(QElement::identity(alg_)); }

  /// <M x | pi> for an operator M.
  PhasePoly pair_op(const Matrix<Rational>& m) const {
    PhasePoly out = zero();
    for (int g = 0; g < n_; ++g)
      for (int b = 0; b < n_; ++b)
        if (sgn(m(g, b)) != 0) out += (x(b) * p(g)).scale(m(g, b));
    return out;
  }

  /// <x | {pi u pi}>.
  PhasePoly x_quadratic(const QElement& u) const {
    PhasePoly out = zero();
    const auto& g = alg_->gram();
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        QElement t = triple(QElement::basis(alg_, a), u, QElement::basis(alg_, b));
        if (t.is_zero()) continue;
        PhasePoly pp = p(a) * p(b);
        Rational w = 1 / (g[a] * g[b]);
        for (int c = 0; c < n_; ++c)
          if (sgn(t[c]) != 0) out += (x(c) * pp).scale(w * g[c] * t[c]);
      }
    return out;
  }

  /// <x | pi^2>.
  PhasePoly x_pi_squared() const { return x_quadratic(QElement::identity(alg_)); }

  /// Canonical bracket {f,g} = sum_a df/dx^a dg/dP_a - df/dP_a dg/dx^a.
  PhasePoly poisson(const PhasePoly& f, const PhasePoly& g) const {
    PhasePoly out = zero();
    for (int a = 0; a < n_; ++a) {
      PhasePoly fx = f.derivative(a), gp = g.derivative(n_ + a);
      if (!fx.is_zero() && !gp.is_zero()) out += fx * gp;
      PhasePoly fp = f.derivative(n_ + a), gx = g.derivative(a);
      if (!fp.is_zero() && !gx.is_zero()) out -= fp * gx;
    }
    return out;
  }

 private:
  AlgebraPtr alg_;
  int n_;
};

/// numerator / r^r_power, kept reduced.
struct PhaseRational {
  PhasePoly numerator;
  int r_power = 0;

  bool is_zero() const { return numerator.is_zero(); }
  friend bool operator==(const PhaseRational& a, const PhaseRational& b) {
    return a.r_power == b.r_power && a.numerator == b.numerator;
  }
};

class PhaseCalculus {
 public:
  explicit PhaseCalculus(AlgebraPtr alg) : ps_(std::move(alg)), r_(ps_.r()) {}

  const PhaseSpace& space() const { return ps_; }
  const PhasePoly& r() const { return r_; }

  PhaseRational make(PhasePoly num, int power = 0) const { return reduce({std::move(num), power}); }

  PhaseRational reduce(PhaseRational f) const {
    if (f.numerator.is_zero()) return {ps_.zero(), 0};
    while (f.r_power > 0) {
      auto q = f.numerator.divide_by_linear(r_);
      if (!q) break;
      f.numerator = std::move(*q);
      --f.r_power;
    }
    return f;
  }

  PhaseRational add(const PhaseRational& f, const PhaseRational& g) const {
    int m = std::max(f.r_power, g.r_power);
    return reduce({lift(f, m) + lift(g, m), m});
  }
  PhaseRational sub(const PhaseRational& f, const PhaseRational& g) const {
    int m = std::max(f.r_power, g.r_power);
    return reduce({lift(f, m) - lift(g, m), m});
  }
  PhaseRational mul(const PhaseRational& f, const PhaseRational& g) const {
    return reduce({f.numerator * g.numerator, f.r_power + g.r_power});
  }
  PhaseRational scale(PhaseRational f, const Rational& s) const {
    f.numerator.scale(s);
    return reduce(f);
  }

  /// {f r^-a, g r^-b} = r^-(a+b+1) (r{f,g} - a f{r,g} - b g{f,r}).
  PhaseRational poisson(const PhaseRational& F, const PhaseRational& G) const {
    const PhasePoly& f = F.numerator;
    const PhasePoly& g = G.numerator;
    const int a = F.r_power, b = G.r_power;
    PhasePoly num = r_ * ps_.poisson(f, g);
    if (a) num -= (f * ps_.poisson(r_, g)).scale(Rational(a));
    if (b) num -= (g * ps_.poisson(f, r_)).scale(Rational(b));
    return reduce({num, a + b + 1});
  }

 private:
  PhasePoly lift(const PhaseRational& f, int m) const { return f.numerator * r_.pow(m - f.r_power); }

  PhaseSpace ps_;
  PhasePoly r_;
};

/// Moment functions S_uv = <S_uv x|pi>, X_u = <x|{pi u pi}>, Y_v = <x|v>.
struct Moments {
  PhasePoly S, X, Y;
};

inline Moments moments(const PhaseSpace& ps, const QElement& u, const QElement& v) {
  return {ps.pair_op(smul_matrix(u, v)), ps.x_quadratic(u), ps.pair_x(v)};
}

inline PhasePoly moment_S(const PhaseSpace& ps, const QElement& u, const QElement& v) {
  return ps.pair_op(smul_matrix(u, v));
}
inline PhasePoly moment_X(const PhaseSpace& ps, const QElement& u) { return ps.x_quadratic(u); }
inline PhasePoly moment_Y(const PhaseSpace& ps, const QElement& v) { return ps.pair_x(v); }

/// Deliberate corruption of the S moment, for harness self-tests.
enum class Mutation { None, FlipS };

/// Checks the six relation families
///   {X_u,X_v} = 0, {Y_u,Y_v} = 0, {X_u,Y_v} = -2 S_uv,
///   {S_uv,X_z} = X_{uvz}, {S_uv,Y_z} = -Y_{vuz},
///   {S_uv,S_zw} = S_{{uvz}w} - S_{z{vuw}}
/// on random rational data.
template <class Engine>
std::vector<Check> verify_poisson_tkk(const AlgebraPtr& alg, int trials, Engine& eng,
                                      Mutation mutation = Mutation::None) {
  PhaseSpace ps(alg);
  auto S = [&](const QElement& u, const QElement& v) {
    PhasePoly s = moment_S(ps, u, v);
    if (mutation == Mutation::FlipS) s = -s;
    return s;
  };
  struct Fam {
    const char* name;
    bool ok = true;
    json witness = nullptr;
  };
  Fam fams[6] = {{"poisson.XX"}, {"poisson.YY"}, {"poisson.XY"}, {"poisson.SX"}, {"poisson.SY"}, {"poisson.SS"}};
  for (int t = 0; t < trials; ++t) {
    QElement u = random_element(alg, eng, 3, 2), v = random_element(alg, eng, 3, 2);
    QElement z = random_element(alg, eng, 3, 2), w = random_element(alg, eng, 3, 2);
    json wit = {{"trial", t}, {"u", coords_json(u)}, {"v", coords_json(v)}, {"z", coords_json(z)}, {"w", coords_json(w)}};
    PhasePoly Xu = moment_X(ps, u), Xv = moment_X(ps, v), Yu = moment_Y(ps, u), Yv = moment_Y(ps, v);
    PhasePoly Suv = S(u, v);
    bool res[6] = {
        ps.poisson(Xu, Xv).is_zero(),
        ps.poisson(Yu, Yv).is_zero(),
        ps.poisson(Xu, Yv) == Suv * Rational(-2),
        ps.poisson(Suv, moment_X(ps, z)) == moment_X(ps, triple(u, v, z)),
        ps.poisson(Suv, moment_Y(ps, z)) == -moment_Y(ps, triple(v, u, z)),
        ps.poisson(Suv, S(z, w)) == S(triple(u, v, z), w) - S(z, triple(v, u, w)),
    };
    for (int f = 0; f < 6; ++f)
      if (!res[f] && fams[f].ok) fams[f].ok = false, fams[f].witness = wit;
  }
  std::vector<Check> out;
  for (const auto& f : fams) out.push_back(Check::exact(f.name, f.ok, f.witness));
  return out;
}

// ---------------------------------------------------------------------------
// Universal hamiltonian and Lenz vector

/// Lenz sign: A_u = sigma (1/r) {L_u, r^2 H}.
inline constexpr int kLenzSign = 1;

/// H = (1/2)<x|pi^2>/r - 1/r.
inline PhaseRational classical_hamiltonian(const PhaseCalculus& pc) {
  PhasePoly num = pc.space().x_pi_squared().scale(Rational(1, 2)) - pc.space().constant(Rational(1));
  return pc.make(num, 1);
}

/// L_{u,v} = <[L_u,L_v]x|pi>.
inline PhaseRational angular(const PhaseCalculus& pc, const QElement& u, const QElement& v) {
  return pc.make(pc.space().pair_op(commutator(mult_matrix(u), mult_matrix(v))));
}

/// L_u = S_{ue} = <ux|pi>.
inline PhaseRational dilation(const PhaseCalculus& pc, const QElement& u) {
  return pc.make(pc.space().pair_op(mult_matrix(u)));
}

inline PhaseRational classical_lenz(const PhaseCalculus& pc, const QElement& u, int sigma = kLenzSign) {
  PhaseRational h = classical_hamiltonian(pc);
  PhaseRational r2h = pc.mul(pc.make(pc.r().pow(2)), h);
  PhaseRational a = pc.poisson(dilation(pc, u), r2h);
  a.r_power += 1;
  return pc.scale(a, Rational(sigma));
}

inline std::vector<PhaseRational> classical_lenz(const PhaseCalculus& pc, int sigma = kLenzSign) {
  std::vector<PhaseRational> out;
  for (int a = 0; a < pc.space().dim(); ++a) out.push_back(classical_lenz(pc, QElement::basis(pc.space().algebra(), a), sigma));
  return out;
}

}  // namespace jk
