#pragma once
// Verification suites. Each suite is a list of independent tasks; a task
// draws from its own engine, seeded from (master seed, task name), so the
// merged report does not depend on scheduling.

#include <functional>

#include "jk/degeneracy.hpp"
#include "jk/measure.hpp"
#include "jk/phase_space.hpp"
#include "jk/tkk.hpp"

namespace jk {

using Engine = std::mt19937_64;

struct Task {
  std::string name;
  std::function<std::vector<Check>(Engine&)> run;
};

/// Tolerance knobs; float checks scale off `tol`.
struct SuiteParams {
  int trials = 20;
  double tol = 1e-8;
  std::vector<Rational> nus;  // empty: suite defaults
  unsigned levels = 4;
};

namespace detail {

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Keeps the worst numeric error and the witness that produced it.
struct WorstCase {
  double err = 0;
  json witness = nullptr;
  void update(double e, json w) {
    if (!(e <= err)) err = e, witness = std::move(w);  // NaN sticks
  }
};

inline json vec_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace detail

// ---------------------------------------------------------------------------
// jordan

/// (rho, delta, n) from the classification table, independent of AlgebraSpec.
inline std::array<int, 3> classification_row(const AlgebraSpec& s) {
  const int k = s.k;
  switch (s.family) {
    case Family::SpinFactor: return {2, k - 1, k + 1};
    case Family::SymReal: return {k, 1, k * (k + 1) / 2};
    case Family::SymComplex: return {k, 2, k * k};
    case Family::SymQuaternion: return {k, 4, k * (2 * k - 1)};
    case Family::SymOctonion: return {3, 8, 27};
  }
  return {0, 0, 0};
}

// S_uv' = S_vu, with ' the adjoint for the trace form.
inline bool transpose_check_fails(const QElement& u, const QElement& v) {
  return adjoint(smul_matrix(u, v), *u.alg) != smul_matrix(v, u);
}

inline std::vector<Task> jordan_tasks(const AlgebraPtr& alg, const SuiteParams& P) {
  std::vector<Task> t;
  t.push_back({"jordan.axioms", [alg, P](Engine& eng) {
                 bool comm = true, jid = true, sa = true, tr = true;
                 json wc = nullptr, wj = nullptr, ws = nullptr, wt = nullptr;
                 for (int i = 0; i < P.trials; ++i) {
                   QElement u = random_element(alg, eng), v = random_element(alg, eng), w = random_element(alg, eng);
                   json wit = {{"trial", i}, {"u", coords_json(u)}, {"v", coords_json(v)}, {"w", coords_json(w)}};
                   if (comm && product(u, v) != product(v, u)) comm = false, wc = wit;
                   Matrix<Rational> lu = mult_matrix(u);
                   if (jid && !commutator(lu, mult_matrix(product(u, u))).is_zero()) jid = false, wj = wit;
                   if (sa && inner(product(v, u), w) != inner(v, product(u, w))) sa = false, ws = wit;
                   if (tr && transpose_check_fails(u, v)) tr = false, wt = wit;
                 }
                 QElement e = QElement::identity(alg);
                 return std::vector<Check>{
                     Check::exact("jordan.commutativity", comm, wc),
                     Check::exact("jordan.jordan_identity", jid, wj),
                     Check::exact("jordan.self_adjoint", sa, ws),
                     Check::exact("jordan.S_transpose", tr, wt),
                     Check::exact("jordan.unit_norm", inner(e, e) == 1),
                     Check::exact("jordan.L_e_identity", mult_matrix(e) == Matrix<Rational>::identity(alg->dim())),
                 };
               }});
  t.push_back({"jordan.structure", [alg](Engine&) {
                 auto row = classification_row(alg->spec());
                 const int rho = alg->rank(), d = alg->degree(), n = alg->dim();
                 json got = {{"rho", rho}, {"delta", d}, {"n", n}};
                 JordanFrame f = jordan_frame(alg);
                 bool idem = true, orth = true, tr1 = true;
                 QElement sum = QElement::zero(alg);
                 for (int i = 0; i < f.size(); ++i) {
                   idem = idem && product(f[i], f[i]) == f[i];
                   tr1 = tr1 && trace(f[i]) == 1;
                   sum += f[i];
                   for (int j = i + 1; j < f.size(); ++j) orth = orth && product(f[i], f[j]).is_zero();
                 }
                 auto basis = jordan_basis(alg, f);
                 std::map<std::pair<int, int>, int> peirce;
                 bool lengths = true;
                 for (const auto& b : basis) {
                   ++peirce[{b.i, b.j}];
                   double l = 0;
                   for (int a = 0; a < n; ++a) l += alg->gram()[a].get_d() * b.unit[a] * b.unit[a];
                   lengths = lengths && std::abs(l - 1.0 / rho) < 1e-14;
                 }
                 bool pdims = static_cast<int>(basis.size()) == n;
                 for (const auto& [ij, c] : peirce) pdims = pdims && c == (ij.first == ij.second ? 1 : d);
                 return std::vector<Check>{
                     Check::exact("jordan.classification", row == std::array<int, 3>{rho, d, n}, got),
                     Check::exact("jordan.peirce_count", n == rho + rho * (rho - 1) * d / 2, got),
                     Check::exact("jordan.frame.idempotent", idem),
                     Check::exact("jordan.frame.orthogonal", orth),
                     Check::exact("jordan.frame.complete", sum == QElement::identity(alg)),
                     Check::exact("jordan.frame.unit_trace", tr1),
                     Check::exact("jordan.peirce_dims", pdims),
                     Check::exact("jordan.basis_lengths", lengths),
                 };
               }});
  t.push_back({"jordan.spectral", [alg, P](Engine& eng) {
                 const int rho = alg->rank();
                 detail::WorstCase newton, detw, autw, innw;
                 QElement e = QElement::identity(alg);
                 bool exact_ok = det(e) == 1 && sym_tau(e, 1) == 1;
                 for (int i = 0; i < P.trials; ++i) {
                   std::vector<double> a(rho);
                   for (auto& v : a) v = uniform_real(eng, -2.0, 2.0);
                   Eigen::MatrixXd g = automorphism_sample(alg, eng);
                   FElement x = FElement::zero(alg);
                   JordanFrame f = jordan_frame(alg);
                   for (int k = 0; k < rho; ++k) x += a[k] * cast_element<double>(f[k]);
                   FElement gx = apply_eigen(g, x);
                   auto c = sym_c_all(gx);
                   for (int k = 1; k <= rho; ++k)
                     newton.update(detail::rel_err(c[k], elementary_from_eigenvalues(a, k)), {{"a", a}, {"k", k}});
                   double pa = 1;
                   for (double v : a) pa *= v;
                   detw.update(detail::rel_err(det(gx), pa), {{"a", a}});
                   FElement u = random_float_element(alg, eng), v = random_float_element(alg, eng);
                   FElement lhs = apply_eigen(g, product(u, v)), rhs = product(apply_eigen(g, u), apply_eigen(g, v));
                   double m = 0;
                   for (int k = 0; k < alg->dim(); ++k) m = std::max(m, std::abs(lhs[k] - rhs[k]));
                   autw.update(m, {{"trial", i}});
                   innw.update(detail::rel_err(inner(apply_eigen(g, u), apply_eigen(g, v)), inner(u, v)), {{"trial", i}});
                 }
                 FElement ge = apply_eigen(automorphism_sample(alg, eng), cast_element<double>(e));
                 double em = 0;
                 for (int k = 0; k < alg->dim(); ++k) em = std::max(em, std::abs(ge[k] - cast_element<double>(e)[k]));
                 return std::vector<Check>{
                     Check::exact("jordan.det_e=1", exact_ok),
                     Check::numeric("jordan.newton_vs_eigenvalues", newton.err, 10 * P.tol, newton.witness),
                     Check::numeric("jordan.det_invariance", detw.err, P.tol, detw.witness),
                     Check::numeric("jordan.automorphism.product", autw.err, 1e-2 * P.tol, autw.witness),
                     Check::numeric("jordan.automorphism.inner", innw.err, 1e-2 * P.tol, innw.witness),
                     Check::numeric("jordan.automorphism.identity", em, 1e-2 * P.tol),
                 };
               }});
  return t;
}

// ---------------------------------------------------------------------------
// tkk

/// dim str from the classification of structure algebras.
inline int str_dimension_oracle(const AlgebraSpec& s) {
  const int k = s.k;
  switch (s.family) {
    case Family::SpinFactor: return k * (k + 1) / 2 + 1;  // so(k,1) + R
    case Family::SymReal: return k * k;                   // sl(k,R) + R
    case Family::SymComplex: return 2 * k * k - 1;        // sl(k,C) + R
    case Family::SymQuaternion: return 4 * k * k;         // su*(2k) + R
    case Family::SymOctonion: return 79;                  // e6(-26) + R
  }
  return 0;
}

inline std::vector<Task> tkk_tasks(const AlgebraPtr& alg, const SuiteParams& P) {
  std::vector<Task> t;
  t.push_back({"tkk.bracket", [alg, P](Engine& eng) {
                 StrBasis sb(alg);
                 bool anti = true, jac = true, inv = true, hom = true;
                 json wa = nullptr, wj = nullptr, wi = nullptr, wh = nullptr;
                 for (int i = 0; i < P.trials; ++i) {
                   QCo a = random_co_element(alg, eng), b = random_co_element(alg, eng), c = random_co_element(alg, eng);
                   json wit = {{"trial", i}, {"x_parts", {coords_json(a.x), coords_json(b.x), coords_json(c.x)}}};
                   QCo ab = co_bracket(a, b, &sb);
                   if (anti && !(ab + co_bracket(b, a)).is_zero()) anti = false, wa = wit;
                   QCo j = co_bracket(a, co_bracket(b, c, &sb), &sb) + co_bracket(b, co_bracket(c, a, &sb), &sb) +
                           co_bracket(c, ab, &sb);
                   if (jac && !j.is_zero()) jac = false, wj = wit;
                   if (inv && !(cartan_involution(cartan_involution(a)) == a)) inv = false, wi = wit;
                   if (hom && !(cartan_involution(ab) == co_bracket(cartan_involution(a), cartan_involution(b))))
                     hom = false, wh = wit;
                 }
                 QElement e = QElement::identity(alg);
                 QCo xy = co_bracket(QCo::X(e), QCo::Y(e));
                 QCo want = QCo::Str(alg, Matrix<Rational>::identity(alg->dim()));
                 want.a.scale(Rational(-2));
                 return std::vector<Check>{
                     Check::exact("tkk.antisymmetry", anti, wa),
                     Check::exact("tkk.jacobi", jac, wj),
                     Check::exact("tkk.theta_involution", inv, wi),
                     Check::exact("tkk.theta_homomorphism", hom, wh),
                     Check::exact("tkk.XeYe=-2Id", xy == want),
                 };
               }});
  t.push_back({"tkk.roots", [alg](Engine&) {
                 RootData rd = root_data(alg, jordan_frame(alg));
                 auto sl2 = [](const CCo& h, const CCo& ep, const CCo& em) {
                   return co_bracket(h, ep) == CRational(2) * ep && co_bracket(h, em) == CRational(-2) * em &&
                          co_bracket(ep, em) == -h;
                 };
                 return std::vector<Check>{
                     Check::exact("tkk.root.H_e", sl2(rd.H_e, rd.E_plus, rd.E_minus)),
                     Check::exact("tkk.root.alpha0", sl2(rd.H_alpha0, rd.E_plus_alpha0, rd.E_minus_alpha0)),
                     Check::exact("tkk.root.theta_H_e", cartan_involution(rd.H_e) == rd.H_e),
                 };
               }});
  t.push_back({"tkk.dimensions", [alg](Engine&) {
                 const int ds = dim_str(alg), dn = dim_str_numeric(alg), dc = dim_co(alg);
                 const int oracle = str_dimension_oracle(alg->spec());
                 auto u = compact_span(alg), p = noncompact_span(alg);
                 bool fixed = true, flipped = true;
                 for (const auto& c : u) fixed = fixed && cartan_involution(c) == c;
                 for (const auto& c : p) flipped = flipped && cartan_involution(c) == -c;
                 const int du = co_rank(u), dp = co_rank(p);
                 json got = {{"str", ds}, {"str_numeric", dn}, {"co", dc}, {"oracle_str", oracle}, {"u", du}, {"p", dp}};
                 return std::vector<Check>{
                     Check::exact("tkk.dim_str", ds == oracle, got),
                     Check::exact("tkk.dim_str_numeric", dn == ds, got),
                     Check::exact("tkk.dim_co", dc == 2 * alg->dim() + oracle, got),
                     Check::exact("tkk.theta_on_u", fixed),
                     Check::exact("tkk.theta_on_p", flipped),
                     Check::exact("tkk.u_plus_p", du + dp == dc, got),
                 };
               }});
  return t;
}

// ---------------------------------------------------------------------------
// poisson

/// Conservation and closure for H, A_u, L_{u,v} over basis vectors.
/// "poisson.lenz.AA+2HL" tests {A_u,A_v} + 2 H L_{u,v} = 0 and "poisson.lenz.AA-2HL" tests
/// {A_u,A_v} - 2 H L_{u,v} = 0; only the second is an identity with
/// L_{u,v} = <[L_u,L_v]x|pi> (either Lenz sign). The suite reports the
/// identity; callers wanting the other form ask for it with `with_plus`.
inline std::vector<Check> lenz_checks(const AlgebraPtr& alg, bool with_plus = false) {
  PhaseCalculus pc(alg);
  const int n = alg->dim();
  PhaseRational H = classical_hamiltonian(pc);
  std::vector<PhaseRational> A = classical_lenz(pc);
  bool ha = true, hl = true, plus = true, minus = true, eqv = true;
  json wha = nullptr, whl = nullptr, wplus = nullptr, wminus = nullptr, weqv = nullptr;
  for (int a = 0; a < n; ++a) {
    if (ha && !pc.poisson(H, A[a]).is_zero()) ha = false, wha = {{"u", a}};
    for (int b = a + 1; b < n; ++b) {
      QElement u = QElement::basis(alg, a), v = QElement::basis(alg, b);
      PhaseRational L = angular(pc, u, v);
      if (hl && !pc.poisson(H, L).is_zero()) hl = false, whl = {{"u", a}, {"v", b}};
      PhaseRational AA = pc.poisson(A[a], A[b]);
      PhaseRational HL2 = pc.scale(pc.mul(H, L), Rational(2));
      if (plus && !pc.add(AA, HL2).is_zero()) plus = false, wplus = {{"u", a}, {"v", b}, {"residual", "nonzero"}};
      if (minus && !pc.sub(AA, HL2).is_zero()) minus = false, wminus = {{"u", a}, {"v", b}};
      Matrix<Rational> D = commutator(mult_matrix(u), mult_matrix(v));
      for (int c = 0; c < n && eqv; ++c) {
        QElement dz = apply(D, QElement::basis(alg, c));
        if (!(pc.poisson(L, A[c]) == classical_lenz(pc, dz))) eqv = false, weqv = {{"u", a}, {"v", b}, {"z", c}};
      }
    }
  }
  std::vector<Check> out = {
      Check::exact("poisson.lenz.H_A", ha, wha),
      Check::exact("poisson.lenz.H_L", hl, whl),
      Check::exact("poisson.lenz.AA-2HL", minus, wminus),
      Check::exact("poisson.lenz.equivariance", eqv, weqv),
  };
  if (with_plus) out.push_back(Check::exact("poisson.lenz.AA+2HL", plus, wplus));
  return out;
}

/// Largest algebra dimension for which the Lenz checks run in the suite.
inline constexpr int kLenzMaxDim = 6;

inline std::vector<Task> poisson_tasks(const AlgebraPtr& alg, const SuiteParams& P) {
  std::vector<Task> t;
  t.push_back({"poisson.moments", [alg, P](Engine& eng) { return verify_poisson_tkk(alg, P.trials, eng); }});
  t.push_back({"poisson.bracket", [alg, P](Engine& eng) {
                 PhaseSpace ps(alg);
                 const int n = alg->dim();
                 auto rnd = [&] {
                   PhasePoly f = ps.zero();
                   for (int k = 0; k < 4; ++k) {
                     PhasePoly m = ps.constant(random_rational(eng, 3, 2));
                     for (int d = 0; d < 2; ++d) m = m * PhasePoly::variable(ps.nvars(), uniform_int(eng, 0, 2 * n - 1));
                     f += m;
                   }
                   return f;
                 };
                 bool jac = true, anti = true;
                 for (int i = 0; i < P.trials; ++i) {
                   PhasePoly f = rnd(), g = rnd(), h = rnd();
                   anti = anti && (ps.poisson(f, g) + ps.poisson(g, f)).is_zero() && ps.poisson(f, f).is_zero();
                   jac = jac && (ps.poisson(f, ps.poisson(g, h)) + ps.poisson(g, ps.poisson(h, f)) +
                                 ps.poisson(h, ps.poisson(f, g)))
                                    .is_zero();
                 }
                 bool canon = ps.poisson(ps.x(0), ps.p(0)) == ps.constant(Rational(1));
                 return std::vector<Check>{Check::exact("poisson.canonical", canon),
                                           Check::exact("poisson.antisymmetry", anti),
                                           Check::exact("poisson.jacobi", jac)};
               }});
  t.push_back({"poisson.lenz", [alg](Engine&) {
                 if (alg->dim() > kLenzMaxDim) {
                   std::vector<Check> s;
                   for (auto nm : {"poisson.lenz.H_A", "poisson.lenz.H_L", "poisson.lenz.AA-2HL", "poisson.lenz.equivariance"})
                     s.push_back(Check::skipped(nm, "runs for n <= " + std::to_string(kLenzMaxDim)));
                   return s;
                 }
                 return lenz_checks(alg);
               }});
  return t;
}

// ---------------------------------------------------------------------------
// operators

inline std::vector<Rational> default_operator_nus(const Algebra&) {
  return {Rational(0), ratio(1, 2), Rational(1), ratio(7, 3)};
}

inline std::vector<Task> operator_tasks(const AlgebraPtr& alg, const SuiteParams& P) {
  std::vector<Task> t;
  auto nus = P.nus.empty() ? default_operator_nus(*alg) : P.nus;
  for (const auto& nu : nus) {
    std::string tag = "operators.nu=" + to_string(nu) + ".";
    t.push_back({tag + "tkk", [alg, P, nu, tag](Engine& eng) {
                   auto cs = verify_tkk_ops(alg, nu, P.trials, eng);
                   for (auto& c : cs) c.name = tag + c.name;
                   return cs;
                 }});
    t.push_back({tag + "grading", [alg, P, nu, tag](Engine&) {
                   std::vector<Check> cs;
                   for (unsigned I = 0; I <= P.levels; ++I) cs.push_back(he_grading_check(alg, nu, I));
                   for (auto& c : lowest_weight_check(alg, nu)) cs.push_back(std::move(c));
                   for (auto& c : cs) c.name = tag + c.name;
                   return cs;
                 }});
  }
  return t;
}

// ---------------------------------------------------------------------------
// cone

/// A discrete and two continuous Wallach points per cone rank.
inline std::vector<Rational> wallach_samples(const Algebra& alg, int k) {
  const int rho = alg.rank(), d = alg.degree();
  if (k < rho) return {ratio(k * d, 2)};
  Rational thr = ratio((rho - 1) * d, 2);
  return {thr + ratio(1, 3), ratio(alg.dim(), rho), thr + 3};
}

inline std::vector<Check> cone_checks(const AlgebraPtr& alg, int k, int points, double tol, Engine& eng) {
  ConeGeometry G(alg, k);
  const int n = alg->dim(), rho = alg->rank(), delta = alg->degree();
  const std::string pre = "cone.k=" + std::to_string(k) + ".";
  ScalarField lp = G.log_phi_field(k);
  PhiFunction phik = phi_k_function(G);
  const int phi_deg = delta * k * (k - 1) / 2 + (delta - 1) * k + 2 - G.dimension();
  bool rank_ok = true;
  json rank_w = nullptr;
  detail::WorstCase frame, proj, dual, kep, routes, lin, sym, lap1, lap2, lap0, detw, phih, kinetic;
  for (int t = 0; t < points; ++t) {
    ConePoint p = G.sample(eng);
    json wit = {{"point", t}, {"a", p.a}, {"x", detail::vec_json(p.X)}};
    if (p.rank != G.dimension() && rank_ok) rank_ok = false, rank_w = wit;
    Eigen::VectorXd recon = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < k; ++i) recon += p.a[i] * p.frame[i];
    frame.update((recon - p.X).cwiseAbs().maxCoeff(), wit);
    proj.update(std::max((p.projector * p.projector - p.projector).cwiseAbs().maxCoeff(),
                         (p.pinv * p.Lx - p.projector).cwiseAbs().maxCoeff()),
                wit);
    dual.update((G.metric_operator(p) * G.co_metric_operator(p) - p.projector).cwiseAbs().maxCoeff(), wit);
    Eigen::VectorXd u = Eigen::VectorXd::NullaryExpr(n, [&] { return uniform_real(eng, -1.0, 1.0); });
    Eigen::VectorXd v = Eigen::VectorXd::NullaryExpr(n, [&] { return uniform_real(eng, -1.0, 1.0); });
    if (k == 1) {
      Eigen::VectorXd pu = p.projector * u, pv = p.projector * v;
      double want = 2.0 / rho * pu.dot(pv) - G.identity().dot(pu) * G.identity().dot(pv);
      kep.update(std::abs(G.canonical_metric(p, pu, pv) - want) / std::max(1e-300, std::abs(want) + pu.norm() * pv.norm()),
                 wit);
      // <pi|L_x|pi>/r against <x|pi^2>/r with pi^2 formed by the product
      kinetic.update(detail::rel_err(G.co_metric(p, u, u), p.X.dot(G.mul(u, u)) / p.r), wit);
    }
    double la = G.lambda_direct(p, u), lb = G.lambda_phi(p, u, lp);
    routes.update(detail::rel_err(la, lb), wit);
    lin.update(std::abs(G.lambda_direct(p, u + v) - la - G.lambda_direct(p, v)), wit);
    if (t < std::max(1, points / 10)) {
      auto lam_at = [&](const Eigen::VectorXd& w, const Eigen::VectorXd& dir, double h) {
        Eigen::MatrixXd E = (-h * G.L(dir)).exp();
        return G.lambda_direct(G.from_ortho_point(E * p.X), w);
      };
      auto hat = [&](const Eigen::VectorXd& dir, const Eigen::VectorXd& w) {
        auto D = [&](double h) { return (lam_at(w, dir, h) - lam_at(w, dir, -h)) / (2 * h); };
        const double h = 1e-5;
        return (4 * D(h / 2) - D(h)) / 3;
      };
      sym.update(std::abs(hat(u, v) - hat(v, u)), wit);
    }
    // r Delta on linear and quadratic polynomials
    int ia = uniform_int(eng, 0, n - 1), ib = uniform_int(eng, 0, n - 1);
    ScalarField fa(n), fb(n), fab(n), one(n);
    CoordPoly ya = CoordPoly::variable(n, ia), yb = CoordPoly::variable(n, ib);
    const auto& sg = G.sqrt_gram();
    fa.add_poly(ya, sg[ia]);
    fb.add_poly(yb, sg[ib]);
    fab.add_poly(ya * yb, sg[ia] * sg[ib]);
    one.add_constant(1);
    Eigen::VectorXd ua = Eigen::VectorXd::Unit(n, ia), ub = Eigen::VectorXd::Unit(n, ib);
    double Qa = G.r_laplace_apply(fa, p), Qb = G.r_laplace_apply(fb, p), Qab = G.r_laplace_apply(fab, p);
    lap1.update(detail::rel_err(Qa, 2 * G.lambda_direct(p, ua)), wit);
    lap2.update(detail::rel_err(Qab - p.X[ia] * Qb - p.X[ib] * Qa, 2 * G.mul(ua, ub).dot(p.X)), wit);
    lap0.update(std::abs(G.r_laplace_apply(one, p)), wit);
    if (k == rho) {
      double pa = 1;
      for (double ai : p.a) pa *= ai;
      detw.update(detail::rel_err(det(FElement(alg, p.y)), pa), wit);
    }
    double s = uniform_real(eng, 0.5, 2.0);
    double l1 = phik.log_phi.jet(p.y).value, l2 = phik.log_phi.jet(G.from_ortho(s * p.X)).value;
    phih.update(std::abs(l2 - l1 - phi_deg * std::log(s)), wit);
  }
  std::vector<Check> out = {
      Check::exact(pre + "rank=D_k", rank_ok, rank_w),
      Check::numeric(pre + "frame_reconstruction", frame.err, 1e-2 * tol, frame.witness),
      Check::numeric(pre + "projector", proj.err, 1e-2 * tol, proj.witness),
      Check::numeric(pre + "metric_duality", dual.err, 1e-2 * tol, dual.witness),
      Check::numeric(pre + "lambda_routes", routes.err, tol, routes.witness),
      Check::numeric(pre + "lambda_linearity", lin.err, 1e-2 * tol, lin.witness),
      Check::numeric(pre + "lambda_symmetry", sym.err, 100 * tol, sym.witness),
      Check::numeric(pre + "rlaplace_constant", lap0.err, tol, lap0.witness),
      Check::numeric(pre + "rlaplace_linear", lap1.err, tol, lap1.witness),
      Check::numeric(pre + "rlaplace_commutator", lap2.err, tol, lap2.witness),
      Check::numeric(pre + "phi_homogeneity", phih.err, tol, phih.witness),
  };
  if (k == 1) {
    out.push_back(Check::numeric(pre + "kepler_metric", kep.err, 0.1 * tol, kep.witness));
    out.push_back(Check::numeric(pre + "kinetic_form", kinetic.err, tol, kinetic.witness));
  }
  if (k == rho) {
    out.push_back(Check::numeric(pre + "det=prod_a", detw.err, tol, detw.witness));
    ConePoint pe = G.from_ortho_point(G.identity());
    out.push_back(Check::numeric(pre + "lambda_e_at_e", std::abs(G.lambda_direct(pe, G.identity()) - (n - 1) / 2.0),
                                 tol));
  }
  // phi(nu) and potentials at the Wallach points supported on this cone
  for (const Rational& nu : wallach_samples(*alg, k)) {
    const std::string tag = pre + "nu=" + to_string(nu) + ".";
    detail::WorstCase cross, vrel, homog;
    bool positive = true;
    PhiFunction phi = phi_function(G, nu);
    Eigen::VectorXd ek = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < k; ++i) ek += G.frame_vector(i);
    double at_e = std::exp(phi.log_phi.jet(G.from_ortho(ek)).value);
    for (int t = 0; t < std::max(1, points / 5); ++t) {
      ConePoint p = G.sample(eng);
      json wit = {{"a", p.a}, {"x", detail::vec_json(p.X)}};
      positive = positive && phi_value(G, nu, p) > 0;
      Potential U = quantum_potential(G, nu, p);
      cross.update(detail::rel_err(U.U, quantum_potential_conjugation(G, nu, p)), wit);
      vrel.update(detail::rel_err(U.V, U.U / (2 * p.r)), wit);
      double s = uniform_real(eng, 0.5, 2.0);
      ConePoint q = G.from_ortho_point(s * p.X);
      q.a = p.a;
      for (auto& ai : q.a) ai *= s;
      Potential Us = quantum_potential(G, nu, q);
      homog.update(detail::rel_err(Us.U / q.r * s * s, U.U / p.r), wit);
    }
    out.push_back(Check::exact(tag + "phi_positive", positive));
    out.push_back(Check::numeric(tag + "phi_at_e[k]", std::abs(at_e - 1), tol));
    out.push_back(Check::numeric(tag + "potential_crosscheck", cross.err, tol, cross.witness));
    out.push_back(Check::numeric(tag + "V=U/2r", vrel.err, 1e-2 * tol, vrel.witness));
    out.push_back(Check::numeric(tag + "potential_homogeneity", homog.err, 10 * tol, homog.witness));
  }
  return out;
}

inline std::vector<Task> cone_tasks(const AlgebraPtr& alg, const SuiteParams& P) {
  std::vector<Task> t;
  for (int k = 1; k <= alg->rank(); ++k)
    t.push_back({"cone.k=" + std::to_string(k), [alg, P, k](Engine& eng) { return cone_checks(alg, k, P.trials, P.tol, eng); }});
  return t;
}

// ---------------------------------------------------------------------------
// measure

/// Largest rank for which the nested integrability quadrature runs.
inline constexpr int kIntegrabilityMaxRank = 3;

inline std::vector<Task> measure_tasks(const AlgebraPtr& alg, const SuiteParams&) {
  std::vector<Task> t;
  for (int k = 1; k <= alg->rank(); ++k)
    t.push_back({"measure.k=" + std::to_string(k), [alg, k](Engine& eng) {
                   std::vector<Check> cs{measure_crosscheck(alg, k, 10, eng)};
                   std::vector<double> a(k);
                   for (int i = 0; i < k; ++i) a[i] = 2.0 - 0.5 * i;  // distinct, ordered
                   if (k == 1) {
                     double want = std::pow(a[0], 0.5 * alg->degree() * alg->rank() - 1);
                     cs.push_back(Check::numeric("measure.k=1.density_closed_form",
                                                 detail::rel_err(radial_density(alg->rank(), alg->degree(), a), want), 1e-14));
                   }
                   return cs;
                 }});
  const int rho = alg->rank(), d = alg->degree();
  const double thr = 0.5 * (rho - 1) * d;
  for (double off : {-0.5, -0.25, 0.0, 0.25, 0.5, 1.0}) {
    double nu = thr + off;
    if (nu <= 0) continue;
    std::ostringstream nm;
    nm << "measure.integrability.nu=" << nu;
    t.push_back({nm.str(), [alg, nu, rho](Engine&) {
                   if (rho > kIntegrabilityMaxRank) {
                     std::ostringstream s;
                     s << "measure.integrability.nu=" << nu;
                     return std::vector<Check>{Check::skipped(s.str(), "nested quadrature runs for rank <= 3")};
                   }
                   auto cs = integrability_check(*alg, nu);
                   for (auto& c : cs) c.name = "measure." + c.name;
                   return cs;
                 }});
  }
  return t;
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"jordan", "tkk", "poisson", "operators", "cone", "measure"};
  return names;
}

inline std::vector<Task> suite_tasks(const std::string& suite, const AlgebraPtr& alg, const SuiteParams& P) {
  if (suite == "jordan") return jordan_tasks(alg, P);
  if (suite == "tkk") return tkk_tasks(alg, P);
  if (suite == "poisson") return poisson_tasks(alg, P);
  if (suite == "operators") return operator_tasks(alg, P);
  if (suite == "cone") return cone_tasks(alg, P);
  if (suite == "measure") return measure_tasks(alg, P);
  if (suite == "all") {
    std::vector<Task> all;
    for (const auto& s : suite_names()) {
      auto ts = suite_tasks(s, alg, P);
      all.insert(all.end(), std::make_move_iterator(ts.begin()), std::make_move_iterator(ts.end()));
    }
    return all;
  }
  throw std::invalid_argument("unknown suite '" + suite + "' (jordan, tkk, poisson, operators, cone, measure, all)");
}

}  // namespace jk
