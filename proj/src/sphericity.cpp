#include "orbitkit/sphericity.hpp"

#include <algorithm>
#include <future>

#include "orbitkit/errors.hpp"

namespace orbitkit {

namespace {

// Coordinates of y in the basis (which must span it).
QVector coordinates(const std::vector<QMatrix>& basis, const QMatrix& y) {
  const QVector target = flatten(y);
  const std::size_t n = basis.size(), len = target.size();
  std::vector<QVector> rows(len, QVector(n + 1));
  for (std::size_t k = 0; k < n; ++k) {
    const QVector b = flatten(basis[k]);
    for (std::size_t i = 0; i < len; ++i) rows[i][k] = b[i];
  }
  for (std::size_t i = 0; i < len; ++i) rows[i][n] = target[i];
  auto piv = rref(rows);
  if (!piv.empty() && piv.back() == n) throw InputError("element is not in the span");
  QVector c(n);
  for (std::size_t r = 0; r < piv.size(); ++r) c[piv[r]] = rows[r][n];
  return c;
}

QMatrix apply(const Embedding& e, const QMatrix& y) {
  const QVector c = coordinates(e.h->basis(), y);
  QMatrix out(e.g->matrix_size(), e.g->matrix_size());
  for (std::size_t k = 0; k < c.size(); ++k)
    if (sgn(c[k]) != 0) out += e.images[k] * c[k];
  return out;
}

OrbitLabel concat(const OrbitLabel& a, const OrbitLabel& b) {
  OrbitLabel l = a;
  l.insert(l.end(), b.begin(), b.end());
  return l;
}

Complexity negate(const Complexity& c) {
  if (c.state != Complexity::State::Finite) return Complexity::unknown();
  return Complexity::finite(-c.twice, c.exact);
}

bool leq(const Complexity& a, const Complexity& b) {
  if (a.state == Complexity::State::NegInfinity) return true;
  if (b.state == Complexity::State::NegInfinity) return false;
  return a.twice <= b.twice;
}

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F f) {
  std::vector<std::future<T>> futs;
  for (std::size_t i = 0; i < n; ++i) futs.push_back(std::async(std::launch::async, f, i));
  std::vector<T> out;
  for (auto& fu : futs) out.push_back(fu.get());
  return out;
}

}  // namespace

std::string Complexity::to_string() const {
  switch (state) {
    case State::NegInfinity: return "-inf";
    case State::Unknown: return "unknown";
    case State::Finite: break;
  }
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

Complexity cmax(const Complexity& a, const Complexity& b) {
  using S = Complexity::State;
  if (a.state == S::Unknown || b.state == S::Unknown) return Complexity::unknown();
  if (a.state == S::NegInfinity) return b;
  if (b.state == S::NegInfinity) return a;
  return Complexity::finite(std::max(a.twice, b.twice), a.exact && b.exact);
}

Complexity cadd(const Complexity& a, const Complexity& b) {
  using S = Complexity::State;
  if (a.state == S::Unknown || b.state == S::Unknown) return Complexity::unknown();
  if (a.state == S::NegInfinity || b.state == S::NegInfinity) return Complexity::neg_infinity();
  return Complexity::finite(a.twice + b.twice, a.exact && b.exact);
}

OrbitComplexity complexity_on(const OrbitLabel& o, const Subspace& v, const EngineOptions& opt) {
  OrbitComplexity r;
  r.orbit = o;
  r.orbit_dim = orbit_dim(v.ambient->type(), o);
  try {
    r.open = open_stratum_dim(o, v, opt);
  } catch (const BudgetExceeded& ex) {
    r.error = ex.what();
    r.open.cert.kind = CertKind::Unknown;
    r.c = Complexity::unknown();
    return r;
  }
  switch (r.open.cert.kind) {
    case CertKind::ExactGroebner:
    case CertKind::SampledLowerBound:
      r.c = r.open.value < 0 ? Complexity::neg_infinity()
                             : Complexity::finite(2 * r.open.value - r.orbit_dim,
                                                  r.open.cert.kind == CertKind::ExactGroebner);
      break;
    case CertKind::Empty: r.c = Complexity::neg_infinity(); break;
    case CertKind::Unknown: r.c = Complexity::unknown(); break;
  }
  return r;
}

OrbitComplexity complexity(const OrbitLabel& o, const Subspace& h, const EngineOptions& opt) {
  return complexity_on(o, annihilator(h), opt);
}

ComplexityReport complexity_report(const OrbitSet& xi, const Subspace& h, const EngineOptions& opt) {
  const Subspace v = annihilator(h);
  ComplexityReport rep;
  rep.per_orbit = parallel_map<OrbitComplexity>(xi.orbits.size(),
                                                [&](std::size_t i) { return complexity_on(xi.orbits[i], v, opt); });
  rep.c_xi = Complexity::neg_infinity();
  for (const auto& oc : rep.per_orbit) rep.c_xi = cmax(rep.c_xi, oc.c);
  return rep;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Spherical: return "Spherical";
    case Verdict::NotSpherical: return "NotSpherical";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

std::string agreement_name(Agreement a) {
  switch (a) {
    case Agreement::Agree: return "Agree";
    case Agreement::Disagree: return "Disagree";
    case Agreement::Inconclusive: return "Inconclusive";
  }
  return "?";
}

SphericityVerdict xi_spherical_on(const OrbitSet& xi, const Subspace& v, const EngineOptions& opt) {
  if (!xi.closed) throw InputError("orbit set must be downward closed");
  const LieType& t = v.ambient->type();
  SphericityVerdict out;
  out.per_orbit = parallel_map<OrbitCheck>(xi.orbits.size(), [&](std::size_t i) {
    OrbitCheck c;
    c.orbit = xi.orbits[i];
    c.orbit_dim = orbit_dim(t, c.orbit);
    try {
      c.closed = closure_intersection_dim(c.orbit, v, opt);
      c.passes = 2 * c.closed.value <= c.orbit_dim;
      if (!c.passes) c.open = open_stratum_dim(c.orbit, v, opt);
    } catch (const BudgetExceeded& ex) {
      c.error = ex.what();
    }
    return c;
  });
  bool all = true;
  for (const auto& c : out.per_orbit) {
    if (c.passes) continue;
    all = false;
    const bool certified = c.open && (c.open->cert.kind == CertKind::ExactGroebner ||
                                      c.open->cert.kind == CertKind::SampledLowerBound);
    if (certified && 2 * c.open->value > c.orbit_dim) {
      if (!out.witness) out.witness = c.orbit;
    } else {
      out.blocking.push_back(c.orbit);
      out.budget_hit = out.budget_hit || !c.error.empty();
    }
  }
  out.verdict = all ? Verdict::Spherical : out.witness ? Verdict::NotSpherical : Verdict::Unknown;
  return out;
}

SphericityVerdict xi_spherical(const OrbitSet& xi, const Subspace& h, const EngineOptions& opt) {
  return xi_spherical_on(xi, annihilator(h), opt);
}

CrossCheck richardson_cross_check(const AlgebraPtr& g, const std::vector<std::vector<int>>& p, const Subspace& h,
                                  const EngineOptions& opt) {
  if (h.ambient->type() != g->type()) throw InputError("subgroup and parabolic live in different algebras");
  const Parabolic par = parabolic(g, p);
  CrossCheck cc;
  cc.richardson = richardson_partition(g, par, opt.trials, opt.seed);
  cc.route_a = xi_spherical(closure(g->type(), cc.richardson), h, opt);
  MomentFiberInstance inst{{annihilator(h), par.nilradical}};
  cc.base_dim = static_cast<int>(inst.base_dim());
  cc.route_b = moment_fiber_lower_bound(inst, opt.trials, opt.seed);
  const bool b_refutes = cc.route_b.value > cc.base_dim;
  switch (cc.route_a.verdict) {
    case Verdict::Spherical:
      cc.agreement = b_refutes ? Agreement::Disagree : Agreement::Agree;
      break;
    case Verdict::NotSpherical:
      cc.agreement = b_refutes ? Agreement::Agree : Agreement::Inconclusive;
      break;
    case Verdict::Unknown: cc.agreement = Agreement::Inconclusive; break;
  }
  if (cc.agreement == Agreement::Agree) cc.value = cc.route_a.verdict;
  return cc;
}

AlgebraPtr Embedding::product() const { return orbitkit::product(g, h); }

Subspace Embedding::delta() const { return graph_subalgebra(g, h, images); }

Subspace Embedding::image() const { return make_subspace(g, images); }

Subspace Embedding::restriction_graph() const {
  // pi(X) in h with tr(pi(X) Z) = tr(X phi(Z)) for all Z in h
  const std::size_t m = h->dim();
  std::vector<QVector> gram(m, QVector(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) gram[i][j] = trace_pairing(h->basis()[i], h->basis()[j]);
  QMatrix gm(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) gm(i, j) = gram[i][j];
  const QMatrix ginv = inverse(gm);
  AlgebraPtr gh = product();
  const std::size_t n = gh->matrix_size(), off = g->matrix_size();
  std::vector<QMatrix> elems;
  for (const auto& x : g->basis()) {
    QMatrix pi(h->matrix_size(), h->matrix_size());
    for (std::size_t i = 0; i < m; ++i) {
      Rational ci = 0;
      for (std::size_t j = 0; j < m; ++j) ci += ginv(i, j) * trace_pairing(x, images[j]);
      if (sgn(ci) != 0) pi += h->basis()[i] * ci;
    }
    QMatrix el(n, n);
    el.set_block(0, x);
    el.set_block(off, pi);
    elems.push_back(std::move(el));
  }
  return make_subspace(gh, elems);
}

Embedding levi_embedding(const AlgebraPtr& g, const std::vector<int>& composition) {
  if (g->type().factors.size() != 1 || g->type().factors[0].family != Family::A)
    throw InputError("levi_embedding needs a single gl factor");
  validate_composition(g->type().factors[0], composition);
  LieType ht;
  for (int c : composition) ht.factors.push_back(Factor{Family::A, c - 1});
  Embedding e{g, build_classical(ht), {}};
  e.images = e.h->basis();
  return e;
}

namespace {

Verdict verdict_of_complexities(const std::vector<Complexity>& cs) {
  bool unknown = false;
  for (const auto& c : cs) {
    if (c.state == Complexity::State::Unknown) {
      unknown = true;
      continue;
    }
    if (c.is_finite() && c.twice > 0) return Verdict::NotSpherical;  // lower bounds suffice here
    if (c.is_finite() && !c.exact) unknown = true;
  }
  return unknown ? Verdict::Unknown : Verdict::Spherical;
}

}  // namespace

BranchingReport branching_check(const Embedding& e, const OrbitLabel& o1, const OrbitLabel& o2,
                                const std::optional<std::vector<std::vector<int>>>& p,
                                const std::optional<std::vector<std::vector<int>>>& q, const EngineOptions& opt) {
  if (p.has_value() != q.has_value()) throw InputError("Richardson branching needs both parabolics");
  BranchingReport rep;
  const AlgebraPtr gh = e.product();
  const Subspace delta = e.delta();
  rep.condition_b = xi_spherical(closure(gh->type(), concat(o1, o2)), delta, opt);
  if (!p) return rep;

  const Parabolic pp = parabolic(e.g, *p);
  const Parabolic pq = parabolic(e.h, *q);
  if (richardson_partition(e.g, pp, opt.trials, opt.seed) != o1)
    throw InputError("first orbit is not the Richardson orbit of the given parabolic of g");
  if (richardson_partition(e.h, pq, opt.trials, opt.seed) != o2)
    throw InputError("second orbit is not the Richardson orbit of the given parabolic of h");
  rep.richardson = true;

  std::vector<QMatrix> phi_q;
  for (const auto& y : pq.algebra.basis) phi_q.push_back(apply(e, y));
  const Subspace image_q = make_subspace(e.g, phi_q);
  rep.g_mod_q = xi_spherical(closure(e.g->type(), o1), image_q, opt);

  MomentFiberInstance inst{{pp.nilradical, annihilator(image_q)}};
  rep.double_coset_base = static_cast<int>(inst.base_dim());
  rep.double_cosets = moment_fiber_lower_bound(inst, opt.trials, opt.seed);

  // c_{O2'}(G/P as an H-space) = max_{O1'} [c_{O1' x O2'}(G x H / Delta H) + c_{O1'}(G/P)]
  std::vector<Complexity> per_o2;
  const Subspace delta_perp = annihilator(delta);
  for (const auto& o2p : closure(e.h->type(), o2).orbits) {
    Complexity best = Complexity::neg_infinity();
    for (const auto& o1p : closure(e.g->type(), o1).orbits) {
      const Complexity pair = complexity_on(concat(o1p, o2p), delta_perp, opt).c;
      const Complexity gp = complexity(o1p, pp.algebra, opt).c;
      best = cmax(best, cadd(pair, gp));
    }
    per_o2.push_back(best);
  }
  rep.g_mod_p_as_h_space = verdict_of_complexities(per_o2);

  std::vector<Verdict> decided;
  for (Verdict v : {rep.condition_b.verdict, rep.g_mod_q->verdict, *rep.g_mod_p_as_h_space})
    if (v != Verdict::Unknown) decided.push_back(v);
  if (rep.double_cosets->value > rep.double_coset_base) decided.push_back(Verdict::NotSpherical);
  const bool conflict = std::any_of(decided.begin(), decided.end(), [&](Verdict v) { return v != decided.front(); });
  if (conflict)
    rep.agreement = Agreement::Disagree;
  else if (rep.condition_b.verdict != Verdict::Unknown && rep.g_mod_q->verdict != Verdict::Unknown &&
           *rep.g_mod_p_as_h_space != Verdict::Unknown)
    rep.agreement = Agreement::Agree;
  return rep;
}

Sandwich branch_complexity_sandwich(const Embedding& e, const std::vector<std::vector<int>>& p, const OrbitLabel& o2,
                                    const EngineOptions& opt) {
  const Parabolic pp = parabolic(e.g, p);
  const OrbitLabel o1 = richardson_partition(e.g, pp, opt.trials, opt.seed);
  const Subspace delta_perp = annihilator(e.delta());
  const Subspace upsilon = e.restriction_graph();
  const auto below1 = closure(e.g->type(), o1).orbits;
  const auto below2 = closure(e.h->type(), o2).orbits;

  std::vector<Complexity> cp;
  for (const auto& o : below1) cp.push_back(complexity(o, pp.algebra, opt).c);

  Sandwich s;
  s.left = Complexity::neg_infinity();
  s.middle = Complexity::neg_infinity();
  for (const auto& b : below2)
    for (std::size_t i = 0; i < below1.size(); ++i) {
      const OrbitLabel pair = concat(below1[i], b);
      s.middle = cmax(s.middle, complexity_on(pair, delta_perp, opt).c);
      s.left = cmax(s.left, cadd(complexity_on(pair, upsilon, opt).c, cp[i]));
    }
  std::optional<Complexity> min_cp;
  for (const auto& c : cp) {
    if (c.state == Complexity::State::NegInfinity) continue;
    if (c.state == Complexity::State::Unknown) {
      min_cp = Complexity::unknown();
      break;
    }
    if (!min_cp || c.twice < min_cp->twice) min_cp = c;
  }
  s.right = min_cp ? cadd(s.left, negate(*min_cp)) : Complexity::unknown();

  const bool exact = s.left.state != Complexity::State::Unknown && s.middle.state != Complexity::State::Unknown &&
                     s.right.state != Complexity::State::Unknown && s.left.exact && s.middle.exact && s.right.exact;
  if (!exact)
    s.holds = Agreement::Inconclusive;
  else
    s.holds = leq(s.left, s.middle) && leq(s.middle, s.right) ? Agreement::Agree : Agreement::Disagree;
  return s;
}

}  // namespace orbitkit
