#include "orbitkit/geometry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>

#include "orbitkit/errors.hpp"

namespace orbitkit {

namespace {

int rank_at(const Partition& p, int k) {
  int s = 0;
  for (int x : p.parts) s += std::max(x - k, 0);
  return s;
}

// Closure equations of one orbit label on the coordinates of V, mod p.
struct ClosureSystem {
  PrimeField field;
  Ideal ideal;
  // powers[f][k] = X_f^k for the factor block of X = sum y_i V_i
  std::vector<std::vector<PolyMatrix>> powers;
};

ClosureSystem build_closure(const OrbitLabel& l, const Subspace& v, const PrimeField& f) {
  const LieType& t = v.ambient->type();
  if (l.size() != t.factors.size()) throw InputError("orbit label does not match the ambient type");
  if (v.dim() > kMaxVars) throw BudgetExceeded("subspace of dimension " + std::to_string(v.dim()) + " exceeds 64 variables");
  ClosureSystem s{f, Ideal{f, v.dim(), {}}, {}};
  std::vector<ModMatrix> basis;
  for (const auto& b : v.basis) basis.push_back(to_mod(b, f));
  for (std::size_t fi = 0; fi < t.factors.size(); ++fi) {
    const Factor& fac = t.factors[fi];
    const Partition& lam = l[fi];
    const std::size_t n = fac.size(), off = t.offset(fi);
    PolyMatrix x(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Term> terms;
        for (std::size_t k = 0; k < basis.size(); ++k)
          if (std::uint64_t c = basis[k][off + i][off + j]) terms.push_back({Monomial::var(k), c});
        x(i, j) = Poly::from_terms(std::move(terms), f);
      }
    const int top = lam.parts.front();
    const auto r = rank_sequence(lam);
    std::vector<PolyMatrix> pw{PolyMatrix(n, n), x};
    for (std::size_t i = 0; i < n; ++i) pw[0](i, i) = Poly::constant(1);
    for (int k = 2; k <= top; ++k) pw.push_back(pw.back().mul(x, f));
    for (const auto& p : pw[top].a) s.ideal.add(p);
    for (int k = 1; k < top; ++k) {
      // rank X^k <= r_k is implied by X^top = 0 unless some admissible type exceeds it
      bool needed = false;
      for (const auto& mu : orbit_catalog(fac)) {
        if (mu.parts.front() > top) continue;
        if (rank_at(mu, k) > r[k - 1]) needed = true;
      }
      if (needed)
        for (auto& m : minors(pw[k], r[k - 1] + 1, f)) s.ideal.add(std::move(m));
    }
    s.powers.push_back(std::move(pw));
  }
  return s;
}

std::string memo_key(const std::string& what, const OrbitLabel& l, const Subspace& v, const EngineOptions& opt) {
  return what + "|" + label_string(l) + "|" + v.canonical_key() + "|" + std::to_string(opt.groebner.pair_budget) + "/" +
         std::to_string(opt.groebner.max_degree) + "/" + std::to_string(opt.minor_budget) + "/" +
         std::to_string(opt.seed);
}

std::mutex g_memo_mu;
std::map<std::string, CertifiedDim> g_memo;

std::optional<CertifiedDim> memo_get(const std::string& k) {
  std::lock_guard<std::mutex> lock(g_memo_mu);
  if (auto it = g_memo.find(k); it != g_memo.end()) return it->second;
  return std::nullopt;
}

void memo_put(const std::string& k, const CertifiedDim& d) {
  std::lock_guard<std::mutex> lock(g_memo_mu);
  g_memo.emplace(k, d);
}

// (factor, k) pairs whose rank condition separates l from every smaller label.
std::vector<std::pair<std::size_t, int>> essential_conditions(const LieType& t, const OrbitLabel& l) {
  std::vector<OrbitLabel> below;
  for (const auto& mu : closure(t, l).orbits)
    if (mu != l) below.push_back(mu);
  std::vector<std::pair<std::size_t, int>> chosen;
  while (!below.empty()) {
    std::pair<std::size_t, int> best{0, 0};
    std::size_t best_count = 0;
    for (std::size_t fi = 0; fi < l.size(); ++fi) {
      const auto r = rank_sequence(l[fi]);
      for (int k = 1; k <= static_cast<int>(r.size()); ++k) {
        std::size_t count = 0;
        for (const auto& mu : below) {
          count += rank_at(mu[fi], k) < r[k - 1];
        }
        if (count > best_count) {
          best_count = count;
          best = {fi, k};
        }
      }
    }
    if (best_count == 0) throw ConstructionError("rank conditions do not separate " + label_string(l));
    chosen.push_back(best);
    const auto r = rank_sequence(l[best.first]);
    std::erase_if(below, [&](const OrbitLabel& mu) {
      return rank_at(mu[best.first], best.second) < r[best.second - 1];
    });
  }
  return chosen;
}

// r_k x r_k minors of X_f^k for each essential condition, per prime.
struct StratumData {
  ClosureSystem sys;
  std::vector<std::vector<Poly>> witnesses;
};

}  // namespace

std::string cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::ExactGroebner: return "ExactGroebner";
    case CertKind::SampledLowerBound: return "SampledLowerBound";
    case CertKind::Empty: return "Empty";
    case CertKind::Unknown: return "Unknown";
  }
  return "?";
}

CertifiedDim closure_intersection_dim(const OrbitLabel& l, const Subspace& v, const EngineOptions& opt) {
  const std::string key = memo_key("closed", l, v, opt);
  if (auto hit = memo_get(key)) return *hit;
  auto r = two_prime_dim([&](const PrimeField& f) { return build_closure(l, v, f).ideal; }, opt.groebner);
  CertifiedDim d;
  d.value = r.value;
  d.cert.kind = CertKind::ExactGroebner;
  d.cert.primes = r.primes;
  d.cert.primes_agreed = r.agreed;
  memo_put(key, d);
  return d;
}

CertifiedDim open_stratum_dim(const OrbitLabel& l, const Subspace& v, const EngineOptions& opt) {
  const std::string key = memo_key("open", l, v, opt);
  if (auto hit = memo_get(key)) return *hit;
  const LieType& t = v.ambient->type();
  const CertifiedDim closed = closure_intersection_dim(l, v, opt);

  CertifiedDim out;
  out.cert.seed = opt.seed;
  const auto ess = essential_conditions(t, l);
  if (ess.empty()) {
    // zero orbit: the stratum is the origin
    out.value = 0;
    out.cert = closed.cert;
    out.cert.note = "zero orbit";
    memo_put(key, out);
    return out;
  }

  std::mutex data_mu;
  std::map<std::uint64_t, StratumData> data;
  auto stratum = [&](const PrimeField& f) -> const StratumData& {
    std::lock_guard<std::mutex> lock(data_mu);
    auto it = data.find(f.p);
    if (it != data.end()) return it->second;
    StratumData d{build_closure(l, v, f), {}};
    for (auto [fi, k] : ess) {
      const auto r = rank_sequence(l[fi]);
      d.witnesses.push_back(minors(d.sys.powers[fi][k], r[k - 1], f));
    }
    return data.emplace(f.p, std::move(d)).first->second;
  };

  std::mt19937_64 rng(opt.seed);
  // generic combination coefficients, shared by all primes
  std::vector<std::vector<long long>> coeffs;
  {
    const StratumData& d0 = stratum(PrimeField{kPrime1});
    for (const auto& w : d0.witnesses) {
      coeffs.emplace_back();
      for (std::size_t m = 0; m < w.size(); ++m) coeffs.back().push_back(1 + static_cast<long long>(rng() % 1000003));
    }
  }
  auto localized = [&](const std::vector<int>& pick) {
    // pick[j] = minor index, or -1 for the generic combination
    return [&, pick](const PrimeField& f) {
      const StratumData& d = stratum(f);
      Ideal ideal = d.sys.ideal;
      for (std::size_t j = 0; j < pick.size(); ++j) {
        Poly w;
        if (pick[j] < 0) {
          for (std::size_t m = 0; m < d.witnesses[j].size(); ++m)
            w = w.add(d.witnesses[j][m].scale(f.from_int(coeffs[j][m]), f), f);
        } else {
          w = d.witnesses[j][pick[j]];
        }
        if (w.is_zero()) {
          ideal.gens = {Poly::constant(1)};
          return ideal;
        }
        ideal = localize(ideal, w);
      }
      return ideal;
    };
  };

  std::vector<std::uint64_t> primes;
  bool agreed = true;
  auto run = [&](const std::vector<int>& pick) {
    auto r = two_prime_dim(localized(pick), opt.groebner);
    if (r.primes.size() > primes.size()) primes = r.primes;
    agreed = agreed && r.agreed;
    return r.value;
  };

  const int generic = run(std::vector<int>(ess.size(), -1));
  out.value = generic;
  out.cert.witness = "generic";
  if (generic == closed.value) {
    out.cert.kind = CertKind::ExactGroebner;
    out.cert.primes = primes;
    out.cert.primes_agreed = agreed;
    out.cert.note = "localized dimension meets the closed dimension";
    memo_put(key, out);
    return out;
  }

  // single-minor tuples: the union of these loci is exactly the stratum
  const StratumData& d0 = stratum(PrimeField{kPrime1});
  std::vector<std::vector<int>> nonzero(ess.size());
  double total = 1;
  for (std::size_t j = 0; j < ess.size(); ++j) {
    for (std::size_t m = 0; m < d0.witnesses[j].size(); ++m)
      if (!d0.witnesses[j][m].is_zero()) nonzero[j].push_back(static_cast<int>(m));
    total *= static_cast<double>(nonzero[j].size());
  }
  const bool exhaustive = total <= opt.minor_budget;
  std::vector<std::vector<int>> tuples;
  if (exhaustive) {
    std::vector<int> cur(ess.size());
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
      if (j == ess.size()) {
        tuples.push_back(cur);
        return;
      }
      for (int m : nonzero[j]) {
        cur[j] = m;
        rec(j + 1);
      }
    };
    rec(0);
  } else {
    for (int s = 0; s < opt.minor_budget; ++s) {
      std::vector<int> cur;
      for (const auto& nz : nonzero) cur.push_back(nz[rng() % nz.size()]);
      tuples.push_back(cur);
    }
  }
  int best = generic;
  std::string best_witness = "generic";
  for (const auto& tp : tuples) {
    if (best == closed.value) break;
    const int d = run(tp);
    if (d > best) {
      best = d;
      best_witness.clear();
      for (std::size_t j = 0; j < tp.size(); ++j) best_witness += (j ? "," : "") + std::to_string(tp[j]);
    }
  }
  out.value = best;
  out.cert.witness = best_witness;
  out.cert.primes = primes;
  out.cert.primes_agreed = agreed;
  out.cert.exhaustive = exhaustive;
  out.cert.trials = static_cast<int>(tuples.size());

  if (best >= 0) {
    out.cert.kind = exhaustive || best == closed.value ? CertKind::ExactGroebner : CertKind::SampledLowerBound;
    out.cert.note = exhaustive ? "all witness minor tuples localized" : "maximum over sampled localizations";
  } else {
    int boundary = -1;
    for (const auto& mu : closure(t, l).orbits)
      if (mu != l) boundary = std::max(boundary, closure_intersection_dim(mu, v, opt).value);
    if (closed.value > boundary) {
      out.cert.kind = CertKind::Unknown;
      out.cert.note = "all localizations empty but the closure exceeds its boundary";
    } else {
      out.cert.kind = CertKind::Empty;
      out.cert.note = exhaustive ? "every witness minor vanishes on the closure" : "generic and sampled localizations empty";
    }
  }
  memo_put(key, out);
  return out;
}

std::size_t MomentFiberInstance::base_dim() const {
  std::size_t d = 0;
  for (const auto& s : spaces) d += s.dim();
  return d;
}

namespace {

ModMatrix mod_identity(std::size_t n) {
  ModMatrix m(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// exp of a nilpotent matrix mod p
ModMatrix mod_exp(const ModMatrix& nmat, const PrimeField& f) {
  const std::size_t n = nmat.size();
  ModMatrix result = mod_identity(n), term = mod_identity(n);
  for (std::size_t k = 1; k < n; ++k) {
    term = mat_mul(term, nmat, f);
    const std::uint64_t invk = f.inv(k);
    for (auto& row : term)
      for (auto& x : row) x = f.mul(x, invk);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) result[i][j] = f.add(result[i][j], term[i][j]);
  }
  return result;
}

}  // namespace

CertifiedDim moment_fiber_lower_bound(const MomentFiberInstance& inst, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("trials must be >= 1");
  if (inst.spaces.empty()) throw InputError("moment fiber instance needs at least one subspace");
  const AlgebraPtr& g = inst.spaces.front().ambient;
  for (const auto& s : inst.spaces)
    if (s.ambient->type() != g->type()) throw InputError("moment fiber subspaces must share one ambient algebra");
  const PrimeField f{kPrime1};
  std::vector<std::vector<int>> ones;
  for (const auto& fac : g->type().factors) ones.push_back(std::vector<int>(fac.size(), 1));
  const Subspace upper = parabolic(build_classical(g->type()), ones).nilradical;
  std::vector<ModMatrix> up;
  for (const auto& b : upper.basis) up.push_back(to_mod(b, f));
  std::vector<std::vector<ModMatrix>> spaces;
  for (const auto& s : inst.spaces) {
    spaces.emplace_back();
    for (const auto& b : s.basis) spaces.back().push_back(to_mod(b, f));
  }
  const std::size_t n = g->matrix_size();
  std::mt19937_64 rng(seed);
  auto random_nil = [&](bool lower) {
    ModMatrix m(n, std::vector<std::uint64_t>(n, 0));
    for (const auto& b : up) {
      const std::uint64_t c = rng() % f.p;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (b[i][j]) {
            auto& slot = lower ? m[j][i] : m[i][j];
            slot = f.add(slot, f.mul(c, b[i][j]));
          }
    }
    return m;
  };
  auto negate = [&](ModMatrix m) {
    for (auto& row : m)
      for (auto& x : row) x = f.neg(x);
    return m;
  };

  int best = -1;
  for (int trial = 0; trial < trials; ++trial) {
    ModMatrix rows;
    for (const auto& sp : spaces) {
      // g = exp(N1) exp(M2) exp(N3) exp(M4), unipotent factors alternating upper/lower
      ModMatrix gm = mod_identity(n), gi = mod_identity(n);
      for (int k = 0; k < 4; ++k) {
        ModMatrix nm = random_nil(k % 2 == 1);
        gm = mat_mul(gm, mod_exp(nm, f), f);
        gi = mat_mul(mod_exp(negate(nm), f), gi, f);
      }
      for (const auto& b : sp) {
        ModMatrix c = mat_mul(mat_mul(gm, b, f), gi, f);
        std::vector<std::uint64_t> flat;
        for (const auto& row : c) flat.insert(flat.end(), row.begin(), row.end());
        rows.push_back(std::move(flat));
      }
    }
    const int fib = static_cast<int>(inst.base_dim()) - static_cast<int>(rank_mod(rows, f));
    best = best < 0 ? fib : std::min(best, fib);
  }
  CertifiedDim d;
  d.value = static_cast<int>(inst.base_dim()) + best;
  d.cert.kind = CertKind::SampledLowerBound;
  d.cert.primes = {kPrime1};
  d.cert.seed = seed;
  d.cert.trials = trials;
  d.cert.note = "generic fiber dimension " + std::to_string(best) + " over base of dimension " +
                std::to_string(inst.base_dim());
  return d;
}

Rational kks_pairing(const QMatrix& a, const QMatrix& x, const QMatrix& y) {
  return trace_pairing(a, commutator(x, y));
}

}  // namespace orbitkit
