#include "orbitkit/groebner.hpp"

#include <algorithm>
#include <future>
#include <iostream>
#include <optional>

#include "orbitkit/errors.hpp"

namespace orbitkit {

namespace {

std::atomic<std::size_t> g_disagreements{0};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(const PrimeField& f, const GroebnerOptions& opt) : f_(f), opt_(opt) {}

  // Returns false once the unit ideal is detected.
  bool insert(Poly h) {
    h = reduce(h);
    if (h.is_zero()) return true;
    if (h.is_constant()) return false;
    update(h.monic(f_));
    return true;
  }

  bool run() {
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k)
        if (compare(pairs_[k].lcm, pairs_[best].lcm) < 0) best = k;
      Pair pr = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      if (++reduced_ > opt_.pair_budget)
        throw BudgetExceeded("Groebner pair budget of " + std::to_string(opt_.pair_budget) + " exceeded");
      if (pr.lcm.deg > opt_.max_degree)
        throw BudgetExceeded("Groebner degree cap of " + std::to_string(opt_.max_degree) + " exceeded");
      const Poly& a = polys_[pr.i];
      const Poly& b = polys_[pr.j];
      Poly s = a.mul_term(pr.lcm / a.lead().m, 1, f_).sub_mul(b, pr.lcm / b.lead().m, 1, f_);
      if (!insert(std::move(s))) return false;
    }
    return true;
  }

  std::vector<Poly> reduced_basis() const {
    std::vector<Poly> basis;
    for (std::size_t k = 0; k < polys_.size(); ++k)
      if (active_[k]) basis.push_back(polys_[k]);
    std::sort(basis.begin(), basis.end(),
              [](const Poly& x, const Poly& y) { return compare(x.lead().m, y.lead().m) < 0; });
    std::vector<Poly> out;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      std::vector<const Poly*> others;
      for (std::size_t l = 0; l < basis.size(); ++l)
        if (l != k) others.push_back(&basis[l]);
      const Term lt = basis[k].lead();
      Poly tail = basis[k].sub_mul(Poly::constant(1), lt.m, lt.c, f_);
      Poly r = full_reduce(tail, others);
      out.push_back(r.sub_mul(Poly::constant(1), lt.m, f_.neg(lt.c), f_));
    }
    return out;
  }

  std::size_t pairs_reduced() const { return reduced_; }

  Poly full_reduce(Poly p, const std::vector<const Poly*>& by) const {
    std::vector<Term> done;
    while (!p.is_zero()) {
      const Term lt = p.lead();
      const Poly* div = nullptr;
      for (const Poly* g : by)
        if (g->lead().m.divides(lt.m)) {
          div = g;
          break;
        }
      if (div) {
        p = p.sub_mul(*div, lt.m / div->lead().m, f_.mul(lt.c, f_.inv(div->lead().c)), f_);
      } else {
        done.push_back(lt);
        p = p.sub_mul(Poly::constant(1), lt.m, lt.c, f_);
      }
    }
    return Poly::from_terms(std::move(done), f_);
  }

 private:
  Poly reduce(const Poly& p) const {
    std::vector<const Poly*> by;
    for (std::size_t k = 0; k < polys_.size(); ++k)
      if (active_[k]) by.push_back(&polys_[k]);
    return full_reduce(p, by);
  }

  // Gebauer-Moeller update for a new basis element h.
  void update(Poly h) {
    const std::size_t hi = polys_.size();
    const Monomial hm = h.lead().m;
    polys_.push_back(std::move(h));
    active_.push_back(true);

    std::vector<Pair> c;
    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g]) c.push_back({g, hi, polys_[g].lead().m.lcm(hm)});
    std::vector<Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Monomial gm = polys_[c[k].i].lead().m;
      bool keep = gm.coprime(hm);
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < c.size() && keep; ++l)
          if (c[l].lcm.divides(c[k].lcm)) keep = false;
        for (std::size_t l = 0; l < d.size() && keep; ++l)
          if (d[l].lcm.divides(c[k].lcm)) keep = false;
      }
      if (keep) d.push_back(c[k]);
    }
    std::vector<Pair> next;
    for (const auto& p : pairs_) {
      const bool drop = hm.divides(p.lcm) && !(polys_[p.i].lead().m.lcm(hm) == p.lcm) &&
                        !(polys_[p.j].lead().m.lcm(hm) == p.lcm);
      if (!drop) next.push_back(p);
    }
    for (const auto& p : d)
      if (!polys_[p.i].lead().m.coprime(hm)) next.push_back(p);
    pairs_ = std::move(next);
    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g] && hm.divides(polys_[g].lead().m)) active_[g] = false;
  }

  const PrimeField f_;
  const GroebnerOptions opt_;
  std::vector<Poly> polys_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
  std::size_t reduced_ = 0;
};

// Least number of variables meeting every support, branch and bound.
struct HittingSet {
  std::vector<std::uint64_t> sets;
  int best;

  void search(std::uint64_t chosen, int count) {
    if (count >= best) return;
    // lower bound from greedily packed disjoint unhit sets
    std::uint64_t used = 0;
    int packed = 0;
    const std::uint64_t* branch = nullptr;
    for (const auto& s : sets) {
      if (s & chosen) continue;
      if (!branch || __builtin_popcountll(s) < __builtin_popcountll(*branch)) branch = &s;
      if (!(s & used)) {
        used |= s;
        ++packed;
      }
    }
    if (!branch) {
      best = count;
      return;
    }
    if (count + packed >= best) return;
    std::uint64_t bits = *branch;
    while (bits) {
      const std::uint64_t v = bits & -bits;
      bits &= bits - 1;
      search(chosen | v, count + 1);
    }
  }
};

}  // namespace

GroebnerBasis groebner(const Ideal& ideal, const GroebnerOptions& opt) {
  if (ideal.nvars > kMaxVars) throw InputError("too many variables (max 64)");
  GroebnerBasis gb;
  gb.field = ideal.field;
  gb.nvars = ideal.nvars;
  Buchberger b(ideal.field, opt);
  bool ok = true;
  // low-degree generators first keeps intermediate expressions small
  std::vector<Poly> gens = ideal.gens;
  std::stable_sort(gens.begin(), gens.end(), [](const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return !x.is_zero() && y.is_zero();
    return compare(x.lead().m, y.lead().m) < 0;
  });
  for (auto& g : gens) {
    if (!ok) break;
    ok = b.insert(g);
  }
  if (ok) ok = b.run();
  gb.pairs_reduced = b.pairs_reduced();
  if (!ok) {
    gb.polys = {Poly::constant(1)};
    return gb;
  }
  gb.polys = b.reduced_basis();
  return gb;
}

Poly normal_form(const Poly& p, const GroebnerBasis& g) {
  Buchberger b(g.field, {});
  std::vector<const Poly*> by;
  for (const auto& x : g.polys) by.push_back(&x);
  return b.full_reduce(p, by);
}

int krull_dim(const GroebnerBasis& g) {
  if (g.is_unit()) return -1;
  std::vector<std::uint64_t> sets;
  for (const auto& p : g.polys) sets.push_back(p.lead().m.mask);
  std::sort(sets.begin(), sets.end(), [](auto a, auto b) { return __builtin_popcountll(a) < __builtin_popcountll(b); });
  std::vector<std::uint64_t> minimal;
  for (auto s : sets) {
    bool redundant = false;
    for (auto m : minimal) redundant = redundant || (m & s) == m;
    if (!redundant) minimal.push_back(s);
  }
  HittingSet h{minimal, static_cast<int>(g.nvars) + 1};
  h.search(0, 0);
  return static_cast<int>(g.nvars) - h.best;
}

int ideal_dim(Ideal ideal, const GroebnerOptions& opt) {
  const std::size_t elim = eliminate_linear(ideal);
  const int d = krull_dim(groebner(ideal, opt));
  return d < 0 ? -1 : d - static_cast<int>(elim);
}

TwoPrimeResult two_prime_dim(const std::function<Ideal(const PrimeField&)>& build, const GroebnerOptions& opt) {
  auto attempt = [&](std::uint64_t p) -> std::optional<int> {
    try {
      return ideal_dim(build(PrimeField{p}), opt);
    } catch (const UnluckyPrime&) {
      return std::nullopt;
    }
  };
  auto second = std::async(std::launch::async, attempt, kPrime2);
  const auto a = attempt(kPrime1);
  const auto b = second.get();
  TwoPrimeResult r;
  if (a && b && *a == *b) {
    r.value = *a;
    r.primes = {kPrime1, kPrime2};
    return r;
  }
  ++g_disagreements;
  const auto c = attempt(kPrime3);
  r.primes = {kPrime1, kPrime2, kPrime3};
  r.agreed = false;
  auto show = [](const std::optional<int>& x) { return x ? std::to_string(*x) : std::string("unlucky"); };
  const std::string detail = show(a) + "/" + show(b) + "/" + show(c);
  if (c && ((a && *a == *c) || (b && *b == *c))) {
    std::cerr << "warning: prime disagreement resolved by majority (" << detail << ")\n";
    r.value = *c;
    return r;
  }
  throw UnluckyPrime("modular dimensions disagree across primes: " + detail);
}

std::size_t prime_disagreements() { return g_disagreements.load(); }

}  // namespace orbitkit
