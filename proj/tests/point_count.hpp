#pragma once

// Brute-force dimension oracle for small ideals: count points over F_q,
// F_{q^2}, F_{q^3} and read off the growth exponent. A variety with no points
// there is also searched over F_{q^4}; a finite set of degree <= 4 cannot
// hide from all four.

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <random>

#include "orbitkit/groebner.hpp"

namespace orbitkit::testing {

// Remainder of a mod b over F_q, coefficients low to high; b monic.
inline std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int q) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const int lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] = ((a[shift + j] - lead * b[j]) % q + q) % q;
    a.pop_back();
  }
  return a;
}

// Trial division by every monic polynomial of degree <= k/2.
inline bool irreducible(const std::vector<int>& f, int q) {
  const int k = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= k; ++d) {
    long total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    for (long code = 0; code < total; ++code) {
      std::vector<int> g(d + 1, 1);
      long t = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(t % q);
        t /= q;
      }
      const auto r = poly_mod(f, g, q);
      if (std::all_of(r.begin(), r.end(), [](int v) { return v == 0; })) return false;
    }
  }
  return true;
}

// Finite field F_{q^k} by full addition/multiplication tables.
struct ExtField {
  int q, k, size;
  std::vector<int> add, mul;

  ExtField(int q_, int k_) : q(q_), k(k_), size(static_cast<int>(std::pow(q_, k_))) {
    std::vector<int> mod(k + 1, 0);
    mod[k] = 1;
    for (int code = 0;; ++code) {
      int t = code;
      for (int i = 0; i < k; ++i) {
        mod[i] = t % q;
        t /= q;
      }
      if (irreducible(mod, q)) break;
    }
    auto digits = [&](int v) {
      std::vector<int> d(k);
      for (int i = 0; i < k; ++i) {
        d[i] = v % q;
        v /= q;
      }
      return d;
    };
    auto encode = [&](const std::vector<int>& d) {
      int v = 0;
      for (int i = k - 1; i >= 0; --i) v = v * q + d[i];
      return v;
    };
    add.assign(size * size, 0);
    mul.assign(size * size, 0);
    for (int a = 0; a < size; ++a)
      for (int b = 0; b < size; ++b) {
        auto da = digits(a), db = digits(b);
        std::vector<int> s(k);
        for (int i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % q;
        add[a * size + b] = encode(s);
        std::vector<int> p(2 * k, 0);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) p[i + j] = (p[i + j] + da[i] * db[j]) % q;
        for (int i = 2 * k - 2; i >= k; --i) {
          const int lead = p[i];
          for (int j = 0; j <= k; ++j) p[i - k + j] = ((p[i - k + j] - lead * mod[j]) % q + q) % q;
        }
        p.resize(k);
        mul[a * size + b] = encode(p);
      }
  }
  int plus(int a, int b) const { return add[a * size + b]; }
  int times(int a, int b) const { return mul[a * size + b]; }
};

// Dense univariate polynomials over an ExtField, coefficients low to high.
struct UniRing {
  const ExtField& e;
  std::vector<int> inv, negs;

  explicit UniRing(const ExtField& f) : e(f), inv(f.size, 0), negs(f.size, 0) {
    for (int a = 0; a < f.size; ++a)
      for (int b = 0; b < f.size; ++b)
        if (f.plus(a, b) == 0) {
          negs[a] = b;
          break;
        }
    for (int a = 1; a < f.size; ++a)
      for (int b = 1; b < f.size; ++b)
        if (f.times(a, b) == 1) {
          inv[a] = b;
          break;
        }
  }
  int neg(int a) const { return negs[a]; }
  static void trim(std::vector<int>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  std::vector<int> mod(std::vector<int> a, const std::vector<int>& b) const {
    trim(a);
    const int li = inv[b.back()];
    while (a.size() >= b.size()) {
      const int f = neg(e.times(a.back(), li));
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = e.plus(a[shift + j], e.times(f, b[j]));
      trim(a);
    }
    return a;
  }
  std::vector<int> gcd(std::vector<int> a, std::vector<int> b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      auto r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }
  std::vector<int> mulmod(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& m) const {
    if (a.empty() || b.empty()) return {};
    std::vector<int> p(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) p[i + j] = e.plus(p[i + j], e.times(a[i], b[j]));
    return mod(std::move(p), m);
  }
  // number of distinct roots of g in the field: deg gcd(g, x^Q - x)
  long roots(const std::vector<int>& g) const {
    if (g.size() <= 1) return 0;
    std::vector<int> h{1}, base = mod({0, 1}, g);
    for (long k = e.size; k > 0; k >>= 1) {
      if (k & 1) h = mulmod(h, base, g);
      base = mulmod(base, base, g);
    }
    if (h.size() < 2) h.resize(2, 0);
    h[1] = e.plus(h[1], neg(1));
    return static_cast<long>(gcd(g, h).size()) - 1;
  }
};

// Tables are costly at q^k = 2401; build each field once.
inline const UniRing& ring_for(int q, int k) {
  static std::map<std::pair<int, int>, std::pair<std::unique_ptr<ExtField>, std::unique_ptr<UniRing>>> cache;
  auto& slot = cache[{q, k}];
  if (!slot.first) {
    slot.first = std::make_unique<ExtField>(q, k);
    slot.second = std::make_unique<UniRing>(*slot.first);
  }
  return *slot.second;
}

// Enumerates all but the last coordinate; the generators then become
// univariate in the last one and their common roots are counted exactly.
inline long count_points(const Ideal& ideal, int q, int k) {
  const UniRing& ring = ring_for(q, k);
  const ExtField& e = ring.e;
  const std::size_t n = ideal.nvars, last = n - 1;
  std::vector<int> pt(n, 0);
  long count = 0;
  for (;;) {
    std::vector<int> g;
    for (const auto& gen : ideal.gens) {
      std::vector<int> u(1, 0);
      for (const auto& t : gen.terms()) {
        int v = static_cast<int>(t.c);  // base field element, same encoding
        for (std::size_t i = 0; i < last; ++i)
          for (int r = 0; r < t.m.e[i]; ++r) v = e.times(v, pt[i]);
        const std::size_t d = t.m.e[last];
        if (u.size() <= d) u.resize(d + 1, 0);
        u[d] = e.plus(u[d], v);
      }
      g = ring.gcd(g, u);
      if (g.size() == 1) break;  // nonzero constant: no common root
    }
    count += g.empty() ? e.size : ring.roots(g);
    std::size_t i = 0;
    while (i < last && ++pt[i] == e.size) pt[i++] = 0;
    if (i == last) break;
  }
  return count;
}

inline int point_count_dim(const Ideal& ideal, int q) {
  const long n1 = count_points(ideal, q, 1);
  const long n2 = count_points(ideal, q, 2);
  const long n3 = count_points(ideal, q, 3);
  if (n1 == 0 && n2 == 0 && n3 == 0) return count_points(ideal, q, 4) > 0 ? 0 : -1;
  auto lg = [](double v, double base) { return v > 0 ? std::log(v) / std::log(base) : -1.0; };
  const int d3 = static_cast<int>(std::lround(lg(n3, std::pow(q, 3))));
  const int d2 = static_cast<int>(std::lround(lg(n2, q * q) - 0.2));
  return std::max(d2, d3);
}

inline Poly random_poly(std::mt19937_64& rng, std::size_t n, const PrimeField& f) {
  auto coef = [&] { return Poly::constant(rng() % f.p); };
  auto affine = [&] {
    Poly p = coef();
    for (std::size_t i = 0; i < n; ++i) p = p.add(coef().mul(Poly::variable(i), f), f);
    return p;
  };
  switch (rng() % 3) {
    case 0: return affine().mul(affine(), f);
    case 1: {
      Poly p = affine();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
          if (rng() % 2) p = p.add(coef().mul(Poly::variable(i), f).mul(Poly::variable(j), f), f);
      return p;
    }
    default: return affine();
  }
}

}  // namespace orbitkit::testing
