#include "orbitkit/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "orbitkit/errors.hpp"

namespace orbitkit {

Monomial Monomial::var(std::size_t i, int power) {
  if (i >= kMaxVars) throw InputError("too many variables (max 64)");
  Monomial m;
  m.e[i] = static_cast<std::uint8_t>(power);
  m.refresh();
  return m;
}

void Monomial::refresh() {
  deg = 0;
  mask = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (e[i]) {
      deg = static_cast<std::uint16_t>(deg + e[i]);
      mask |= 1ULL << i;
    }
}

bool Monomial::divides(const Monomial& o) const {
  if (mask & ~o.mask) return false;
  if (deg > o.deg) return false;
  std::uint64_t bits = mask;
  while (bits) {
    const int i = __builtin_ctzll(bits);
    if (e[i] > o.e[i]) return false;
    bits &= bits - 1;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r = *this;
  std::uint64_t bits = o.mask;
  while (bits) {
    const int i = __builtin_ctzll(bits);
    if (r.e[i] + o.e[i] > 255) throw BudgetExceeded("exponent overflow");
    r.e[i] = static_cast<std::uint8_t>(r.e[i] + o.e[i]);
    bits &= bits - 1;
  }
  r.deg = static_cast<std::uint16_t>(deg + o.deg);
  r.mask = mask | o.mask;
  return r;
}

Monomial Monomial::operator/(const Monomial& d) const {
  Monomial r = *this;
  std::uint64_t bits = d.mask;
  while (bits) {
    const int i = __builtin_ctzll(bits);
    r.e[i] = static_cast<std::uint8_t>(r.e[i] - d.e[i]);
    if (!r.e[i]) r.mask &= ~(1ULL << i);
    bits &= bits - 1;
  }
  r.deg = static_cast<std::uint16_t>(deg - d.deg);
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r = *this;
  std::uint64_t bits = o.mask;
  while (bits) {
    const int i = __builtin_ctzll(bits);
    if (o.e[i] > r.e[i]) {
      r.deg = static_cast<std::uint16_t>(r.deg + o.e[i] - r.e[i]);
      r.e[i] = o.e[i];
    }
    bits &= bits - 1;
  }
  r.mask |= o.mask;
  return r;
}

int compare(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
  const std::uint64_t bits = a.mask | b.mask;
  if (!bits) return 0;
  for (int i = 63 - __builtin_clzll(bits); i >= 0; --i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  return 0;
}

Poly Poly::constant(std::uint64_t c) {
  Poly p;
  if (c) p.t_.push_back({Monomial{}, c});
  return p;
}

Poly Poly::variable(std::size_t i) {
  Poly p;
  p.t_.push_back({Monomial::var(i), 1});
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& t : t_) d = std::max(d, static_cast<int>(t.m.deg));
  return d;
}

Poly Poly::from_terms(std::vector<Term> terms, const PrimeField& f) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return compare(a.m, b.m) > 0; });
  Poly p;
  for (auto& t : terms) {
    if (!p.t_.empty() && p.t_.back().m == t.m) {
      p.t_.back().c = f.add(p.t_.back().c, t.c % f.p);
      if (!p.t_.back().c) p.t_.pop_back();
    } else if (t.c % f.p) {
      p.t_.push_back({t.m, t.c % f.p});
    }
  }
  return p;
}

Poly Poly::sub_mul(const Poly& g, const Monomial& m, std::uint64_t c, const PrimeField& f) const {
  Poly r;
  r.t_.reserve(t_.size() + g.t_.size());
  std::size_t i = 0, j = 0;
  const std::uint64_t nc = f.neg(c % f.p);
  Monomial gm;
  if (!g.t_.empty()) gm = g.t_[0].m * m;
  while (i < t_.size() || j < g.t_.size()) {
    if (j == g.t_.size()) {
      r.t_.push_back(t_[i++]);
      continue;
    }
    const int cmp = i == t_.size() ? -1 : compare(t_[i].m, gm);
    if (cmp > 0) {
      r.t_.push_back(t_[i++]);
      continue;
    }
    std::uint64_t v = f.mul(nc, g.t_[j].c);
    if (cmp == 0) v = f.add(t_[i++].c, v);
    if (v) r.t_.push_back({gm, v});
    if (++j < g.t_.size()) gm = g.t_[j].m * m;
  }
  return r;
}

Poly Poly::add(const Poly& o, const PrimeField& f) const { return sub_mul(o, Monomial{}, f.neg(1), f); }
Poly Poly::sub(const Poly& o, const PrimeField& f) const { return sub_mul(o, Monomial{}, 1, f); }

Poly Poly::scale(std::uint64_t c, const PrimeField& f) const {
  c %= f.p;
  Poly r;
  if (!c) return r;
  r.t_ = t_;
  for (auto& t : r.t_) t.c = f.mul(t.c, c);
  return r;
}

Poly Poly::mul_term(const Monomial& m, std::uint64_t c, const PrimeField& f) const {
  c %= f.p;
  Poly r;
  if (!c) return r;
  r.t_.reserve(t_.size());
  for (const auto& t : t_) r.t_.push_back({t.m * m, f.mul(t.c, c)});
  return r;
}

Poly Poly::mul(const Poly& o, const PrimeField& f) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Term> terms;
  terms.reserve(t_.size() * o.t_.size());
  for (const auto& a : t_)
    for (const auto& b : o.t_) terms.push_back({a.m * b.m, f.mul(a.c, b.c)});
  return from_terms(std::move(terms), f);
}

Poly Poly::monic(const PrimeField& f) const {
  if (is_zero()) return {};
  return scale(f.inv(lead().c), f);
}

Poly Poly::substitute(std::size_t v, const Poly& q, const PrimeField& f) const {
  std::vector<Poly> powers{Poly::constant(1)};
  std::vector<Term> terms;
  for (const auto& t : t_) {
    const int k = t.m.e[v];
    if (!k) {
      terms.push_back(t);
      continue;
    }
    while (static_cast<int>(powers.size()) <= k) powers.push_back(powers.back().mul(q, f));
    Monomial rest = t.m / Monomial::var(v, k);
    for (const auto& s : powers[k].t_) terms.push_back({s.m * rest, f.mul(s.c, t.c)});
  }
  return from_terms(std::move(terms), f);
}

std::uint64_t Poly::evaluate(const std::vector<std::uint64_t>& point, const PrimeField& f) const {
  std::uint64_t s = 0;
  for (const auto& t : t_) {
    std::uint64_t v = t.c;
    std::uint64_t bits = t.m.mask;
    while (bits) {
      const int i = __builtin_ctzll(bits);
      v = f.mul(v, f.pow(point.at(i), t.m.e[i]));
      bits &= bits - 1;
    }
    s = f.add(s, v);
  }
  return s;
}

std::string Poly::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t k = 0; k < t_.size(); ++k) {
    const auto& t = t_[k];
    if (k) os << '+';
    bool first = true;
    if (t.c != 1 || t.m.deg == 0) {
      os << t.c;
      first = false;
    }
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (!t.m.e[i]) continue;
      os << (first ? "" : "*") << 'x' << i;
      if (t.m.e[i] > 1) os << '^' << int(t.m.e[i]);
      first = false;
    }
  }
  return os.str();
}

bool Poly::operator==(const Poly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (std::size_t i = 0; i < t_.size(); ++i)
    if (t_[i].c != o.t_[i].c || !(t_[i].m == o.t_[i].m)) return false;
  return true;
}

void Ideal::add(Poly p) {
  if (!p.is_zero()) gens.push_back(std::move(p));
}

std::string Ideal::to_string() const {
  std::string s = "p=" + std::to_string(field.p) + ";n=" + std::to_string(nvars) + ";";
  std::vector<std::string> g;
  for (const auto& p : gens) g.push_back(p.to_string());
  std::sort(g.begin(), g.end());
  for (const auto& x : g) s += x + ";";
  return s;
}

PolyMatrix PolyMatrix::mul(const PolyMatrix& o, const PrimeField& f) const {
  PolyMatrix r(rows, o.cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < o.cols; ++j) {
      std::vector<Term> terms;
      for (std::size_t k = 0; k < cols; ++k) {
        const Poly& a = (*this)(i, k);
        const Poly& b = o(k, j);
        if (a.is_zero() || b.is_zero()) continue;
        for (const auto& x : a.terms())
          for (const auto& y : b.terms()) terms.push_back({x.m * y.m, f.mul(x.c, y.c)});
      }
      r(i, j) = Poly::from_terms(std::move(terms), f);
    }
  return r;
}

namespace {

struct MinorMemo {
  const PolyMatrix& m;
  const PrimeField& f;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Poly> memo;

  Poly det(std::uint64_t rmask, std::uint64_t cmask) {
    if (auto it = memo.find({rmask, cmask}); it != memo.end()) return it->second;
    const int r0 = __builtin_ctzll(rmask);
    const std::uint64_t rest = rmask & (rmask - 1);
    Poly result;
    if (!rest) {
      result = m(r0, __builtin_ctzll(cmask));
    } else {
      int sign = 0;
      std::uint64_t bits = cmask;
      while (bits) {
        const int c = __builtin_ctzll(bits);
        bits &= bits - 1;
        const Poly& a = m(r0, c);
        if (!a.is_zero()) {
          Poly sub = det(rest, cmask & ~(1ULL << c));
          if (!sub.is_zero()) {
            Poly prod = a.mul(sub, f);
            result = sign % 2 ? result.sub(prod, f) : result.add(prod, f);
          }
        }
        ++sign;
      }
    }
    memo.emplace(std::make_pair(rmask, cmask), result);
    return result;
  }
};

void subsets(std::size_t n, std::size_t k, std::size_t from, std::uint64_t cur, std::vector<std::uint64_t>& out) {
  if (k == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i + k <= n; ++i) subsets(n, k - 1, i + 1, cur | (1ULL << i), out);
}

}  // namespace

std::vector<Poly> minors(const PolyMatrix& m, std::size_t k, const PrimeField& f) {
  if (k == 0 || k > std::min(m.rows, m.cols)) throw InputError("minor size out of range");
  if (m.rows > 64 || m.cols > 64) throw InputError("matrix too large for minors");
  std::vector<std::uint64_t> rs, cs;
  subsets(m.rows, k, 0, 0, rs);
  subsets(m.cols, k, 0, 0, cs);
  MinorMemo memo{m, f, {}};
  std::vector<Poly> out;
  out.reserve(rs.size() * cs.size());
  for (auto r : rs)
    for (auto c : cs) out.push_back(memo.det(r, c));
  return out;
}

Ideal localize(const Ideal& i, const Poly& g) {
  if (g.is_zero()) throw InputError("cannot localize at zero");
  if (i.nvars >= kMaxVars) throw InputError("too many variables (max 64)");
  Ideal r = i;
  const std::size_t t = r.nvars++;
  r.add(g.mul(Poly::variable(t), r.field).sub(Poly::constant(1), r.field));
  return r;
}

std::size_t eliminate_linear(Ideal& ideal) {
  const PrimeField& f = ideal.field;
  std::size_t eliminated = 0;
  for (;;) {
    std::size_t pick = ideal.gens.size();
    for (std::size_t k = 0; k < ideal.gens.size(); ++k) {
      if (ideal.gens[k].degree() == 0) {
        ideal.gens = {Poly::constant(1)};
        return eliminated;
      }
      if (pick == ideal.gens.size() && ideal.gens[k].degree() == 1) pick = k;
    }
    if (pick == ideal.gens.size()) return eliminated;
    Poly g = ideal.gens[pick].monic(f);
    const std::size_t v = __builtin_ctzll(g.lead().m.mask);
    Poly q = Poly::variable(v).sub(g, f);  // x_v = q
    std::vector<Poly> rest;
    for (std::size_t k = 0; k < ideal.gens.size(); ++k) {
      if (k == pick) continue;
      Poly s = ideal.gens[k].substitute(v, q, f);
      if (!s.is_zero()) rest.push_back(std::move(s));
    }
    ideal.gens = std::move(rest);
    ++eliminated;
  }
}

}  // namespace orbitkit
