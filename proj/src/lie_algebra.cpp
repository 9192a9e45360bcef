#include "orbitkit/lie_algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "orbitkit/errors.hpp"

namespace orbitkit {

namespace {

QMatrix antidiagonal_form(bool symplectic, std::size_t n) {
  QMatrix j(n, n);
  for (std::size_t i = 0; i < n; ++i) j(i, n - 1 - i) = (symplectic && i >= n / 2) ? -1 : 1;
  return j;
}

// Basis of {X : X^T J + J X = 0}.
std::vector<QMatrix> form_algebra_basis(const QMatrix& form) {
  const std::size_t n = form.rows();
  std::vector<QVector> rows;
  rows.reserve(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      QVector row(n * n);
      for (std::size_t c = 0; c < n; ++c) {
        row[c * n + a] += form(c, b);  // (X^T J)_{ab}
        row[c * n + b] += form(a, c);  // (J X)_{ab}
      }
      rows.push_back(std::move(row));
    }
  std::vector<QMatrix> basis;
  for (auto& v : nullspace(std::move(rows), n * n)) basis.push_back(unflatten(v, n));
  return basis;
}

void check_closed(const LieType& type, const std::vector<QMatrix>& basis, const char* what) {
  SpanTracker span(type.size() * type.size());
  for (const auto& b : basis) span.add(flatten(b));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!span.contains(flatten(commutator(basis[i], basis[j]))))
        throw ConstructionError(std::string(what) + " is not closed under commutator");
}

QMatrix embed_at(const QMatrix& block, std::size_t off, std::size_t n) {
  QMatrix m(n, n);
  m.set_block(off, block);
  return m;
}

std::vector<QMatrix> factor_basis(const Factor& f) {
  const std::size_t n = f.size();
  std::vector<QMatrix> basis;
  if (f.family == Family::A) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) basis.push_back(QMatrix::unit(n, i, j));
  } else {
    basis = form_algebra_basis(f.form());
  }
  if (basis.size() != f.dim())
    throw ConstructionError(f.name() + ": basis has dimension " + std::to_string(basis.size()) + ", expected " +
                            std::to_string(f.dim()));
  check_closed(LieType{{f}}, basis, f.name().c_str());
  return basis;
}

// Block index of each row/column inside the factor, or -1 outside.
std::vector<int> block_ids(const LieType& type, const std::vector<std::vector<int>>& comps) {
  std::vector<int> ids;
  for (std::size_t f = 0; f < type.factors.size(); ++f) {
    int blk = 0;
    for (int len : comps[f]) {
      for (int i = 0; i < len; ++i) ids.push_back(blk + 1000 * static_cast<int>(f));
      ++blk;
    }
  }
  return ids;
}

// g intersected with the coordinate subspace of allowed positions.
Subspace pattern_subspace(const AlgebraPtr& g, const std::function<bool(std::size_t, std::size_t)>& allowed) {
  const std::size_t n = g->matrix_size();
  std::vector<QVector> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (allowed(i, j)) continue;
      QVector row(g->dim());
      bool any = false;
      for (std::size_t k = 0; k < g->dim(); ++k) {
        row[k] = g->basis()[k](i, j);
        any = any || sgn(row[k]) != 0;
      }
      if (any) rows.push_back(std::move(row));
    }
  std::vector<QMatrix> elems;
  for (const auto& c : nullspace(std::move(rows), g->dim())) {
    QMatrix x(n, n);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (sgn(c[k]) != 0) x += g->basis()[k] * c[k];
    elems.push_back(std::move(x));
  }
  return make_subspace(g, elems);
}

void check_compositions(const AlgebraPtr& g, const std::vector<std::vector<int>>& comps) {
  if (!g->classical()) throw InputError("parabolic/levi require a classical ambient algebra");
  if (comps.size() != g->type().factors.size())
    throw InputError("need one composition per factor (" + std::to_string(g->type().factors.size()) + ")");
  for (std::size_t f = 0; f < comps.size(); ++f) validate_composition(g->type().factors[f], comps[f]);
}

}  // namespace

char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
  }
  return '?';
}

std::size_t Factor::size() const {
  switch (family) {
    case Family::A: return static_cast<std::size_t>(rank) + 1;
    case Family::B: return 2 * static_cast<std::size_t>(rank) + 1;
    case Family::C:
    case Family::D: return 2 * static_cast<std::size_t>(rank);
  }
  return 0;
}

std::size_t Factor::dim() const {
  const std::size_t n = size();
  switch (family) {
    case Family::A: return n * n;
    case Family::C: return 2 * rank * rank + rank;
    default: return n * (n - 1) / 2;
  }
}

QMatrix Factor::form() const {
  if (family == Family::A) return {};
  return antidiagonal_form(family == Family::C, size());
}

std::string Factor::name() const {
  const char* prefix = family == Family::A ? "gl" : family == Family::C ? "sp" : "so";
  return prefix + std::to_string(size());
}

void Factor::validate() const {
  const int min_rank = family == Family::A ? 0 : family == Family::D ? 2 : 1;
  if (rank < min_rank)
    throw InputError(std::string("rank ") + std::to_string(rank) + " invalid for type " + family_letter(family));
}

Factor parse_factor(const std::string& s) {
  auto number = [&](std::size_t from) {
    if (from >= s.size()) throw InputError("missing size in factor '" + s + "'");
    for (std::size_t i = from; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw InputError("bad factor '" + s + "'");
    return std::stoi(s.substr(from));
  };
  Factor f;
  if (s.rfind("gl", 0) == 0) {
    f = {Family::A, number(2) - 1};
  } else if (s.rfind("sp", 0) == 0) {
    int n = number(2);
    if (n % 2) throw InputError("sp needs even size: '" + s + "'");
    f = {Family::C, n / 2};
  } else if (s.rfind("so", 0) == 0) {
    int n = number(2);
    f = n % 2 ? Factor{Family::B, (n - 1) / 2} : Factor{Family::D, n / 2};
  } else if (s.size() >= 2 && std::string("ABCD").find(s[0]) != std::string::npos) {
    const Family fam[] = {Family::A, Family::B, Family::C, Family::D};
    f = {fam[s[0] - 'A'], number(1)};
  } else {
    throw InputError("unknown factor '" + s + "'");
  }
  f.validate();
  return f;
}

std::size_t LieType::size() const {
  std::size_t n = 0;
  for (const auto& f : factors) n += f.size();
  return n;
}

std::size_t LieType::offset(std::size_t factor) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < factor; ++i) off += factors[i].size();
  return off;
}

std::string LieType::name() const {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "x" : "") + factors[i].name();
  return s;
}

LieType LieType::concat(const LieType& other) const {
  LieType t = *this;
  t.factors.insert(t.factors.end(), other.factors.begin(), other.factors.end());
  return t;
}

LieType LieType::parse(const std::string& s) {
  LieType t;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, 'x')) t.factors.push_back(parse_factor(part));
  if (t.factors.empty()) throw InputError("empty type string");
  return t;
}

Algebra::Algebra(LieType type, std::vector<QMatrix> basis, bool classical)
    : type_(std::move(type)), basis_(std::move(basis)), classical_(classical), span_(type_.size() * type_.size()) {
  for (const auto& b : basis_)
    if (!span_.add(flatten(b))) throw ConstructionError("algebra basis is linearly dependent");
}

bool Algebra::contains(const QMatrix& x) const {
  return x.rows() == matrix_size() && span_.contains(flatten(x));
}

AlgebraPtr build_classical(const LieType& type) {
  static std::mutex mu;
  static std::map<LieType, AlgebraPtr> cache;
  static std::map<Factor, std::vector<QMatrix>> factor_cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(type); it != cache.end()) return it->second;
  if (type.factors.empty()) throw InputError("empty Lie type");
  const std::size_t n = type.size();
  std::vector<QMatrix> basis;
  for (std::size_t f = 0; f < type.factors.size(); ++f) {
    const Factor& fac = type.factors[f];
    fac.validate();
    auto it = factor_cache.find(fac);
    if (it == factor_cache.end()) it = factor_cache.emplace(fac, factor_basis(fac)).first;
    for (const auto& b : it->second) basis.push_back(embed_at(b, type.offset(f), n));
  }
  auto g = std::make_shared<const Algebra>(type, std::move(basis), true);
  cache.emplace(type, g);
  return g;
}

AlgebraPtr build_from_form(const QMatrix& form) {
  const std::size_t n = form.rows();
  if (n == 0 || form.cols() != n) throw ConstructionError("form must be a nonempty square matrix");
  if (rank(form) != n) throw ConstructionError("form is not invertible");
  const bool sym = form.transpose() == form;
  const bool anti = form.transpose() == -form;
  if (!sym && !anti) throw ConstructionError("form is neither symmetric nor antisymmetric");
  auto basis = form_algebra_basis(form);
  const std::size_t expected = sym ? n * (n - 1) / 2 : n * (n + 1) / 2;
  if (basis.size() != expected) throw ConstructionError("unexpected dimension for form algebra");
  Factor f = anti ? Factor{Family::C, static_cast<int>(n / 2)}
                  : (n % 2 ? Factor{Family::B, static_cast<int>(n / 2)} : Factor{Family::D, static_cast<int>(n / 2)});
  LieType t{{f}};
  check_closed(t, basis, "form algebra");
  // Classical in the sense that the trace form is nondegenerate on it.
  return std::make_shared<const Algebra>(t, std::move(basis), true);
}

AlgebraPtr product(const AlgebraPtr& g, const AlgebraPtr& h) {
  LieType t = g->type().concat(h->type());
  const std::size_t n = t.size(), off = g->matrix_size();
  std::vector<QMatrix> basis;
  for (const auto& b : g->basis()) basis.push_back(embed_at(b, 0, n));
  for (const auto& b : h->basis()) basis.push_back(embed_at(b, off, n));
  return std::make_shared<const Algebra>(t, std::move(basis), g->classical() && h->classical());
}

std::string Subspace::canonical_key() const {
  std::vector<QVector> rows;
  for (const auto& b : basis) rows.push_back(flatten(b));
  rref(rows);
  std::ostringstream os;
  os << ambient->type().name() << (ambient->classical() ? "" : "*") << ':' << ambient->dim() << '|';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i)
      if (sgn(r[i]) != 0) os << i << '=' << r[i].get_str() << ',';
    os << ';';
  }
  return os.str();
}

Subspace make_subspace(const AlgebraPtr& g, const std::vector<QMatrix>& spanning) {
  const std::size_t n = g->matrix_size();
  SpanTracker span(n * n);
  Subspace s{g, {}};
  for (const auto& x : spanning) {
    if (!g->contains(x)) throw InputError("element lies outside the ambient algebra " + g->type().name());
    if (span.add(flatten(x))) s.basis.push_back(x);
  }
  return s;
}

Subspace whole(const AlgebraPtr& g) { return Subspace{g, g->basis()}; }

bool contained_in(const Subspace& a, const Subspace& b) {
  const std::size_t n = b.ambient->matrix_size();
  SpanTracker span(n * n);
  for (const auto& x : b.basis) span.add(flatten(x));
  for (const auto& x : a.basis)
    if (x.rows() != n || !span.contains(flatten(x))) return false;
  return true;
}

bool same_span(const Subspace& a, const Subspace& b) {
  return a.dim() == b.dim() && contained_in(a, b);
}

bool is_commutator_closed(const Subspace& s) {
  const std::size_t n = s.ambient->matrix_size();
  SpanTracker span(n * n);
  for (const auto& x : s.basis) span.add(flatten(x));
  for (std::size_t i = 0; i < s.basis.size(); ++i)
    for (std::size_t j = i + 1; j < s.basis.size(); ++j)
      if (!span.contains(flatten(commutator(s.basis[i], s.basis[j])))) return false;
  return true;
}

Subspace annihilator(const Subspace& s) {
  const AlgebraPtr& g = s.ambient;
  std::vector<QVector> rows;
  for (const auto& y : s.basis) {
    QVector row(g->dim());
    for (std::size_t k = 0; k < g->dim(); ++k) row[k] = trace_pairing(g->basis()[k], y);
    rows.push_back(std::move(row));
  }
  std::vector<QMatrix> elems;
  const std::size_t n = g->matrix_size();
  for (const auto& c : nullspace(std::move(rows), g->dim())) {
    QMatrix x(n, n);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (sgn(c[k]) != 0) x += g->basis()[k] * c[k];
    elems.push_back(std::move(x));
  }
  Subspace ann = make_subspace(g, elems);
  if (ann.dim() + s.dim() != g->dim())
    throw ConstructionError("trace form is degenerate on " + g->type().name() + "; annihilator undefined");
  return ann;
}

AlgebraPtr as_algebra(const Subspace& s) {
  if (!is_commutator_closed(s)) throw InputError("subspace is not a subalgebra");
  return std::make_shared<const Algebra>(s.ambient->type(), s.basis, false);
}

void validate_composition(const Factor& f, const std::vector<int>& comp) {
  int sum = 0;
  for (int c : comp) {
    if (c <= 0) throw InputError("composition parts must be positive");
    sum += c;
  }
  if (sum != static_cast<int>(f.size()))
    throw InputError("composition sums to " + std::to_string(sum) + ", expected " + std::to_string(f.size()) +
                     " for " + f.name());
  if (f.family != Family::A) {
    std::vector<int> rev(comp.rbegin(), comp.rend());
    if (rev != comp) throw InputError("composition for " + f.name() + " must be palindromic (isotropic flag)");
  }
}

std::vector<int> isotropic_flag_composition(const Factor& f, const std::vector<int>& flag) {
  if (f.family == Family::A) throw InputError("isotropic flags need a B/C/D factor");
  int s = 0;
  for (int a : flag) {
    if (a <= 0) throw InputError("flag block sizes must be positive");
    s += a;
  }
  const int n = static_cast<int>(f.size());
  if (2 * s > n) throw InputError("isotropic flag too large for " + f.name());
  std::vector<int> comp = flag;
  if (n - 2 * s > 0) comp.push_back(n - 2 * s);
  comp.insert(comp.end(), flag.rbegin(), flag.rend());
  return comp;
}

std::vector<std::vector<int>> standard_compositions(const Factor& f) {
  // all compositions of m
  std::function<void(int, std::vector<int>&, std::vector<std::vector<int>>&)> rec =
      [&](int m, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
        if (m == 0) {
          out.push_back(cur);
          return;
        }
        for (int a = 1; a <= m; ++a) {
          cur.push_back(a);
          rec(m - a, cur, out);
          cur.pop_back();
        }
      };
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  const int n = static_cast<int>(f.size());
  if (f.family == Family::A) {
    rec(n, cur, out);
    return out;
  }
  for (int s = 0; 2 * s <= n; ++s) {
    const int middle = n - 2 * s;
    if (f.family == Family::D && middle == 2) continue;  // same subalgebra as splitting the middle
    std::vector<std::vector<int>> flags;
    rec(s, cur, flags);
    for (const auto& fl : flags) out.push_back(isotropic_flag_composition(f, fl));
  }
  return out;
}

Parabolic parabolic(const AlgebraPtr& g, const std::vector<std::vector<int>>& compositions) {
  check_compositions(g, compositions);
  const auto ids = block_ids(g->type(), compositions);
  Parabolic p;
  p.compositions = compositions;
  p.algebra = pattern_subspace(g, [&](std::size_t i, std::size_t j) { return ids[i] <= ids[j] && ids[i] / 1000 == ids[j] / 1000; });
  p.nilradical = pattern_subspace(g, [&](std::size_t i, std::size_t j) { return ids[i] < ids[j] && ids[i] / 1000 == ids[j] / 1000; });
  if (!same_span(annihilator(p.algebra), p.nilradical))
    throw ConstructionError("annihilator of parabolic differs from its nilradical");
  return p;
}

Subspace levi(const AlgebraPtr& g, const std::vector<std::vector<int>>& compositions) {
  check_compositions(g, compositions);
  const auto ids = block_ids(g->type(), compositions);
  return pattern_subspace(g, [&](std::size_t i, std::size_t j) { return ids[i] == ids[j]; });
}

Subspace maximal_torus(const AlgebraPtr& g) {
  return pattern_subspace(g, [](std::size_t i, std::size_t j) { return i == j; });
}

QMatrix hyperbolic_isometry(const std::vector<BlockForm>& blocks, const Factor& target) {
  if (target.family == Family::A) throw InputError("hyperbolic isometry needs a form factor");
  const bool symplectic = target.family == Family::C;
  std::size_t total = 0;
  for (const auto& b : blocks) {
    if ((b.family == Family::C) != symplectic) throw InputError("block/target form types differ");
    if (b.sign != 1 && b.sign != -1) throw InputError("block sign must be +-1");
    total += b.size;
  }
  if (total != target.size()) throw InputError("block sizes do not add up to the target size");

  // Hyperbolic (e, f) pairs with B(e, f) = 1, in source coordinates.
  std::vector<std::pair<QVector, QVector>> pairs;
  std::vector<QVector> plus, minus;
  std::size_t off = 0;
  for (const auto& b : blocks) {
    const QMatrix j = antidiagonal_form(symplectic, b.size);
    for (std::size_t i = 0; i < b.size / 2; ++i) {
      QVector e(total), f(total);
      e[off + i] = 1;
      f[off + b.size - 1 - i] = Rational(1) / (j(i, b.size - 1 - i) * b.sign);
      pairs.emplace_back(std::move(e), std::move(f));
    }
    if (b.size % 2) {
      QVector w(total);
      w[off + b.size / 2] = 1;
      (b.sign > 0 ? plus : minus).push_back(std::move(w));
    }
    off += b.size;
  }
  while (!plus.empty() && !minus.empty()) {
    QVector e(total), f(total);
    for (std::size_t i = 0; i < total; ++i) {
      e[i] = plus.back()[i] + minus.back()[i];
      f[i] = (plus.back()[i] - minus.back()[i]) / 2;
    }
    pairs.emplace_back(std::move(e), std::move(f));
    plus.pop_back();
    minus.pop_back();
  }
  const bool odd = target.size() % 2;
  if (!minus.empty() || plus.size() != (odd ? 1u : 0u))
    throw InputError("no rational hyperbolic isometry onto " + target.name() + " for these blocks");

  const std::size_t n = total;
  const QMatrix jt = target.form();
  QMatrix msrc(n, n), mtgt(n, n);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      msrc(i, 2 * k) = pairs[k].first[i];
      msrc(i, 2 * k + 1) = pairs[k].second[i];
    }
    mtgt(k, 2 * k) = 1;
    mtgt(n - 1 - k, 2 * k + 1) = Rational(1) / jt(k, n - 1 - k);
  }
  if (odd) {
    for (std::size_t i = 0; i < n; ++i) msrc(i, n - 1) = plus.back()[i];
    mtgt(n / 2, n - 1) = 1;
  }
  return mtgt * inverse(msrc);
}

QMatrix gl_into_form(const QMatrix& y) {
  const std::size_t n = y.rows();
  QMatrix r(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      r(i, j) = y(i, j);
      r(n + i, n + j) = -y(n - 1 - j, n - 1 - i);
    }
  return r;
}

QMatrix tensor_sum(const QMatrix& a, const QMatrix& b) {
  const std::size_t n = a.rows(), k = b.rows();
  QMatrix r(n * k, n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t x = 0; x < k; ++x) r(i * k + x, j * k + x) += a(i, j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = 0; y < k; ++y) r(i * k + x, i * k + y) += b(x, y);
  return r;
}

Subspace delta_subalgebra(const Subspace& h) {
  AlgebraPtr halg = as_algebra(h);
  AlgebraPtr gh = product(h.ambient, halg);
  const std::size_t n = gh->matrix_size(), off = h.ambient->matrix_size();
  std::vector<QMatrix> elems;
  for (const auto& y : h.basis) {
    QMatrix x(n, n);
    x.set_block(0, y);
    x.set_block(off, y);
    elems.push_back(std::move(x));
  }
  return make_subspace(gh, elems);
}

Subspace graph_subalgebra(const AlgebraPtr& g, const AlgebraPtr& h, const std::vector<QMatrix>& images) {
  if (images.size() != h->dim()) throw InputError("need one image per basis element of h");
  AlgebraPtr gh = product(g, h);
  const std::size_t n = gh->matrix_size(), off = g->matrix_size();
  std::vector<QMatrix> elems;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!g->contains(images[i])) throw InputError("image " + std::to_string(i) + " lies outside g");
    QMatrix x(n, n);
    x.set_block(0, images[i]);
    x.set_block(off, h->basis()[i]);
    elems.push_back(std::move(x));
  }
  Subspace s = make_subspace(gh, elems);
  if (s.dim() != h->dim() || !is_commutator_closed(s)) throw InputError("images do not define a homomorphism");
  return s;
}

Subspace resolve(const SubalgebraSpec& spec, const AlgebraPtr& g) {
  const LieType& type = g->type();
  const std::size_t n = g->matrix_size();
  Subspace s = std::visit(
      [&](const auto& v) -> Subspace {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ParabolicSpec>) {
          return parabolic(g, v.compositions).algebra;
        } else if constexpr (std::is_same_v<T, LeviSpec>) {
          return levi(g, v.compositions);
        } else if constexpr (std::is_same_v<T, TorusSpec>) {
          return maximal_torus(g);
        } else if constexpr (std::is_same_v<T, SpanSpec>) {
          return make_subspace(g, v.matrices);
        } else if constexpr (std::is_same_v<T, DiagonalSpec>) {
          if (v.source >= type.factors.size()) throw InputError("diagonal: source factor out of range");
          const Factor& src = type.factors[v.source];
          std::vector<QMatrix> pmats;
          for (std::size_t t = 0; t < v.targets.size(); ++t) {
            if (v.targets[t] >= type.factors.size() || v.targets[t] == v.source)
              throw InputError("diagonal: bad target factor");
            const Factor& tgt = type.factors[v.targets[t]];
            if (tgt.size() % src.size()) throw InputError("diagonal: target size not a multiple of source size");
            const std::size_t mult = tgt.size() / src.size();
            if (t < v.intertwiners.size()) {
              pmats.push_back(v.intertwiners[t]);
            } else if (src.family == Family::A) {
              if (tgt.family != Family::A) throw InputError("diagonal: gl source needs gl target");
              pmats.push_back(QMatrix::identity(tgt.size()));
            } else {
              std::vector<BlockForm> blocks;
              for (std::size_t c = 0; c < mult; ++c)
                blocks.push_back({src.family, src.size(), (src.family != Family::C && c % 2) ? -1 : 1});
              pmats.push_back(hyperbolic_isometry(blocks, tgt));
            }
            if (pmats.back().rows() != tgt.size()) throw InputError("diagonal: intertwiner has wrong size");
          }
          std::vector<QMatrix> elems;
          for (const auto& yb : build_classical(LieType{{src}})->basis()) {
            QMatrix x(n, n);
            x.set_block(type.offset(v.source), yb);
            for (std::size_t t = 0; t < v.targets.size(); ++t) {
              const Factor& tgt = type.factors[v.targets[t]];
              std::vector<QMatrix> copies(tgt.size() / src.size(), yb);
              const QMatrix& p = pmats[t];
              x.set_block(type.offset(v.targets[t]), p * block_diagonal(copies) * inverse(p));
            }
            elems.push_back(std::move(x));
          }
          return make_subspace(g, elems);
        } else {
          LieType src;
          for (auto f : v.source_factors) {
            if (f >= type.factors.size()) throw InputError("graph: source factor out of range");
            src.factors.push_back(type.factors[f]);
          }
          const auto& sbasis = build_classical(src)->basis();
          if (v.images.size() != sbasis.size()) throw InputError("graph: need one image per source basis element");
          std::vector<QMatrix> elems;
          for (std::size_t i = 0; i < sbasis.size(); ++i) {
            QMatrix x = v.images[i];
            if (x.rows() != n) throw InputError("graph: image has wrong size");
            for (std::size_t k = 0; k < v.source_factors.size(); ++k) {
              const std::size_t sz = src.factors[k].size();
              if (!x.block(type.offset(v.source_factors[k]), sz).is_zero())
                throw InputError("graph: image must vanish on source factors");
              x.set_block(type.offset(v.source_factors[k]), sbasis[i].block(src.offset(k), sz));
            }
            elems.push_back(std::move(x));
          }
          return make_subspace(g, elems);
        }
      },
      spec);
  if (!is_commutator_closed(s)) throw InputError("resolved subspace is not closed under commutator");
  return s;
}

}  // namespace orbitkit
