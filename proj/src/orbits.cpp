#include "orbitkit/orbits.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "orbitkit/errors.hpp"

namespace orbitkit {

namespace {

QMatrix jordan_block(int k) {
  QMatrix j(k, k);
  for (int i = 0; i + 1 < k; ++i) j(i, i + 1) = 1;
  return j;
}

// Regular nilpotent supported on the superdiagonal, preserving the
// antidiagonal form of size k (symplectic or symmetric).
QMatrix superdiagonal_regular(bool symplectic, int k) {
  if (k == 1) return QMatrix(1, 1);
  const Factor f = symplectic ? Factor{Family::C, k / 2} : Factor{Family::B, (k - 1) / 2};
  const QMatrix j = f.form();
  std::vector<QVector> cols;
  for (int i = 0; i + 1 < k; ++i) {
    QMatrix e = QMatrix::unit(k, i, i + 1);
    cols.push_back(flatten(e.transpose() * j + j * e));
  }
  std::vector<QVector> rows(k * k, QVector(k - 1));
  for (int c = 0; c < k - 1; ++c)
    for (int r = 0; r < k * k; ++r) rows[r][c] = cols[c][r];
  auto kernel = nullspace(std::move(rows), k - 1);
  for (int shift = 1; shift < 8; ++shift) {
    QMatrix x(k, k);
    for (std::size_t b = 0; b < kernel.size(); ++b)
      for (int i = 0; i + 1 < k; ++i) x(i, i + 1) += kernel[b][i] * static_cast<long>(b + shift);
    if (!x.pow(k - 1).is_zero()) return x;
  }
  throw ConstructionError("no regular superdiagonal element for block of size " + std::to_string(k));
}

std::vector<std::vector<int>> partitions_of(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int maxpart) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int a = std::min(left, maxpart); a >= 1; --a) {
      cur.push_back(a);
      rec(left - a, a);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

}  // namespace

int Partition::size() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

std::string Partition::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
  return s + "]";
}

std::string label_string(const OrbitLabel& l) {
  std::string s;
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "x" : "") + l[i].to_string();
  return s;
}

bool valid_partition(const Factor& f, const std::vector<int>& parts) {
  int sum = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0 || (i && parts[i] > parts[i - 1])) return false;
    sum += parts[i];
  }
  if (sum != static_cast<int>(f.size())) return false;
  if (f.family == Family::A) return true;
  const int bad_parity = f.family == Family::C ? 1 : 0;  // C: odd parts paired; B/D: even parts paired
  std::map<int, int> mult;
  for (int p : parts) ++mult[p];
  for (auto [p, m] : mult)
    if (p % 2 == bad_parity && m % 2) return false;
  return true;
}

Partition make_partition(const Factor& f, std::vector<int> parts) {
  std::sort(parts.rbegin(), parts.rend());
  if (!valid_partition(f, parts)) {
    Partition bad{f.family, parts};
    throw InputError("partition " + bad.to_string() + " is not a nilpotent orbit of " + f.name());
  }
  return {f.family, std::move(parts)};
}

Partition parse_orbit(const Factor& f, const std::string& s) {
  if (s == "min") return minimal_orbit(f);
  if (s == "reg") return regular_orbit(f);
  if (s == "zero" || s == "0") return zero_orbit(f);
  std::string body = s;
  if (!body.empty() && body.front() == '[') body = body.substr(1);
  if (!body.empty() && body.back() == ']') body.pop_back();
  std::vector<int> parts;
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("bad orbit '" + s + "'");
    parts.push_back(std::stoi(tok));
  }
  if (parts.empty()) throw InputError("bad orbit '" + s + "'");
  return make_partition(f, parts);
}

OrbitLabel parse_label(const LieType& t, const std::string& s) {
  std::vector<std::string> toks;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, 'x')) toks.push_back(tok);
  if (toks.size() == 1) toks.assign(t.factors.size(), toks[0]);
  if (toks.size() != t.factors.size())
    throw InputError("orbit '" + s + "' needs " + std::to_string(t.factors.size()) + " components");
  OrbitLabel l;
  for (std::size_t i = 0; i < toks.size(); ++i) l.push_back(parse_orbit(t.factors[i], toks[i]));
  return l;
}

const std::vector<Partition>& orbit_catalog(const Factor& f) {
  static std::mutex mu;
  static std::map<Factor, std::vector<Partition>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(f);
  if (it != cache.end()) return it->second;
  f.validate();
  std::vector<Partition> cat;
  for (auto& p : partitions_of(static_cast<int>(f.size())))
    if (valid_partition(f, p)) cat.push_back({f.family, p});
  return cache.emplace(f, std::move(cat)).first->second;
}

Partition zero_orbit(const Factor& f) { return orbit_catalog(f).back(); }
Partition regular_orbit(const Factor& f) { return orbit_catalog(f).front(); }

Partition minimal_orbit(const Factor& f) {
  const auto& cat = orbit_catalog(f);
  for (std::size_t i = 0; i + 1 < cat.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j + 1 < cat.size() && minimal; ++j) minimal = closure_leq(cat[i], cat[j]);
    if (minimal) return cat[i];
  }
  throw InputError(f.name() + " has no minimal nonzero orbit");
}

std::vector<int> rank_sequence(const Partition& p) {
  std::vector<int> r;
  const int top = p.parts.empty() ? 0 : p.parts.front();
  for (int k = 1; k <= top; ++k) {
    int s = 0;
    for (int x : p.parts) s += std::max(x - k, 0);
    r.push_back(s);
  }
  return r;
}

bool closure_leq(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) throw InputError("closure_leq: partitions of different sizes");
  int sa = 0, sb = 0;
  const std::size_t n = std::max(a.parts.size(), b.parts.size());
  for (std::size_t i = 0; i < n; ++i) {
    sa += i < a.parts.size() ? a.parts[i] : 0;
    sb += i < b.parts.size() ? b.parts[i] : 0;
    if (sa > sb) return false;
  }
  return true;
}

bool closure_leq(const OrbitLabel& a, const OrbitLabel& b) {
  if (a.size() != b.size()) throw InputError("closure_leq: labels of different lengths");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!closure_leq(a[i], b[i])) return false;
  return true;
}

std::vector<int> transpose(const std::vector<int>& parts) {
  std::vector<int> t;
  for (int k = 1; !parts.empty() && k <= parts.front(); ++k) {
    int c = 0;
    for (int x : parts) c += x >= k;
    t.push_back(c);
  }
  return t;
}

QMatrix representative(const Factor& f, const Partition& p) {
  if (!valid_partition(f, p.parts)) throw InputError("invalid partition " + p.to_string() + " for " + f.name());
  std::vector<QMatrix> blocks;
  if (f.family == Family::A) {
    for (int k : p.parts) blocks.push_back(jordan_block(k));
    return block_diagonal(blocks);
  }
  const bool symplectic = f.family == Family::C;
  std::vector<BlockForm> forms;
  std::map<int, int, std::greater<>> mult;
  for (int k : p.parts) ++mult[k];
  int sign = 1;
  for (auto [k, m] : mult) {
    for (int i = 0; i + 1 < m; i += 2) {
      blocks.push_back(gl_into_form(jordan_block(k)));
      forms.push_back({symplectic ? Family::C : Family::D, static_cast<std::size_t>(2 * k), 1});
    }
    if (m % 2) {
      blocks.push_back(superdiagonal_regular(symplectic, k));
      forms.push_back({symplectic ? Family::C : Family::B, static_cast<std::size_t>(k), symplectic ? 1 : sign});
      sign = -sign;
    }
  }
  const QMatrix pm = hyperbolic_isometry(forms, f);
  QMatrix x = pm * block_diagonal(blocks) * inverse(pm);
  if (!build_classical(LieType{{f}})->contains(x) || partition_of_element(x, f.family) != p)
    throw ConstructionError("representative construction failed for " + p.to_string() + " in " + f.name());
  return x;
}

QMatrix representative(const LieType& t, const OrbitLabel& l) {
  if (l.size() != t.factors.size()) throw InputError("orbit label length does not match the type");
  std::vector<QMatrix> blocks;
  for (std::size_t i = 0; i < l.size(); ++i) blocks.push_back(representative(t.factors[i], l[i]));
  return block_diagonal(blocks);
}

int orbit_dim(const Factor& f, const Partition& p) {
  static std::mutex mu;
  static std::map<std::pair<Factor, Partition>, int> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find({f, p}); it != cache.end()) return it->second;
  }
  const QMatrix e = representative(f, p);
  auto g = build_classical(LieType{{f}});
  std::vector<QVector> rows;
  for (const auto& b : g->basis()) rows.push_back(flatten(commutator(b, e)));
  const int d = static_cast<int>(rank(std::move(rows)));
  std::lock_guard<std::mutex> lock(mu);
  cache[{f, p}] = d;
  return d;
}

int orbit_dim(const LieType& t, const OrbitLabel& l) {
  if (l.size() != t.factors.size()) throw InputError("orbit label length does not match the type");
  int d = 0;
  for (std::size_t i = 0; i < l.size(); ++i) d += orbit_dim(t.factors[i], l[i]);
  return d;
}

Partition partition_of_element(const QMatrix& x, Family family) {
  const std::size_t n = x.rows();
  if (x.cols() != n) throw InputError("partition_of_element: matrix is not square");
  std::vector<int> r{static_cast<int>(n)};
  QMatrix pw = QMatrix::identity(n);
  while (r.back() > 0) {
    pw = pw * x;
    const int rk = static_cast<int>(rank(pw));
    if (rk == r.back()) throw InputError("partition_of_element: matrix is not nilpotent");
    r.push_back(rk);
  }
  std::vector<int> dual;
  for (std::size_t k = 1; k < r.size(); ++k) dual.push_back(r[k - 1] - r[k]);
  return {family, transpose(dual)};
}

OrbitLabel partition_of_element(const LieType& t, const QMatrix& x) {
  OrbitLabel l;
  for (std::size_t i = 0; i < t.factors.size(); ++i)
    l.push_back(partition_of_element(x.block(t.offset(i), t.factors[i].size()), t.factors[i].family));
  return l;
}

OrbitSet closure(const LieType& t, const OrbitLabel& l) {
  if (l.size() != t.factors.size()) throw InputError("orbit label length does not match the type");
  std::vector<std::vector<Partition>> below;
  for (std::size_t i = 0; i < l.size(); ++i) {
    below.emplace_back();
    for (const auto& p : orbit_catalog(t.factors[i]))
      if (closure_leq(p, l[i])) below.back().push_back(p);
  }
  OrbitSet s{{}, true};
  OrbitLabel cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == below.size()) {
      s.orbits.push_back(cur);
      return;
    }
    for (const auto& p : below[i]) {
      cur.push_back(p);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return s;
}

OrbitSet nilpotent_cone(const LieType& t) {
  OrbitLabel reg;
  for (const auto& f : t.factors) reg.push_back(regular_orbit(f));
  return closure(t, reg);
}

OrbitLabel richardson_partition(const AlgebraPtr& g, const Parabolic& p, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("trials must be >= 1");
  const LieType& t = g->type();
  std::mt19937_64 rng(seed);
  OrbitLabel best;
  for (const auto& f : t.factors) best.push_back(zero_orbit(f));
  const int target = 2 * static_cast<int>(p.nilradical.dim());
  // Extra rounds only guard against an unlucky draw; the first normally suffices.
  for (int round = 0; round < 4; ++round) {
    for (int trial = 0; trial < trials; ++trial) {
      QMatrix x(g->matrix_size(), g->matrix_size());
      for (const auto& b : p.nilradical.basis) x += b * Rational(static_cast<long>(rng() % 21) - 10);
      OrbitLabel l = partition_of_element(t, x);
      for (std::size_t i = 0; i < l.size(); ++i) {
        if (closure_leq(l[i], best[i])) continue;
        if (!closure_leq(best[i], l[i]))
          throw ConstructionError("sampled Jordan types " + best[i].to_string() + " and " + l[i].to_string() +
                                  " are incomparable");
        best[i] = l[i];
      }
    }
    if (orbit_dim(t, best) == target) return best;
  }
  throw ConstructionError("Richardson sample " + label_string(best) + " has dimension " +
                          std::to_string(orbit_dim(t, best)) + ", expected " + std::to_string(target));
}

}  // namespace orbitkit
