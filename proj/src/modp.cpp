#include "orbitkit/modp.hpp"

#include <utility>

#include "orbitkit/errors.hpp"

namespace orbitkit {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p == 0) throw UnluckyPrime("inverse of zero mod " + std::to_string(p));
  return pow(a, p - 2);
}

std::uint64_t PrimeField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += static_cast<long long>(p);
  return static_cast<std::uint64_t>(r);
}

std::uint64_t PrimeField::from_rational(const Rational& q) const {
  mpz_class pz(std::to_string(p));
  mpz_class num = q.get_num() % pz;
  if (num < 0) num += pz;
  mpz_class den = q.get_den() % pz;
  if (den == 0) throw UnluckyPrime("denominator " + q.get_den().get_str() + " vanishes mod " + std::to_string(p));
  return mul(num.get_ui(), inv(den.get_ui()));
}

std::size_t rank_mod(ModMatrix m, const PrimeField& f) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    const std::uint64_t inv = f.inv(m[r][c]);
    for (std::size_t j = c; j < cols; ++j) m[r][j] = f.mul(m[r][j], inv);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::uint64_t fac = m[i][c];
      if (fac == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        if (m[r][j]) m[i][j] = f.sub(m[i][j], f.mul(fac, m[r][j]));
    }
    ++r;
  }
  return r;
}

ModMatrix mat_mul(const ModMatrix& a, const ModMatrix& b, const PrimeField& f) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  ModMatrix r(n, std::vector<std::uint64_t>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (b[l][j]) r[i][j] = f.add(r[i][j], f.mul(a[i][l], b[l][j]));
    }
  return r;
}

ModMatrix to_mod(const QMatrix& m, const PrimeField& f) {
  ModMatrix r(m.rows(), std::vector<std::uint64_t>(m.cols(), 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) r[i][j] = f.from_rational(m(i, j));
  return r;
}

}  // namespace orbitkit
