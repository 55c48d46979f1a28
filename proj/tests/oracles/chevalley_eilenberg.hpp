#pragma once

// Brute-force Lie algebra cohomology H^k(g, S^m g) for a three-dimensional
// Lie algebra acting on symmetric powers of itself through the adjoint
// action. Integer matrices, Bareiss rank; shares nothing with the library
// beyond GMP.

#include <gmpxx.h>

#include <array>
#include <map>
#include <vector>

namespace oracle {

using Mono = std::array<int, 3>;
using Poly = std::map<Mono, mpz_class>;

/// structure[a][b] = coefficients of [x_a, x_b] in the basis.
using Structure = std::array<std::array<std::array<int, 3>, 3>, 3>;

inline Structure sl2() {
  // basis e, f, h: [e,f] = h, [h,e] = 2e, [h,f] = -2f
  Structure c{};
  c[0][1] = {0, 0, 1};
  c[1][0] = {0, 0, -1};
  c[2][0] = {2, 0, 0};
  c[0][2] = {-2, 0, 0};
  c[2][1] = {0, -2, 0};
  c[1][2] = {0, 2, 0};
  return c;
}

inline std::vector<Mono> monomials(int degree) {
  std::vector<Mono> out;
  for (int a = degree; a >= 0; --a)
    for (int b = degree - a; b >= 0; --b) out.push_back({a, b, degree - a - b});
  return out;
}

/// x_a . m, the adjoint action extended as a derivation.
inline Poly act(const Structure& c, int a, const Mono& m) {
  Poly out;
  for (int b = 0; b < 3; ++b) {
    if (m[b] == 0) continue;
    for (int k = 0; k < 3; ++k) {
      if (c[a][b][k] == 0) continue;
      Mono n = m;
      --n[b];
      ++n[k];
      out[n] += mpz_class(m[b]) * c[a][b][k];
    }
  }
  return out;
}

inline std::vector<std::vector<int>> subsets(int k) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < 8; ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> s;
    for (int i = 0; i < 3; ++i)
      if (mask >> i & 1) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

/// Sign and sorted form of a list of distinct basis indices (0 if repeated).
inline int sort_sign(std::vector<int>& v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) return 0;
      if (v[i] > v[j]) {
        std::swap(v[i], v[j]);
        sign = -sign;
      }
    }
  return sign;
}

inline std::size_t bareiss_rank(std::vector<std::vector<mpz_class>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

/// Matrix of d: C^k(g, S^m) -> C^{k+1}(g, S^m). A cochain basis element is
/// (monomial, sorted subset) meaning the map sending x_S to the monomial.
inline std::vector<std::vector<mpz_class>> differential(const Structure& c, int k, int m) {
  auto monos = monomials(m);
  auto src = subsets(k), dst = subsets(k + 1);
  std::map<Mono, std::size_t> mono_index;
  for (std::size_t i = 0; i < monos.size(); ++i) mono_index[monos[i]] = i;
  const std::size_t ncols = monos.size() * src.size(), nrows = monos.size() * dst.size();
  std::vector<std::vector<mpz_class>> out(nrows, std::vector<mpz_class>(ncols));
  for (std::size_t si = 0; si < src.size(); ++si)
    for (std::size_t mi = 0; mi < monos.size(); ++mi) {
      const std::size_t col = si * monos.size() + mi;
      auto omega = [&](std::vector<int> args) -> int {  // coefficient of monos[mi]
        int sign = sort_sign(args);
        return sign != 0 && args == src[si] ? sign : 0;
      };
      for (std::size_t di = 0; di < dst.size(); ++di) {
        const auto& y = dst[di];
        Poly value;
        for (int i = 0; i <= k; ++i) {
          std::vector<int> rest;
          for (int t = 0; t <= k; ++t)
            if (t != i) rest.push_back(y[t]);
          int s = omega(rest);
          if (s == 0) continue;
          for (const auto& [n, q] : act(c, y[i], monos[mi])) value[n] += (i % 2 ? -1 : 1) * s * q;
        }
        for (int i = 0; i <= k; ++i)
          for (int j = i + 1; j <= k; ++j)
            for (int b = 0; b < 3; ++b) {
              int coef = c[y[i]][y[j]][b];
              if (coef == 0) continue;
              std::vector<int> args{b};
              for (int t = 0; t <= k; ++t)
                if (t != i && t != j) args.push_back(y[t]);
              int s = omega(args);
              if (s != 0) value[monos[mi]] += ((i + j) % 2 ? -1 : 1) * s * coef;
            }
        for (const auto& [n, q] : value)
          if (q != 0) out[di * monos.size() + mono_index.at(n)][col] = q;
      }
    }
  return out;
}

inline std::size_t cochain_dimension(int k, int m) {
  if (k < 0 || k > 3 || m < 0) return 0;
  return subsets(k).size() * monomials(m).size();
}

/// dim H^k(g, S^m g).
inline std::size_t cohomology(const Structure& c, int k, int m) {
  if (k < 0 || k > 3 || m < 0) return 0;
  std::size_t rank_out = k < 3 ? bareiss_rank(differential(c, k, m)) : 0;
  std::size_t rank_in = k > 0 ? bareiss_rank(differential(c, k - 1, m)) : 0;
  return cochain_dimension(k, m) - rank_out - rank_in;
}

}  // namespace oracle
