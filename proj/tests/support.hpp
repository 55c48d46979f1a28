#pragma once

#include <random>
#include <string>
#include <vector>

#include "poissoncoh/cartan.hpp"
#include "poissoncoh/gradedpoly.hpp"
#include "poissoncoh/harrison.hpp"
#include "poissoncoh/poisson_core.hpp"

namespace testing {

using namespace poissoncoh;

inline WeightedContext xy_context() { return WeightedContext({"x", "y"}, {1, 1}, 2); }

inline Polynomial P(const std::string& text, const WeightedContext& ctx) { return parse_polynomial(text, ctx); }

inline Polyvector field(const WeightedContext& ctx, std::vector<int> indices, const std::string& coeff) {
  return Polyvector::term(ctx.size(), std::move(indices), P(coeff, ctx));
}

inline DifferentialForm form(const WeightedContext& ctx, std::vector<int> indices, const std::string& coeff) {
  return DifferentialForm::term(ctx.size(), std::move(indices), P(coeff, ctx));
}

inline PoissonStructure symplectic_xy() {
  auto ctx = xy_context();
  return PoissonStructure(ctx, field(ctx, {0, 1}, "1"));
}

inline PoissonStructure zero_structure_xy() {
  auto ctx = xy_context();
  return PoissonStructure(ctx, Polyvector(2, 2));
}

inline Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Exponent random_exponent(std::mt19937& rng, const WeightedContext& ctx, int weight) {
  auto all = exponents_of_weight(ctx, weight);
  if (all.empty()) return {};
  return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

/// Random polynomial with up to `terms` monomials of weights in [lo, hi].
inline Polynomial random_polynomial(std::mt19937& rng, const WeightedContext& ctx, int lo, int hi, int terms = 3) {
  Polynomial p(ctx.size());
  std::uniform_int_distribution<int> wd(lo, hi);
  for (int t = 0; t < terms; ++t) {
    Exponent e = random_exponent(rng, ctx, wd(rng));
    if (!e.empty()) p.add_term(e, random_rational(rng));
  }
  return p;
}

/// Random weighted-homogeneous polyvector of the given degree and weight.
inline Polyvector random_polyvector(std::mt19937& rng, const WeightedContext& ctx, int degree, int weight, int terms = 4) {
  const int n = static_cast<int>(ctx.size());
  Polyvector out(ctx.size(), degree);
  std::vector<Subset> subsets;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != degree) continue;
    Subset s;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(i);
    subsets.push_back(s);
  }
  std::uniform_int_distribution<std::size_t> pick(0, subsets.size() - 1);
  for (int t = 0; t < terms && !subsets.empty(); ++t) {
    const Subset& s = subsets[pick(rng)];
    int coeff_weight = weight;
    for (int v : s) coeff_weight += ctx.weight(v);
    if (coeff_weight < 0) continue;
    Exponent e = random_exponent(rng, ctx, coeff_weight);
    if (e.empty()) continue;
    out.add(s, Polynomial::monomial(e, random_rational(rng)));
  }
  return out;
}

inline MonomialId id_of(HarrisonContext& ctx, const std::string& text) {
  return ctx.intern(P(text, ctx.weights()).terms().begin()->first);
}

}  // namespace testing
