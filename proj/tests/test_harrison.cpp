#include <doctest.h>

#include "poissoncoh/deform.hpp"
#include "poissoncoh/lp_cohomology.hpp"
#include "poissoncoh/structures.hpp"
#include "support.hpp"

using namespace testing;

namespace {

HarrisonCochain cochain_from(HarrisonContext& ctx, const Shape& shape, int D,
                             const std::function<Polynomial(const ChainProduct&)>& value) {
  HarrisonCochain c{shape, D, {}};
  for (int u = 1; u <= D; ++u)
    for (const auto& key : component_keys(ctx, shape, u)) {
      Polynomial v = value(key);
      if (!v.is_zero()) c.values.emplace(key, v);
    }
  return c;
}

}  // namespace

TEST_SUITE("harrison") {

TEST_CASE("boundary of a two-tensor") {
  HarrisonContext ctx(symplectic_xy(), 4);
  auto x = id_of(ctx, "x"), y = id_of(ctx, "y"), xy = id_of(ctx, "x*y");
  auto b = harrison_boundary(ctx, ChainTensor{x, y});
  ChainWithCoefficients expected{{{{x}, y}, 1}, {{{xy}, 0}, -1}, {{{y}, x}, 1}};
  CHECK(b == expected);
}

TEST_CASE("boundary kills shuffle relations") {
  HarrisonContext ctx(builtin_structure("sl2star"), 8);
  auto e = id_of(ctx, "e"), f = id_of(ctx, "f"), h = id_of(ctx, "h");
  ChainWithCoefficients rel{{{{e, f}, 0}, 1}, {{{f, e}, 0}, -1}};
  CHECK(harrison_boundary(ctx, rel).empty());
  for (const auto& img : ctx.shuffle_images({e, f, h})) {
    ChainWithCoefficients c;
    for (const auto& [t, q] : img) c[{t, 0}] += q;
    CHECK(harrison_boundary(ctx, c).empty());
  }
}

TEST_CASE("boundary squares to zero") {
  HarrisonContext ctx(builtin_structure("a1cone"), 12);
  std::mt19937 rng(19);
  auto monos = ctx.monomials(2);
  auto more = ctx.monomials(4);
  monos.insert(monos.end(), more.begin(), more.end());
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  for (int t = 0; t < 10; ++t) {
    ChainTensor tensor;
    for (int k = 0; k < 4; ++k) tensor.push_back(monos[pick(rng)]);
    CHECK(harrison_boundary(ctx, harrison_boundary(ctx, tensor, false), false).empty());
    CHECK(harrison_boundary(ctx, harrison_boundary(ctx, tensor)).empty());
  }
}

TEST_CASE("chain bases and shuffle quotients") {
  HarrisonContext ctx(symplectic_xy(), 6);
  for (int n = 2; n <= 3; ++n) {
    auto cb = build_chain_basis(ctx, n, 6);
    for (const auto& [w, basis] : cb.basis)
      for (const auto& t : basis)
        for (const auto& img : ctx.shuffle_images(t)) {
          std::map<ChainTensor, Rational> acc;
          for (const auto& [u, q] : img)
            for (const auto& [r, c] : ctx.reduce(u)) acc[r] += q * c;
          for (const auto& [r, c] : acc) CHECK(sgn(c) == 0);
        }
  }
  // ch_2 is the symmetric square: dimension of weight-u pairs of positive monomials
  CHECK(ctx.chain_basis(2, 2).size() == 3);  // x.x, x.y, y.y
  CHECK(ctx.chain_basis(2, 3).size() == 6);
}

TEST_CASE("harrison coboundary examples") {
  const int D = 6;
  HarrisonContext ctx(symplectic_xy(), D);
  auto x = id_of(ctx, "x"), y = id_of(ctx, "y");
  auto id = cochain_from(ctx, {1}, D, [&](const ChainProduct& k) { return ctx.monomial(k[0][0]); });
  auto d1 = harrison_coboundary(ctx, id);
  CHECK(d1.shape == Shape{2});
  CHECK(d1.evaluate(ctx, {{x, y}}) == ctx.monomial(id_of(ctx, "x*y")));

  auto dx = cochain_from(ctx, {1}, D, [&](const ChainProduct& k) { return ctx.monomial(k[0][0]).derivative(0); });
  CHECK(harrison_coboundary(ctx, dx).is_zero());

  std::mt19937 rng(2);
  auto f = cochain_from(ctx, {1}, D, [&](const ChainProduct&) { return random_polynomial(rng, ctx.weights(), 0, 3, 2); });
  CHECK(harrison_coboundary(ctx, harrison_coboundary(ctx, f)).is_zero());
  CHECK_THROWS_AS(d1.evaluate(ctx, {{id_of(ctx, "x^4"), id_of(ctx, "y^3")}}), std::out_of_range);
}

TEST_CASE("chain bracket examples") {
  {
    HarrisonContext ctx(symplectic_xy(), 4);
    CHECK(chain_bracket(ctx, {id_of(ctx, "x")}, {id_of(ctx, "y")}) == ChainCombination{{{0}, 1}});
  }
  HarrisonContext ctx(builtin_structure("sl2star"), 8);
  auto e = id_of(ctx, "e"), f = id_of(ctx, "f"), h = id_of(ctx, "h");
  CHECK(chain_bracket(ctx, {e}, {f}) == ChainCombination{{{h}, 1}});
  // (1,2) shuffles of e into f.f: only e f f and f e f have an (e, f) adjacency
  CHECK(chain_bracket(ctx, {e}, {f, f}) == ChainCombination{{{h, f}, 1}, {{f, h}, 1}});
  CHECK(chain_bracket(ctx, {e}, {h, f}) == ChainCombination{{{e, f}, -2}, {{h, h}, 1}});
}

TEST_CASE("chain bracket on ch_1 is the Poisson bracket") {
  auto ps = builtin_structure("a1cone");
  HarrisonContext ctx(ps, 10);
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    std::uniform_int_distribution<int> w(1, 4);
    auto ma = ctx.monomials(2 * w(rng)), mb = ctx.monomials(2 * w(rng));
    MonomialId a = ma[rng() % ma.size()], b = mb[rng() % mb.size()];
    Polynomial viaChain(3);
    for (const auto& [tensor, c] : chain_bracket(ctx, {a}, {b})) viaChain += c * ctx.monomial(tensor[0]);
    CHECK(viaChain == ps.bracket(ctx.monomial(a), ctx.monomial(b)));
  }
}

TEST_CASE("poisson coboundary examples") {
  const int D = 6;
  auto ps = symplectic_xy();
  HarrisonContext ctx(ps, D);
  auto x = id_of(ctx, "x"), y = id_of(ctx, "y");
  Parts delta_only{false, true};

  RawCochain mult = [&](const ChainProduct& in) {
    if (in.size() != 1 || in[0].size() != 2) return Polynomial(2);
    return ps.reduce(ctx.monomial(in[0][0]) * ctx.monomial(in[0][1]));
  };
  CHECK(evaluate_coboundary(ctx, {{x, y}, {x}}, mult, delta_only).is_zero());

  RawCochain bracket = [&](const ChainProduct& in) {
    if (in.size() != 2) return Polynomial(2);
    return ps.bracket(ctx.monomial(in[0][0]), ctx.monomial(in[1][0]));
  };
  for (auto a : ctx.monomials(1))
    for (auto b : ctx.monomials(2))
      for (auto c : ctx.monomials(2)) CHECK(evaluate_coboundary(ctx, {{a}, {b}, {c}}, bracket, delta_only).is_zero());

  RawCochain identity = [&](const ChainProduct& in) {
    if (in.size() != 1 || in[0].size() != 1) return Polynomial(2);
    return ctx.monomial(in[0][0]);
  };
  CHECK(evaluate_coboundary(ctx, {{x}, {y}}, identity, delta_only) == Polynomial::constant(2, 1));

  // normalized cochains vanish on 1; the Euler derivation E(a) = weight(a) a gives delta E = l * bracket
  auto euler = cochain_from(ctx, {1}, D, [&](const ChainProduct& k) {
    return Polynomial::constant(2, ctx.weight(k[0][0])) * ctx.monomial(k[0][0]);
  });
  auto psi = poisson_coboundary(ctx, euler);
  CHECK(psi.shape == Shape{1, 1});
  CHECK(psi.evaluate(ctx, {{x}, {y}}) == Polynomial::constant(2, 2));
  CHECK(psi.evaluate(ctx, {{y}, {x}}) == Polynomial::constant(2, -2));
  for (auto a : ctx.monomials(2))
    for (auto b : ctx.monomials(3))
      CHECK(psi.evaluate(ctx, {{a}, {b}}) == Polynomial::constant(2, 2) * ps.bracket(ctx.monomial(a), ctx.monomial(b)));
}

TEST_CASE("total complex squares to zero") {
  for (const char* name : {"symplectic2", "sl2star", "a1cone"}) {
    auto ps = builtin_structure(name);
    HarrisonContext ctx(ps, 5);
    for (int W = -3; W <= 3; ++W) {
      auto ts = build_total_slice(ctx, W, 5);
      CHECK(ts.d2.multiply(ts.d1).is_zero());
      auto dd = build_total_slice(ctx, W, 5, Parts{true, false});
      CHECK(dd.d2.multiply(dd.d1).is_zero());
    }
  }
}

TEST_CASE("associative products from d-cocycles") {
  auto ps = zero_structure_xy();
  const int D = 5;
  HarrisonContext ctx(ps, D);
  for (int W = -1; W <= 1; ++W) {
    auto ts = build_total_slice(ctx, W, D, Parts{true, false});
    for (const auto& v : sparse_kernel(ts.d2)) {
      auto parts = to_cochains(ctx, ts.c2, v);
      FirstOrderDeformation d = zero_deformation(D);
      d.phi = parts[0];
      for (int u = 3; u <= D; ++u)
        for (auto a : ctx.monomials(1))
          for (auto b : ctx.monomials(1))
            for (auto c : ctx.monomials(u - 2))
              CHECK(identity_defect(ctx, d, Identity::associativity, a, b, c).is_zero());
    }
  }
}

TEST_CASE("total_hp examples") {
  auto ps = symplectic_xy();
  for (int w = -1; w <= 2; ++w) {
    auto r = total_hp(ps, 1, w, 6);
    CHECK(r.stable);
    CHECK(r.dimension == hp_dimension(ps, 1, w));
  }
  auto zero = zero_structure_xy();
  HarrisonContext zctx(zero, 6);
  for (int w = -2; w <= 1; ++w) {
    CHECK(total_hp(zctx, 1, w, 6).dimension == polyvector_basis(zero.context(), 1, w).size());
    CHECK(total_hp(zctx, 2, w, 6).dimension == polyvector_basis(zero.context(), 2, w).size());
    auto full = build_total_slice(zctx, w + 4, 6), donly = build_total_slice(zctx, w + 4, 6, Parts{true, false});
    CHECK(full.hp(2) == donly.hp(2));
  }
  auto cone = builtin_structure("a1cone");
  HarrisonContext cctx(cone, 6);
  std::vector<int> nontrivial;
  for (int w = -12; w <= 2; ++w)
    if (total_hp(cctx, 2, w, 6).dimension) nontrivial.push_back(w);
  REQUIRE(nontrivial.size() == 1);
  CHECK(total_hp(cctx, 2, nontrivial[0], 6).dimension == 1);
}

}  // TEST_SUITE
