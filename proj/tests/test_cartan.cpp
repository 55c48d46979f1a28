#include <doctest.h>

#include "support.hpp"

using namespace testing;

namespace {

template <class A, class B>
concept Wedgeable = requires(A a, B b) { wedge(a, b); };

Polynomial eval(const Polyvector& p, std::vector<Polynomial> args) { return evaluate_on_exacts(p, args); }

}  // namespace

static_assert(Wedgeable<Polyvector, Polyvector>);
static_assert(!Wedgeable<Polyvector, DifferentialForm>);

TEST_SUITE("cartan") {

TEST_CASE("wedge examples") {
  auto ctx = xy_context();
  CHECK(wedge(field(ctx, {0}, "1"), field(ctx, {1}, "1")) == field(ctx, {0, 1}, "1"));
  CHECK(wedge(field(ctx, {0}, "1"), field(ctx, {0}, "1")).is_zero());
  CHECK(wedge(field(ctx, {0}, "x"), field(ctx, {1}, "y")) == field(ctx, {0, 1}, "x*y"));
  CHECK(field(ctx, {1, 0}, "1") == field(ctx, {0, 1}, "-1"));
}

TEST_CASE("wedge is graded-commutative") {
  WeightedContext ctx({"a", "b", "c", "d"}, {1, 1, 1, 1}, 2);
  std::mt19937 rng(2);
  for (int t = 0; t < 30; ++t) {
    std::uniform_int_distribution<int> deg(0, 3);
    int p = deg(rng), q = deg(rng);
    auto a = random_polyvector(rng, ctx, p, 0), b = random_polyvector(rng, ctx, q, 1);
    auto ab = wedge(a, b), ba = wedge(b, a);
    CHECK(ab == ((p * q) % 2 ? -ba : ba));
  }
}

TEST_CASE("evaluate_on_exacts examples") {
  auto ctx = xy_context();
  auto theta = field(ctx, {0, 1}, "1");
  CHECK(eval(theta, {P("x", ctx), P("y", ctx)}) == P("1", ctx));
  CHECK(eval(theta, {P("x^2", ctx), P("y", ctx)}) == P("2*x", ctx));
  CHECK(eval(theta, {P("x", ctx), P("x", ctx)}).is_zero());
  CHECK_THROWS_AS(eval(theta, {P("x", ctx)}), std::invalid_argument);
}

TEST_CASE("evaluate_on_exacts is alternating and a derivation in each slot") {
  WeightedContext ctx({"a", "b", "c"}, {1, 2, 3}, 1);
  std::mt19937 rng(9);
  for (int t = 0; t < 30; ++t) {
    auto p = random_polyvector(rng, ctx, 3, 0);
    Polynomial f = random_polynomial(rng, ctx, 1, 4), g = random_polynomial(rng, ctx, 1, 4),
               h = random_polynomial(rng, ctx, 1, 4), k = random_polynomial(rng, ctx, 1, 3);
    CHECK(eval(p, {f, g, h}) == -eval(p, {g, f, h}));
    CHECK(eval(p, {f, g, h}) == -eval(p, {f, h, g}));
    CHECK(eval(p, {f * k, g, h}) == f * eval(p, {k, g, h}) + k * eval(p, {f, g, h}));
  }
}

TEST_CASE("de_rham_d examples") {
  auto ctx = xy_context();
  CHECK(de_rham_d(form(ctx, {1}, "x")) == form(ctx, {0, 1}, "1"));
  CHECK(de_rham_d(form(ctx, {0}, "x*y")) == form(ctx, {0, 1}, "-x"));
  CHECK(de_rham_d(de_rham_d(form(ctx, {}, "x^3*y"))).is_zero());
}

TEST_CASE("d squared vanishes on random forms") {
  WeightedContext ctx({"a", "b", "c", "d"}, {1, 2, 1, 3}, 2);
  std::mt19937 rng(4);
  for (int t = 0; t < 40; ++t) {
    std::uniform_int_distribution<int> deg(0, 3), wt(0, 8);
    int k = deg(rng), w = wt(rng);
    DifferentialForm f(4, k);
    auto source = random_polyvector(rng, ctx, k, w);
    for (const auto& [s, c] : source.components()) f.add(s, c);
    CHECK(de_rham_d(de_rham_d(f)).is_zero());
    auto g = DifferentialForm::scalar(random_polynomial(rng, ctx, 0, 4));
    CHECK(de_rham_d(wedge(g, f)) == wedge(de_rham_d(g), f) + wedge(g, de_rham_d(f)));
  }
}

TEST_CASE("interior_product examples") {
  auto ctx = xy_context();
  auto vol = form(ctx, {0, 1}, "1");
  CHECK(interior_product(field(ctx, {0}, "1"), vol) == form(ctx, {1}, "1"));
  CHECK(interior_product(field(ctx, {1}, "1"), vol) == form(ctx, {0}, "-1"));
  CHECK(interior_product(field(ctx, {0, 1}, "1"), vol) == form(ctx, {}, "1"));
  CHECK_THROWS_AS(interior_product(field(ctx, {0, 1}, "1"), form(ctx, {0}, "1")), std::invalid_argument);
}

TEST_CASE("interior product of a wedge composes") {
  WeightedContext ctx({"a", "b", "c", "d"}, {1, 1, 1, 1}, 2);
  std::mt19937 rng(6);
  for (int t = 0; t < 30; ++t) {
    auto a = random_polyvector(rng, ctx, 1, 0), b = random_polyvector(rng, ctx, 1, 1);
    DifferentialForm f(4, 3);
    auto source = random_polyvector(rng, ctx, 3, 1);
    for (const auto& [s, c] : source.components()) f.add(s, c);
    CHECK(interior_product(wedge(a, b), f) == interior_product(b, interior_product(a, f)));
  }
}

TEST_CASE("musical isomorphism") {
  auto ctx = xy_context();
  Musical m(field(ctx, {0, 1}, "1"), 2);
  auto dx = field(ctx, {0}, "1");
  CHECK(m.to_form(dx) == form(ctx, {1}, "1"));
  CHECK(m.to_polyvector(m.to_form(dx)) == dx);
  auto vol = m.to_form(field(ctx, {0, 1}, "1"));
  REQUIRE(vol.components().size() == 1);
  CHECK(vol.components().begin()->first == Subset{0, 1});
  CHECK(m.to_polyvector(vol) == field(ctx, {0, 1}, "1"));
  CHECK(m.weight_shift(2) == 4);
  CHECK_THROWS_AS(Musical(field(ctx, {0, 1}, "x"), 2), NonConstantDeterminant);
  CHECK_THROWS_AS(Musical(Polyvector(2, 2), 2), SingularBivector);
}

TEST_CASE("musical round trip and weight bookkeeping on C^4") {
  WeightedContext ctx({"x1", "x2", "x3", "x4"}, {1, 1, 1, 1}, 2);
  Musical m(field(ctx, {0, 1}, "1") + field(ctx, {2, 3}, "1"), 2);
  std::mt19937 rng(12);
  for (int t = 0; t < 30; ++t) {
    std::uniform_int_distribution<int> deg(0, 4), wt(-2, 3);
    int k = deg(rng), w = wt(rng);
    auto p = random_polyvector(rng, ctx, k, w);
    auto f = m.to_form(p);
    CHECK(m.to_polyvector(f) == p);
    if (!p.is_zero()) CHECK(homogeneous_weight(f, ctx) == *homogeneous_weight(p, ctx) + m.weight_shift(k));
  }
}

TEST_CASE("field weights") {
  auto ctx = xy_context();
  CHECK(homogeneous_weight(field(ctx, {0}, "x"), ctx) == 0);
  CHECK(homogeneous_weight(field(ctx, {0, 1}, "1"), ctx) == -2);
  CHECK(homogeneous_weight(form(ctx, {0, 1}, "x"), ctx) == 3);
  CHECK_FALSE(homogeneous_weight(field(ctx, {0}, "x + 1"), ctx).has_value());
}

}  // TEST_SUITE
