#include "poissoncoh/deform.hpp"

#include <set>

#include "poissoncoh/lp_cohomology.hpp"

namespace poissoncoh {

namespace {

std::size_t nv(HarrisonContext& ctx) { return ctx.structure().num_vars(); }

// Positive-weight normal-form monomials of weight <= D, ascending id.
std::vector<MonomialId> positive_monomials(HarrisonContext& ctx, int truncation) {
  std::vector<MonomialId> out;
  for (int w = 1; w <= truncation; ++w)
    for (auto id : ctx.monomials(w)) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

HarrisonCochain difference(const HarrisonCochain& a, const HarrisonCochain& b) {
  HarrisonCochain out{a.shape, std::min(a.truncation, b.truncation), a.values};
  for (const auto& [k, v] : b.values) {
    auto [it, inserted] = out.values.try_emplace(k, -v);
    if (!inserted) {
      it->second -= v;
      if (it->second.is_zero()) out.values.erase(it);
    }
  }
  return out;
}

HarrisonCochain negated(HarrisonCochain c) {
  for (auto& [k, v] : c.values) v = -v;
  return c;
}

// Slice invariants touched by a cochain with s factors.
void collect_invariants(HarrisonContext& ctx, const HarrisonCochain& c, std::set<int>& out) {
  const int s = static_cast<int>(c.shape.size());
  for (const auto& [key, poly] : c.values) {
    int in = ctx.weight(key);
    for (const auto& [e, q] : poly.terms()) out.insert(ctx.weights().weight(e) - in + s * ctx.bracket_weight());
  }
}

}  // namespace

Polynomial FirstOrderDeformation::phi_at(HarrisonContext& ctx, MonomialId a, MonomialId b) const {
  if (a == 0 || b == 0) return Polynomial(nv(ctx));
  return phi.evaluate(ctx, {{a, b}});
}

Polynomial FirstOrderDeformation::psi_at(HarrisonContext& ctx, MonomialId a, MonomialId b) const {
  if (a == 0 || b == 0) return Polynomial(nv(ctx));
  if (bivector) {
    std::vector<Polynomial> args{ctx.monomial(a), ctx.monomial(b)};
    return evaluate_on_exacts(*bivector, args);
  }
  return psi.evaluate(ctx, {{a}, {b}});
}

Polynomial FirstOrderDeformation::phi_at(HarrisonContext& ctx, const Polynomial& a, const Polynomial& b) const {
  Polynomial out(nv(ctx));
  for (const auto& [m, c] : ctx.to_ids(a))
    for (const auto& [n, d] : ctx.to_ids(b)) out += c * d * phi_at(ctx, m, n);
  return out;
}

Polynomial FirstOrderDeformation::psi_at(HarrisonContext& ctx, const Polynomial& a, const Polynomial& b) const {
  Polynomial out(nv(ctx));
  for (const auto& [m, c] : ctx.to_ids(a))
    for (const auto& [n, d] : ctx.to_ids(b)) out += c * d * psi_at(ctx, m, n);
  return out;
}

FirstOrderDeformation zero_deformation(int truncation) {
  FirstOrderDeformation d;
  d.phi.truncation = truncation;
  d.psi.truncation = truncation;
  return d;
}

FirstOrderDeformation deformation_from_bivector(HarrisonContext& ctx, const Polyvector& p, int truncation) {
  if (p.degree() != 2) throw std::invalid_argument("deformation_from_bivector: expected a bivector");
  FirstOrderDeformation d = zero_deformation(truncation);
  d.bivector = p;
  for (int u = 1; u <= truncation; ++u)
    for (const auto& key : component_keys(ctx, {1, 1}, u)) {
      std::vector<Polynomial> args{ctx.monomial(key[0][0]), ctx.monomial(key[1][0])};
      Polynomial v = ctx.structure().reduce(evaluate_on_exacts(p, args));
      if (!v.is_zero()) d.psi.values.emplace(key, std::move(v));
    }
  return d;
}

FirstOrderDeformation deformation_from_witness(HarrisonContext& ctx, const HarrisonCochain& f, int truncation) {
  FirstOrderDeformation d = zero_deformation(truncation);
  d.phi = negated(apply_coboundary(ctx, {&f}, {2}, truncation, Parts{true, false}));
  d.psi = negated(apply_coboundary(ctx, {&f}, {1, 1}, truncation, Parts{false, true}));
  return d;
}

FirstOrderDeformation operator-(const FirstOrderDeformation& a, const FirstOrderDeformation& b) {
  FirstOrderDeformation out;
  out.phi = difference(a.phi, b.phi);
  out.psi = difference(a.psi, b.psi);
  if (a.bivector && b.bivector) out.bivector = *a.bivector - *b.bivector;
  return out;
}

std::string to_string(Identity id) {
  switch (id) {
    case Identity::associativity: return "associativity";
    case Identity::star: return "star";
    case Identity::star_star: return "star_star";
  }
  return "?";
}

Polynomial identity_defect(HarrisonContext& ctx, const FirstOrderDeformation& d, Identity id, MonomialId a, MonomialId b,
                           MonomialId c) {
  const auto& ps = ctx.structure();
  const Polynomial A = ctx.monomial(a), B = ctx.monomial(b), C = ctx.monomial(c);
  auto mul = [&](const Polynomial& x, const Polynomial& y) { return ps.reduce(x * y); };
  switch (id) {
    case Identity::associativity:
      return d.phi_at(ctx, mul(A, B), C) + mul(C, d.phi_at(ctx, A, B)) - d.phi_at(ctx, A, mul(B, C)) -
             mul(A, d.phi_at(ctx, B, C));
    case Identity::star:
      return d.psi_at(ctx, A, mul(B, C)) - mul(C, d.psi_at(ctx, A, B)) - mul(B, d.psi_at(ctx, A, C)) -
             d.phi_at(ctx, ps.bracket(A, B), C) - d.phi_at(ctx, ps.bracket(A, C), B) +
             ps.bracket(A, d.phi_at(ctx, B, C));
    case Identity::star_star:
      return d.psi_at(ctx, A, ps.bracket(B, C)) + d.psi_at(ctx, B, ps.bracket(C, A)) +
             d.psi_at(ctx, C, ps.bracket(A, B)) + ps.bracket(A, d.psi_at(ctx, B, C)) +
             ps.bracket(B, d.psi_at(ctx, C, A)) + ps.bracket(C, d.psi_at(ctx, A, B));
  }
  return Polynomial(nv(ctx));
}

VerificationReport verify_first_order(HarrisonContext& ctx, const FirstOrderDeformation& d, int truncation) {
  if (d.phi.truncation < truncation || (!d.bivector && d.psi.truncation < truncation))
    throw std::out_of_range("verify_first_order: deformation truncated below the requested weight");
  VerificationReport report;
  report.truncation = truncation;
  const Identity ids[] = {Identity::associativity, Identity::star, Identity::star_star};
  for (auto id : ids) report.checked.push_back({id, 0});
  auto mons = positive_monomials(ctx, truncation);
  for (int u = 1; u <= truncation; ++u)
    for (auto a : mons)
      for (auto b : mons)
        for (auto c : mons) {
          if (ctx.weight(a) + ctx.weight(b) + ctx.weight(c) != u) continue;
          for (std::size_t k = 0; k < 3; ++k) {
            ++report.checked[k].triples;
            Polynomial defect = identity_defect(ctx, d, ids[k], a, b, c);
            if (!defect.is_zero()) {
              report.violation = FirstOrderViolation{ids[k], {a, b, c}, std::move(defect)};
              return report;
            }
          }
        }
  return report;
}

std::optional<EquivalenceWitness> equivalence_witness(HarrisonContext& ctx, const FirstOrderDeformation& d1,
                                                      const FirstOrderDeformation& d2, int truncation) {
  FirstOrderDeformation delta = d2 - d1;
  std::set<int> invariants;
  collect_invariants(ctx, delta.phi, invariants);
  collect_invariants(ctx, delta.psi, invariants);
  EquivalenceWitness w;
  w.f.truncation = truncation;
  for (int W : invariants) {
    CochainSpace c1 = cochain_space(ctx, 1, W, truncation);
    CochainSpace c2 = cochain_space(ctx, 2, W, truncation);
    SparseMatrix m = total_differential(ctx, c1, c2);
    SparseVector rhs = to_vector(ctx, c2, {negated(delta.phi), negated(delta.psi)});
    auto x = sparse_solve(m, rhs);
    if (!x) return std::nullopt;
    auto parts = to_cochains(ctx, c1, *x);
    for (const auto& [key, v] : parts[0].values) {
      auto [it, inserted] = w.f.values.try_emplace(key, v);
      if (!inserted) it->second += v;
    }
  }
  if (!check_witness(ctx, d1, d2, w.f, truncation)) throw std::logic_error("equivalence_witness: solution fails the identities");
  return w;
}

bool check_witness(HarrisonContext& ctx, const FirstOrderDeformation& d1, const FirstOrderDeformation& d2,
                   const HarrisonCochain& f, int truncation) {
  const auto& ps = ctx.structure();
  auto F = [&](const Polynomial& p) {
    Polynomial out(nv(ctx));
    for (const auto& [m, c] : ctx.to_ids(p))
      if (m != 0) out += c * f.evaluate(ctx, {{m}});
    return out;
  };
  auto mons = positive_monomials(ctx, truncation);
  for (auto a : mons)
    for (auto b : mons) {
      if (ctx.weight(a) + ctx.weight(b) > truncation) continue;
      const Polynomial A = ctx.monomial(a), B = ctx.monomial(b);
      Polynomial dphi = d2.phi_at(ctx, a, b) - d1.phi_at(ctx, a, b);
      Polynomial dpsi = d2.psi_at(ctx, a, b) - d1.psi_at(ctx, a, b);
      if (dphi != F(ps.reduce(A * B)) - ps.reduce(A * F(B)) - ps.reduce(B * F(A))) return false;
      Polynomial delta_f = ps.bracket(A, F(B)) + ps.bracket(F(A), B) - F(ps.bracket(A, B));
      if (dpsi != -delta_f) return false;
    }
  return true;
}

EnumerationResult enumerate_first_order(HarrisonContext& ctx, int weight, int truncation, Route route) {
  const auto& ps = ctx.structure();
  if (route == Route::automatic) route = ps.is_smooth_ambient() ? Route::lp : Route::harrison;
  EnumerationResult result;
  result.route = route;
  result.weight = weight;
  result.truncation = truncation;
  const int W = weight + 2 * ps.bracket_weight();
  if (route == Route::lp) {
    SliceComplex sc = build_slice(ps, W, 1, 3);
    const auto& bivectors = sc.bases[1];
    auto reps = quotient_representatives(sc.differentials[0].columns(), sparse_kernel(sc.differentials[1]),
                                         bivectors.size());
    for (const auto& v : reps) {
      Polyvector p(ps.num_vars(), 2);
      for (const auto& [i, q] : v) p += Polynomial::constant(ps.num_vars(), q) * to_polyvector(bivectors[i], ps.num_vars());
      result.classes.push_back(deformation_from_bivector(ctx, p, truncation));
    }
    result.previous = result.classes.size();
    return result;
  }
  TotalSlice ts = build_total_slice(ctx, W, truncation);
  auto reps = quotient_representatives(ts.d1.columns(), sparse_kernel(ts.d2), ts.c2.dimension);
  for (const auto& v : reps) {
    auto parts = to_cochains(ctx, ts.c2, v);
    FirstOrderDeformation d = zero_deformation(truncation);
    d.phi = parts[0];
    d.psi = parts[1];
    result.classes.push_back(std::move(d));
  }
  result.previous = truncation > 1 ? build_total_slice(ctx, W, truncation - 1).hp(2) : result.classes.size();
  result.stable = result.previous == result.classes.size();
  return result;
}

// ---------------------------------------------------------------------------

DualNumberAlgebra::DualNumberAlgebra(HarrisonContext& ctx, FirstOrderDeformation d, int truncation)
    : ctx_(&ctx), d_(std::move(d)), truncation_(truncation) {}

DualNumber DualNumberAlgebra::mul(const DualNumber& x, const DualNumber& y) const {
  const auto& ps = ctx_->structure();
  DualNumber out{ps.reduce(x.re * y.re), ps.reduce(x.re * y.eps + x.eps * y.re)};
  out.eps += d_.phi_at(*ctx_, x.re, y.re);
  return out;
}

DualNumber DualNumberAlgebra::bracket(const DualNumber& x, const DualNumber& y) const {
  const auto& ps = ctx_->structure();
  DualNumber out{ps.bracket(x.re, y.re), ps.bracket(x.re, y.eps) + ps.bracket(x.eps, y.re)};
  out.eps += d_.psi_at(*ctx_, x.re, y.re);
  return out;
}

DualNumber DualNumberAlgebra::basis(MonomialId a, bool eps) const {
  Polynomial zero(ctx_->structure().num_vars());
  return eps ? DualNumber{zero, ctx_->monomial(a)} : DualNumber{ctx_->monomial(a), zero};
}

std::vector<DualNumberAlgebra::Entry> DualNumberAlgebra::table() const {
  std::vector<Entry> out;
  std::vector<MonomialId> mons{0};
  for (auto id : positive_monomials(*ctx_, truncation_)) mons.push_back(id);
  for (auto a : mons)
    for (auto b : mons) {
      if (ctx_->weight(a) + ctx_->weight(b) > truncation_) continue;
      for (int fa = 0; fa < 2; ++fa)
        for (int fb = 0; fb < 2; ++fb) {
          DualNumber x = basis(a, fa), y = basis(b, fb);
          out.push_back({a, b, fa == 1, fb == 1, mul(x, y), bracket(x, y)});
        }
    }
  return out;
}

DualNumberAlgebra::Report DualNumberAlgebra::reverify() const {
  Report report;
  report.checked = {{"commutativity", 0}, {"associativity", 0}, {"leibniz", 0}, {"jacobi", 0}};
  std::vector<MonomialId> mons{0};
  for (auto id : positive_monomials(*ctx_, truncation_)) mons.push_back(id);
  const auto& wctx = ctx_->weights();
  auto name = [&](MonomialId a, int e) { return monomial_to_string(ctx_->exponent(a), wctx) + (e ? "*eps" : ""); };
  auto add = [](DualNumber x, const DualNumber& y) {
    x.re += y.re;
    x.eps += y.eps;
    return x;
  };
  for (auto a : mons)
    for (auto b : mons) {
      if (ctx_->weight(a) + ctx_->weight(b) > truncation_) continue;
      for (int fa = 0; fa < 2; ++fa)
        for (int fb = 0; fb < 2; ++fb) {
          DualNumber x = basis(a, fa), y = basis(b, fb);
          ++report.checked[0].second;
          if (!(mul(x, y) == mul(y, x))) {
            report.failure = "commutativity at (" + name(a, fa) + ", " + name(b, fb) + ")";
            return report;
          }
          for (auto c : mons) {
            if (ctx_->weight(a) + ctx_->weight(b) + ctx_->weight(c) > truncation_) continue;
            for (int fc = 0; fc < 2; ++fc) {
              DualNumber z = basis(c, fc);
              std::string where = "(" + name(a, fa) + ", " + name(b, fb) + ", " + name(c, fc) + ")";
              ++report.checked[1].second;
              if (!(mul(mul(x, y), z) == mul(x, mul(y, z)))) {
                report.failure = "associativity at " + where;
                return report;
              }
              ++report.checked[2].second;
              if (!(bracket(x, mul(y, z)) == add(mul(bracket(x, y), z), mul(y, bracket(x, z))))) {
                report.failure = "leibniz at " + where;
                return report;
              }
              ++report.checked[3].second;
              DualNumber jac = add(add(bracket(x, bracket(y, z)), bracket(y, bracket(z, x))), bracket(z, bracket(x, y)));
              if (!jac.re.is_zero() || !jac.eps.is_zero()) {
                report.failure = "jacobi at " + where;
                return report;
              }
            }
          }
        }
    }
  return report;
}

DualNumberAlgebra build_dual_number_algebra(HarrisonContext& ctx, const FirstOrderDeformation& d, int truncation) {
  DualNumberAlgebra alg(ctx, d, truncation);
  auto report = alg.reverify();
  if (!report.passed()) throw std::logic_error("build_dual_number_algebra: " + *report.failure);
  return alg;
}

}  // namespace poissoncoh
