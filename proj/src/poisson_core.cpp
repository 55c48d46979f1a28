#include "poissoncoh/poisson_core.hpp"

namespace poissoncoh {

PoissonStructure::PoissonStructure(WeightedContext ctx, Polyvector theta, std::optional<QuotientPresentation> quotient,
                                   JacobiPolicy policy)
    : ctx_(std::move(ctx)), theta_(std::move(theta)), quotient_(std::move(quotient)) {
  const std::size_t n = ctx_.size();
  if (theta_.degree() != 2 || theta_.num_vars() != n)
    throw std::invalid_argument("PoissonStructure: theta must be a bivector in the context variables");
  pi_.assign(n, std::vector<Polynomial>(n, Polynomial(n)));
  for (const auto& [s, c] : theta_.components()) {
    pi_[s[0]][s[1]] = reduce(c);
    pi_[s[1]][s[0]] = -pi_[s[0]][s[1]];
  }
  if (quotient_) {
    for (std::size_t i = 0; i < n; ++i) {
      Polynomial r = bracket(quotient_->relation(), variable(i));
      if (!r.is_zero()) throw IdealViolation(i, r);
    }
  }
  if (policy == JacobiPolicy::enforce) {
    auto result = jacobi_check(*this);
    if (!result.passed()) throw JacobiViolation(*result.counterexample);
  }
}

Polynomial PoissonStructure::bracket(const Polynomial& f, const Polynomial& g) const {
  const std::size_t n = num_vars();
  Polynomial out(n);
  if (f.is_zero() || g.is_zero()) return out;
  std::vector<Polynomial> df, dg;
  for (std::size_t i = 0; i < n; ++i) {
    df.push_back(f.derivative(i));
    dg.push_back(g.derivative(i));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pi_[i][j].is_zero()) continue;
      Polynomial cross = df[i] * dg[j] - df[j] * dg[i];
      if (!cross.is_zero()) out += pi_[i][j] * cross;
    }
  return reduce(out);
}

Polyvector PoissonStructure::hamiltonian_field(const Polynomial& f) const {
  Polyvector h(num_vars(), 1);
  for (std::size_t b = 0; b < num_vars(); ++b) h.add({static_cast<int>(b)}, bracket(f, variable(b)));
  return h;
}

Polynomial jacobiator(const PoissonStructure& ps, const Polynomial& a, const Polynomial& b, const Polynomial& c) {
  return ps.bracket(a, ps.bracket(b, c)) + ps.bracket(b, ps.bracket(c, a)) + ps.bracket(c, ps.bracket(a, b));
}

JacobiResult jacobi_check(const PoissonStructure& ps) {
  JacobiResult result;
  const std::size_t n = ps.num_vars();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        ++result.triples_checked;
        Polynomial jac = jacobiator(ps, ps.variable(i), ps.variable(j), ps.variable(k));
        if (!jac.is_zero()) {
          result.counterexample = JacobiCounterexample{{i, j, k}, std::move(jac)};
          return result;
        }
      }
  return result;
}

WeightAudit weight_audit(const PoissonStructure& ps) {
  const auto& ctx = ps.context();
  WeightAudit audit;
  audit.declared_l = ctx.bracket_weight();
  audit.homogeneous = true;
  bool consistent = true;
  for (std::size_t i = 0; i < ps.num_vars(); ++i)
    for (std::size_t j = i + 1; j < ps.num_vars(); ++j) {
      PairWeight pw;
      pw.i = i;
      pw.j = j;
      const Polynomial& b = ps.coordinate_bracket(i, j);
      pw.zero = b.is_zero();
      if (pw.zero) {
        pw.homogeneous = true;
      } else {
        pw.weight = homogeneous_weight(b, ctx);
        pw.homogeneous = pw.weight.has_value();
        if (pw.weight) {
          pw.implied_l = ctx.weight(i) + ctx.weight(j) - *pw.weight;
          if (audit.inferred_l && *audit.inferred_l != *pw.implied_l) consistent = false;
          audit.inferred_l = pw.implied_l;
        }
        if (!pw.homogeneous || *pw.implied_l != audit.declared_l) audit.homogeneous = false;
      }
      audit.pairs.push_back(pw);
    }
  if (!consistent) audit.inferred_l.reset();
  return audit;
}

}  // namespace poissoncoh
