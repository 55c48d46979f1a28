#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "poissoncoh/cartan.hpp"
#include "poissoncoh/gradedpoly.hpp"

namespace poissoncoh {

struct JacobiCounterexample {
  std::array<std::size_t, 3> variables;  // coordinate triple, ascending
  Polynomial jacobiator;
};

struct JacobiResult {
  std::size_t triples_checked = 0;
  std::optional<JacobiCounterexample> counterexample;
  bool passed() const { return !counterexample; }
};

struct JacobiViolation : std::runtime_error {
  explicit JacobiViolation(JacobiCounterexample c)
      : std::runtime_error("bivector violates the Jacobi identity"), counterexample(std::move(c)) {}
  JacobiCounterexample counterexample;
};

/// The bracket does not preserve the ideal of the quotient relation.
struct IdealViolation : std::runtime_error {
  IdealViolation(std::size_t variable, Polynomial residue)
      : std::runtime_error("bracket does not preserve the relation ideal"), variable(variable), residue(std::move(residue)) {}
  std::size_t variable;
  Polynomial residue;  // normal form of {relation, x_variable}
};

enum class JacobiPolicy { enforce, defer };

/// A Poisson bivector on a weighted polynomial ring, optionally descending
/// to a quotient by one relation. {f, g} = Theta(df ^ dg), reduced to normal
/// form when a quotient is present.
class PoissonStructure {
 public:
  PoissonStructure(WeightedContext ctx, Polyvector theta, std::optional<QuotientPresentation> quotient = std::nullopt,
                   JacobiPolicy policy = JacobiPolicy::enforce);

  const WeightedContext& context() const { return ctx_; }
  const Polyvector& theta() const { return theta_; }
  const std::optional<QuotientPresentation>& quotient() const { return quotient_; }
  std::size_t num_vars() const { return ctx_.size(); }
  int bracket_weight() const { return ctx_.bracket_weight(); }
  bool is_smooth_ambient() const { return !quotient_; }

  /// {x_i, x_j} (normal form).
  const Polynomial& coordinate_bracket(std::size_t i, std::size_t j) const { return pi_[i][j]; }

  Polynomial bracket(const Polynomial& f, const Polynomial& g) const;
  Polynomial reduce(const Polynomial& p) const { return normal_form(p, quotient_); }
  Polynomial variable(std::size_t i) const { return Polynomial::variable(num_vars(), i); }

  Polyvector hamiltonian_field(const Polynomial& f) const;

 private:
  WeightedContext ctx_;
  Polyvector theta_;
  std::optional<QuotientPresentation> quotient_;
  std::vector<std::vector<Polynomial>> pi_;
};

Polynomial jacobiator(const PoissonStructure& ps, const Polynomial& a, const Polynomial& b, const Polynomial& c);

/// Checks the jacobiator on every coordinate triple. The jacobiator of a
/// biderivation is a triderivation, so vanishing on coordinates implies
/// vanishing everywhere.
JacobiResult jacobi_check(const PoissonStructure& ps);

struct PairWeight {
  std::size_t i = 0, j = 0;
  std::optional<int> weight;   // weight of {x_i, x_j}; nullopt if zero or mixed
  bool zero = false;
  bool homogeneous = false;
  std::optional<int> implied_l;  // w_i + w_j - weight
};

struct WeightAudit {
  std::vector<PairWeight> pairs;
  int declared_l = 0;
  std::optional<int> inferred_l;  // set when all nonzero homogeneous pairs agree
  bool homogeneous = false;       // every bracket homogeneous with the declared l
};

WeightAudit weight_audit(const PoissonStructure& ps);

}  // namespace poissoncoh
