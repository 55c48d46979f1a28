#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "poissoncoh/cartan.hpp"
#include "poissoncoh/exactlinalg.hpp"
#include "poissoncoh/poisson_core.hpp"

namespace poissoncoh {

/// `positive` starts the complex at degree 1; `extended` adds degree 0
/// (polynomials), with delta(f) = -H_f.
enum class LpVariant { positive, extended };

inline int first_degree(LpVariant v) { return v == LpVariant::positive ? 1 : 0; }

/// Lichnerowicz-Poisson coboundary. Components are read off by evaluating on
/// coordinate tuples:
///   dP(a_1..a_{i+1}) = sum_j (-1)^{j+1} {a_j, P(..^a_j..)}
///                    - sum_{j<k} (-1)^{j+k+1} P({a_j,a_k}, ..^a_j..^a_k..)
Polyvector lp_differential(const PoissonStructure& ps, const Polyvector& p);

/// Monomial coefficient times a wedge of coordinate derivations.
struct FieldBasisElement {
  Exponent monomial;
  Subset subset;
  friend bool operator==(const FieldBasisElement&, const FieldBasisElement&) = default;
};

/// Degree-k polyvectors (or forms) of the given weight, monomial-major
/// (graded-lex) then subset.
std::vector<FieldBasisElement> polyvector_basis(const WeightedContext& ctx, int degree, int weight);
std::vector<FieldBasisElement> form_basis(const WeightedContext& ctx, int degree, int weight);

Polyvector to_polyvector(const FieldBasisElement& e, std::size_t num_vars);

/// Weight-graded slice of the LP complex. The invariant W = w + i*l is
/// constant along the complex; degree i carries polyvectors of weight W - i*l.
struct SliceComplex {
  int invariant = 0;
  int l = 0;
  int min_degree = 0, max_degree = 0;
  std::vector<std::vector<FieldBasisElement>> bases;  // [degree - min_degree]
  std::vector<SparseMatrix> differentials;            // [degree - min_degree]: degree -> degree + 1
  std::vector<std::size_t> ranks;

  int weight_at(int degree) const { return invariant - degree * l; }
  std::size_t dimension(int degree) const;
  /// Cohomology at a degree strictly inside the built range, or at its ends
  /// treating the missing maps as zero.
  std::size_t cohomology(int degree) const;
  RationalMatrix differential_matrix(int degree) const;
  /// sum (-1)^i dim C^i and sum (-1)^i dim H^i over the built range.
  long euler_chains() const;
  long euler_cohomology() const;
};

struct NotHomogeneous : std::invalid_argument {
  NotHomogeneous() : std::invalid_argument("structure is not weighted-homogeneous with the declared l") {}
};

SliceComplex build_slice(const PoissonStructure& ps, int invariant, int min_degree, int max_degree);

/// dim HP^i at polyvector weight w.
std::size_t hp_dimension(const PoissonStructure& ps, int degree, int weight, LpVariant variant = LpVariant::positive);

/// Truncated de Rham cohomology at the slice matching (degree, polyvector
/// weight) under the musical isomorphism: forms of weight w + degree*l.
/// `positive` uses Omega^{>=1}, `extended` the full complex.
std::size_t derham_slice_dimension(const PoissonStructure& ps, int degree, int weight,
                                   LpVariant variant = LpVariant::positive);

/// musical(dP) - d(musical(P)); identically zero.
DifferentialForm chain_map_residual(const PoissonStructure& ps, const Polyvector& p);

}  // namespace poissoncoh
