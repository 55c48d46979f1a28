#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "poissoncoh/exactlinalg.hpp"
#include "poissoncoh/poisson_core.hpp"

namespace poissoncoh {

/// Index of a normal-form monomial inside a HarrisonContext. Id 0 is the
/// constant 1; ids up to the context's preset weight follow graded-lex order.
using MonomialId = std::uint32_t;
using IdPoly = std::vector<std::pair<MonomialId, Rational>>;  // sorted by id, no zeros

/// a_1 (x) ... (x) a_n, an element of ch_n when reduced.
using ChainTensor = std::vector<MonomialId>;
/// Linear combination of chain tensors.
using ChainCombination = std::map<ChainTensor, Rational>;
/// Product x_1 ... x_s in the graded-symmetric algebra on ch_*.
using ChainProduct = std::vector<ChainTensor>;
/// ch-degrees of the factors, descending: {1}, {2}, {1,1}, {3}, {2,1}, {1,1,1}.
using Shape = std::vector<int>;

Shape shape_of(const ChainProduct& p);
int total_degree(const Shape& s);

/// The components realized in total degree 1..3.
const std::vector<Shape>& realized_shapes(int total_degree);

/// Monomial table, cached products and brackets, and the shuffle quotients
/// ch_n per multiset of factors. Not thread-safe (caches are filled lazily).
class HarrisonContext {
 public:
  /// Interns every normal-form monomial of weight <= preset_weight up front,
  /// so that id order is graded-lex order on that range.
  HarrisonContext(PoissonStructure ps, int preset_weight);

  const PoissonStructure& structure() const { return ps_; }
  const WeightedContext& weights() const { return ps_.context(); }
  int bracket_weight() const { return ps_.bracket_weight(); }

  MonomialId intern(const Exponent& e);
  const Exponent& exponent(MonomialId id) const { return exponents_.at(id); }
  int weight(MonomialId id) const { return weights_.at(id); }
  int weight(const ChainTensor& t) const;
  int weight(const ChainProduct& p) const;

  /// Normal-form monomials of a weight, graded-lex order (empty if negative).
  const std::vector<MonomialId>& monomials(int weight);
  /// Position of a monomial inside monomials(weight(id)).
  std::uint32_t position(MonomialId id);

  const IdPoly& product(MonomialId a, MonomialId b);
  const IdPoly& bracket(MonomialId a, MonomialId b);
  IdPoly to_ids(const Polynomial& p);
  Polynomial to_polynomial(const IdPoly& p) const;
  Polynomial monomial(MonomialId id) const;

  /// t written through the representatives of ch_n for its multiset.
  const std::vector<std::pair<ChainTensor, Rational>>& reduce(const ChainTensor& t);
  /// Signed shuffle images s_{r,n-r}(t), r = 1..n-1.
  std::vector<ChainCombination> shuffle_images(const ChainTensor& t) const;
  /// Representatives of ch_n in exact total weight u (positive-weight factors).
  const std::vector<ChainTensor>& chain_basis(int n, int weight);

  /// Canonical S^s form: factors reduced to representatives and sorted by
  /// descending degree, then ascending tensor, with Koszul signs.
  std::vector<std::pair<ChainProduct, Rational>> canonical(const ChainProduct& raw);

 private:
  struct Multiset {
    std::vector<ChainTensor> orderings;
    std::vector<ChainTensor> representatives;
    std::vector<std::vector<std::pair<ChainTensor, Rational>>> reduction;  // per ordering
  };
  const Multiset& multiset(const ChainTensor& sorted);

  PoissonStructure ps_;
  std::vector<Exponent> exponents_;
  std::vector<int> weights_;
  std::map<Exponent, MonomialId> ids_;
  std::map<int, std::vector<MonomialId>> by_weight_;
  std::unordered_map<MonomialId, std::uint32_t> positions_;
  std::map<std::pair<MonomialId, MonomialId>, IdPoly> products_, brackets_;
  std::map<ChainTensor, Multiset> multisets_;
  std::map<ChainTensor, std::vector<std::pair<ChainTensor, Rational>>> reductions_;
  std::map<std::pair<int, int>, std::vector<ChainTensor>> bases_;
};

/// Per-weight representatives and shuffle kernel of ch_n up to weight D.
struct ChainBasis {
  int n = 0;
  int truncation = 0;
  std::map<int, std::vector<ChainTensor>> basis;
  std::map<int, std::vector<ChainCombination>> shuffle_kernel;
};

/// Builds and verifies that every shuffle image reduces to zero.
ChainBasis build_chain_basis(HarrisonContext& ctx, int n, int truncation);

/// Element of ch_{n-1} (x) A: (representative tensor, coefficient monomial) -> scalar.
using ChainWithCoefficients = std::map<std::pair<ChainTensor, MonomialId>, Rational>;

/// d_n([a_1..a_n] (x) 1) = [a_1..a_{n-1}] (x) a_n + sum_i (-1)^{n-i} [..a_i a_{i+1}..]
///                        + (-1)^n [a_2..a_n] (x) a_1,  d_1 = 0.
/// `reduce` writes the result through ch_{n-1} representatives.
ChainWithCoefficients harrison_boundary(HarrisonContext& ctx, const ChainTensor& t, bool reduce = true);
ChainWithCoefficients harrison_boundary(HarrisonContext& ctx, const ChainWithCoefficients& c, bool reduce = true);

/// [f, g] on chain tensors: sum over order-preserving shuffles of f and g
/// (sign = number of inversions), and over adjacent (f_k, g_m) pairs at
/// position i of (-1)^{i+1} times the tensor with that pair replaced by {f_k, g_m}.
ChainCombination chain_bracket(HarrisonContext& ctx, const ChainTensor& f, const ChainTensor& g);

enum class OpKind { multiply, bracket };

/// One summand of a coboundary evaluated at a fixed input:
/// coeff * op(F(source)), op = multiplication by / bracket with `with`.
struct CoboundaryTerm {
  ChainProduct source;
  OpKind op;
  MonomialId with;
  Rational coeff;
};

struct Parts {
  bool d = true;
  bool delta = true;
};

/// Terms of (d + delta)F at the input x_1 ... x_s:
///   dF(x)     = F(d x), d extended to products with sign (-1)^{p_1+..+p_{i-1}}
///   deltaF(x) = sum_i (-1)^{sigma(i)} [x_i, F(..^x_i..)]  (only ch_1 factors x_i)
///             - sum_{i<j} (-1)^{tau(i,j)} F([x_i, x_j] . rest)
/// with sigma, tau the Koszul signs of moving x_i (then x_j) to the front.
std::vector<CoboundaryTerm> coboundary_terms(HarrisonContext& ctx, const ChainProduct& input, Parts parts = {});

using RawCochain = std::function<Polynomial(const ChainProduct&)>;

/// (d + delta)F at an arbitrary input, F given on raw products.
Polynomial evaluate_coboundary(HarrisonContext& ctx, const ChainProduct& input, const RawCochain& f, Parts parts = {});

/// Cochain on one component, stored on canonical representative inputs of
/// total weight <= truncation. Inputs holding the constant 1 evaluate to 0
/// (normalized cochains).
struct HarrisonCochain {
  Shape shape;
  int truncation = 0;
  std::map<ChainProduct, Polynomial> values;

  Polynomial value(const ChainProduct& canonical_key, std::size_t num_vars) const;
  Polynomial evaluate(HarrisonContext& ctx, const ChainProduct& raw) const;
  bool is_zero() const;
};

/// (d + delta) restricted to the parts requested, from the given source
/// components to the target shape, on all canonical inputs of weight <= D.
HarrisonCochain apply_coboundary(HarrisonContext& ctx, const std::vector<const HarrisonCochain*>& sources,
                                 const Shape& target, int truncation, Parts parts = {});
/// Harrison coboundary d: (n) -> (n+1), and (1,1) -> (2,1).
HarrisonCochain harrison_coboundary(HarrisonContext& ctx, const HarrisonCochain& f);
/// Poisson coboundary delta: (1) -> (1,1), (2) -> (2,1), (1,1) -> (1,1,1).
HarrisonCochain poisson_coboundary(HarrisonContext& ctx, const HarrisonCochain& f);

/// Canonical inputs of a shape with total weight exactly u.
std::vector<ChainProduct> component_keys(HarrisonContext& ctx, const Shape& shape, int weight);

/// Coordinates of one component within a weight slice: pairs (input key,
/// output monomial) with output weight = input weight + shift.
struct ComponentSpace {
  Shape shape;
  int shift = 0;
  std::vector<ChainProduct> keys;
  std::vector<int> key_weights;
  std::vector<std::uint32_t> offsets;  // first coordinate of each key
  std::map<ChainProduct, std::uint32_t> index;
  std::size_t dimension = 0;
};

/// Total-degree-k cochains of the slice invariant W = shift + s*l.
struct CochainSpace {
  int degree = 0;
  int invariant = 0;
  int truncation = 0;
  std::vector<ComponentSpace> components;
  std::vector<std::size_t> component_offsets;
  std::size_t dimension = 0;
};

CochainSpace cochain_space(HarrisonContext& ctx, int degree, int invariant, int truncation);

/// Matrix of the (partial) total differential C^k -> C^{k+1}.
SparseMatrix total_differential(HarrisonContext& ctx, const CochainSpace& from, const CochainSpace& to, Parts parts = {});

std::vector<HarrisonCochain> to_cochains(HarrisonContext& ctx, const CochainSpace& space, const SparseVector& v);
SparseVector to_vector(HarrisonContext& ctx, const CochainSpace& space, const std::vector<HarrisonCochain>& cochains);

/// Truncated total complex C^1 -> C^2 -> C^3 of one slice.
struct TotalSlice {
  int invariant = 0;
  int truncation = 0;
  CochainSpace c1, c2, c3;
  SparseMatrix d1{0, 0}, d2{0, 0};
  std::size_t rank1 = 0, rank2 = 0;

  std::size_t hp(int degree) const;
};

/// max_degree 2 skips C^3 (enough for HP^1).
TotalSlice build_total_slice(HarrisonContext& ctx, int invariant, int truncation, Parts parts = {}, int max_degree = 3);

struct TotalHpReport {
  int degree = 0;
  int weight = 0;      // weight of the wedge^i ch_1 component
  int invariant = 0;
  int truncation = 0;
  std::size_t dimension = 0;
  std::size_t previous = 0;  // same computation at truncation - 1
  bool stable = false;
  std::vector<std::size_t> cochain_dimensions;  // C^1, C^2, C^3
};

/// HP^i (i = 1, 2) of the truncated total complex at the slice of weight w.
TotalHpReport total_hp(HarrisonContext& ctx, int degree, int weight, int truncation);
TotalHpReport total_hp(const PoissonStructure& ps, int degree, int weight, int truncation);

}  // namespace poissoncoh
