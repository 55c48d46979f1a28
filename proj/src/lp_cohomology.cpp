#include "poissoncoh/lp_cohomology.hpp"

#include <algorithm>

namespace poissoncoh {

namespace {

// P(x_{idx[0]}, ..., x_{idx[k-1]}) for coordinate arguments.
Polynomial coordinate_value(const Polyvector& p, std::vector<int> idx) {
  int sign = 1;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (idx[a] == idx[b]) return Polynomial(p.num_vars());
      if (idx[a] > idx[b]) sign = -sign;
    }
  std::sort(idx.begin(), idx.end());
  Polynomial c = p.coefficient(idx);
  return sign < 0 ? -c : c;
}

std::vector<Subset> subsets_of_size(int n, int k) {
  std::vector<Subset> out;
  if (k < 0 || k > n) return out;
  Subset s(k);
  for (int i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

Subset without(const Subset& s, std::size_t a, std::size_t b = static_cast<std::size_t>(-1)) {
  Subset out;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i != a && i != b) out.push_back(s[i]);
  return out;
}

std::vector<FieldBasisElement> field_basis(const WeightedContext& ctx, int degree, int weight, int sign) {
  std::vector<FieldBasisElement> out;
  for (const auto& s : subsets_of_size(static_cast<int>(ctx.size()), degree)) {
    int coeff_weight = weight;
    for (int v : s) coeff_weight -= sign * ctx.weight(v);
    if (coeff_weight < 0) continue;
    for (auto& e : exponents_of_weight(ctx, coeff_weight)) out.push_back({std::move(e), s});
  }
  std::stable_sort(out.begin(), out.end(), [&](const FieldBasisElement& a, const FieldBasisElement& b) {
    if (a.monomial != b.monomial) return graded_lex_less(a.monomial, b.monomial, ctx);
    return a.subset < b.subset;
  });
  return out;
}

using BasisIndex = std::map<std::pair<Subset, Exponent>, std::uint32_t>;

BasisIndex index_basis(const std::vector<FieldBasisElement>& basis) {
  BasisIndex idx;
  for (std::uint32_t i = 0; i < basis.size(); ++i) idx.emplace(std::make_pair(basis[i].subset, basis[i].monomial), i);
  return idx;
}

template <class Field>
void add_column(SparseMatrix& m, std::size_t col, const Field& image, const BasisIndex& rows) {
  for (const auto& [s, c] : image.components())
    for (const auto& [e, q] : c.terms()) {
      auto it = rows.find({s, e});
      if (it == rows.end()) throw std::logic_error("slice: image leaves the target basis");
      m.add(it->second, col, q);
    }
}

bool is_homogeneous(const PoissonStructure& ps) { return weight_audit(ps).homogeneous; }

}  // namespace

Polyvector lp_differential(const PoissonStructure& ps, const Polyvector& p) {
  const int n = static_cast<int>(ps.num_vars());
  const int k = p.degree() + 1;
  Polyvector out(ps.num_vars(), k);
  if (p.is_zero()) return out;
  for (const auto& t : subsets_of_size(n, k)) {
    Polynomial value(ps.num_vars());
    for (std::size_t j = 0; j < t.size(); ++j) {
      Polynomial inner = p.coefficient(without(t, j));
      if (inner.is_zero()) continue;
      Polynomial term = ps.bracket(ps.variable(t[j]), inner);
      if (j % 2) value -= term;
      else value += term;
    }
    for (std::size_t j = 0; j < t.size(); ++j)
      for (std::size_t m = j + 1; m < t.size(); ++m) {
        const Polynomial& pi = ps.coordinate_bracket(t[j], t[m]);
        if (pi.is_zero()) continue;
        Subset rest = without(t, j, m);
        Polynomial term(ps.num_vars());
        for (int v = 0; v < n; ++v) {
          Polynomial dv = pi.derivative(v);
          if (dv.is_zero()) continue;
          std::vector<int> args{v};
          args.insert(args.end(), rest.begin(), rest.end());
          Polynomial pv = coordinate_value(p, args);
          if (!pv.is_zero()) term += dv * pv;
        }
        if ((j + m) % 2) value -= term;
        else value += term;
      }
    out.add(t, value);
  }
  return out;
}

std::vector<FieldBasisElement> polyvector_basis(const WeightedContext& ctx, int degree, int weight) {
  return field_basis(ctx, degree, weight, -1);
}
std::vector<FieldBasisElement> form_basis(const WeightedContext& ctx, int degree, int weight) {
  return field_basis(ctx, degree, weight, +1);
}

Polyvector to_polyvector(const FieldBasisElement& e, std::size_t num_vars) {
  return Polyvector::term(num_vars, e.subset, Polynomial::monomial(e.monomial));
}

std::size_t SliceComplex::dimension(int degree) const {
  if (degree < min_degree || degree > max_degree) return 0;
  return bases[degree - min_degree].size();
}

std::size_t SliceComplex::cohomology(int degree) const {
  if (degree < min_degree || degree > max_degree) return 0;
  std::size_t out_rank = degree < max_degree ? ranks[degree - min_degree] : 0;
  std::size_t in_rank = degree > min_degree ? ranks[degree - 1 - min_degree] : 0;
  return dimension(degree) - out_rank - in_rank;
}

RationalMatrix SliceComplex::differential_matrix(int degree) const {
  return differentials.at(degree - min_degree).to_dense();
}

long SliceComplex::euler_chains() const {
  long sum = 0;
  for (int d = min_degree; d <= max_degree; ++d) sum += (d % 2 ? -1 : 1) * static_cast<long>(dimension(d));
  return sum;
}

long SliceComplex::euler_cohomology() const {
  long sum = 0;
  for (int d = min_degree; d <= max_degree; ++d) sum += (d % 2 ? -1 : 1) * static_cast<long>(cohomology(d));
  return sum;
}

SliceComplex build_slice(const PoissonStructure& ps, int invariant, int min_degree, int max_degree) {
  if (!ps.is_smooth_ambient()) throw std::invalid_argument("build_slice: the LP complex needs a polynomial ring");
  if (!is_homogeneous(ps)) throw NotHomogeneous();
  if (min_degree < 0 || max_degree < min_degree) throw std::invalid_argument("build_slice: bad degree range");
  const auto& ctx = ps.context();
  SliceComplex sc;
  sc.invariant = invariant;
  sc.l = ctx.bracket_weight();
  sc.min_degree = min_degree;
  sc.max_degree = max_degree;
  for (int d = min_degree; d <= max_degree; ++d) sc.bases.push_back(polyvector_basis(ctx, d, sc.weight_at(d)));
  for (int d = min_degree; d < max_degree; ++d) {
    const auto& src = sc.bases[d - min_degree];
    const auto& dst = sc.bases[d + 1 - min_degree];
    BasisIndex rows = index_basis(dst);
    SparseMatrix m(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) add_column(m, c, lp_differential(ps, to_polyvector(src[c], ps.num_vars())), rows);
    sc.ranks.push_back(sparse_rank(m));
    sc.differentials.push_back(std::move(m));
  }
  return sc;
}

std::size_t hp_dimension(const PoissonStructure& ps, int degree, int weight, LpVariant variant) {
  if (degree < first_degree(variant)) return 0;
  int invariant = weight + degree * ps.bracket_weight();
  int lo = std::max(first_degree(variant), degree - 1);
  SliceComplex sc = build_slice(ps, invariant, lo, degree + 1);
  return sc.cohomology(degree);
}

std::size_t derham_slice_dimension(const PoissonStructure& ps, int degree, int weight, LpVariant variant) {
  Musical musical(ps.theta(), ps.bracket_weight());
  if (degree < first_degree(variant)) return 0;
  const auto& ctx = ps.context();
  const int form_weight = weight + degree * ps.bracket_weight();
  auto rank_of_d = [&](int from) -> std::size_t {
    if (from < first_degree(variant)) return 0;
    auto src = form_basis(ctx, from, form_weight);
    auto dst = form_basis(ctx, from + 1, form_weight);
    BasisIndex rows = index_basis(dst);
    SparseMatrix m(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      auto form = DifferentialForm::term(ctx.size(), src[c].subset, Polynomial::monomial(src[c].monomial));
      add_column(m, c, de_rham_d(form), rows);
    }
    return sparse_rank(m);
  };
  std::size_t dim = form_basis(ctx, degree, form_weight).size();
  return dim - rank_of_d(degree) - rank_of_d(degree - 1);
}

DifferentialForm chain_map_residual(const PoissonStructure& ps, const Polyvector& p) {
  Musical musical(ps.theta(), ps.bracket_weight());
  return musical.to_form(lp_differential(ps, p)) - de_rham_d(musical.to_form(p));
}

}  // namespace poissoncoh
